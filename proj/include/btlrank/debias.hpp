// Copyright 2026 The btlrank Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// One-step debiasing of the regularized MLE under the sum-to-zero
// constraint. The correction solves the KKT system of the constrained
// problem, whose inverse has the closed block form
//   [[Theta11, 1/n], [1/n^T, 0]] = [[H, 1], [1^T, 0]]^-1.

#ifndef BTLRANK_DEBIAS_HPP_
#define BTLRANK_DEBIAS_HPP_

#include <Eigen/Core>

#include "btlrank/estimate.hpp"
#include "btlrank/model.hpp"

namespace btlrank {

struct ConstrainedInverse {
  Eigen::MatrixXd theta11;
  // max |Theta11 H + 11^T/n - I|
  double identity_residual = 0.0;
  // max |Theta11 - Theta11^T|
  double symmetry_residual = 0.0;
  // max |Theta11 1|
  double rowsum_residual = 0.0;
};

// Upper-left n x n block of the inverse of the augmented matrix
// [[H, 1], [1^T, 0]]. H must be symmetric PSD with kernel exactly span{1}
// (a connected comparison graph); otherwise SingularSystemError.
//
// Computed as P (H + 11^T/n)^-1 P with P = I - 11^T/n, which solves the
// same block equations through one SPD factorization.
ConstrainedInverse constrained_inverse(const Eigen::MatrixXd& hessian);

// Reference route: dense LU inverse of the full (n+1) x (n+1) augmented
// matrix. Verifies that the off-diagonal blocks equal 1/n and the corner
// is 0. Slower; kept as an independent cross-check of the production path.
ConstrainedInverse constrained_inverse_augmented(const Eigen::MatrixXd& hessian);

struct ScalingInfo {
  int n = 0;
  double p_hat = 0.0;
  int L = 0;
};

struct DebiasResult {
  ScoreVector theta_hat;       // input estimate (regularized MLE)
  ScoreVector theta_debiased;  // theta_hat - Theta11 grad L(theta_hat)
  Eigen::MatrixXd theta11;
  Eigen::VectorXd se;          // sqrt(Theta11_jj / L)
  double lambda_dual = 0.0;    // -(1/n) 1^T grad L(theta_hat); ~ 0
  ScalingInfo scaling;

  double lambda0 = 0.0;        // ridge used for theta_hat (for reports)
};

// Debiases theta_hat on the dataset it was fitted to. Construction checks
// the block-inverse identities and the sum-zero constraint and throws if
// any fails.
DebiasResult debias(const ScoreVector& theta_hat,
                    const ComparisonDataset& data, double lambda0 = 0.0);

// (e_i - e_j)^T Theta11 (e_i - e_j) / L; the variance proxy of the
// debiased score difference.
double pairwise_variance(const DebiasResult& result, int i, int j);

}  // namespace btlrank

#endif  // BTLRANK_DEBIAS_HPP_
