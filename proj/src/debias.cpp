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

#include "btlrank/debias.hpp"

#include <cmath>
#include <string>

#include <Eigen/Cholesky>
#include <Eigen/LU>

#include "btlrank/errors.hpp"

namespace btlrank {

namespace {

void validate_hessian_shape(const Eigen::MatrixXd& h) {
  if (h.rows() != h.cols() || h.rows() < 2) {
    throw InvalidArgumentError("hessian must be square, n >= 2");
  }
  const double sym = (h - h.transpose()).cwiseAbs().maxCoeff();
  if (sym > 1e-8) throw InvalidArgumentError("hessian must be symmetric");
}

ConstrainedInverse finalize(Eigen::MatrixXd theta11,
                            const Eigen::MatrixXd& h) {
  const auto n = theta11.rows();
  ConstrainedInverse out;
  out.symmetry_residual =
      (theta11 - theta11.transpose()).cwiseAbs().maxCoeff();
  // Symmetrize so downstream quadratic forms are exactly symmetric.
  theta11 = 0.5 * (theta11 + theta11.transpose()).eval();
  out.rowsum_residual =
      (theta11 * Eigen::VectorXd::Ones(n)).cwiseAbs().maxCoeff();
  Eigen::MatrixXd identity = theta11 * h;
  identity.array() += 1.0 / static_cast<double>(n);
  identity.diagonal().array() -= 1.0;
  out.identity_residual = identity.cwiseAbs().maxCoeff();
  out.theta11 = std::move(theta11);
  if (out.identity_residual > 1e-6 || out.rowsum_residual > 1e-8 ||
      out.symmetry_residual > 1e-8) {
    throw SingularSystemError(
        "constrained inverse failed its block identities (residuals: "
        "identity " + std::to_string(out.identity_residual) +
        ", rowsum " + std::to_string(out.rowsum_residual) +
        ", symmetry " + std::to_string(out.symmetry_residual) +
        "); is the comparison graph connected?");
  }
  return out;
}

}  // namespace

ConstrainedInverse constrained_inverse(const Eigen::MatrixXd& hessian) {
  validate_hessian_shape(hessian);
  const auto n = hessian.rows();
  const double shift = 1.0 / static_cast<double>(n);

  Eigen::MatrixXd m = hessian;
  m.array() += shift;  // H + 11^T/n, SPD iff kernel(H) = span{1}
  const Eigen::LLT<Eigen::MatrixXd> llt(m);
  if (llt.info() != Eigen::Success) {
    throw SingularSystemError(
        "augmented system is singular; is the comparison graph connected?");
  }
  Eigen::MatrixXd inv = llt.solve(Eigen::MatrixXd::Identity(n, n));
  // Project both sides onto the sum-zero subspace: Theta11 = P M^-1 P.
  const Eigen::RowVectorXd col_means = inv.colwise().mean();
  inv.rowwise() -= col_means;
  const Eigen::VectorXd row_means = inv.rowwise().mean();
  inv.colwise() -= row_means;
  return finalize(std::move(inv), hessian);
}

ConstrainedInverse constrained_inverse_augmented(
    const Eigen::MatrixXd& hessian) {
  validate_hessian_shape(hessian);
  const auto n = hessian.rows();
  Eigen::MatrixXd augmented = Eigen::MatrixXd::Zero(n + 1, n + 1);
  augmented.topLeftCorner(n, n) = hessian;
  augmented.topRightCorner(n, 1).setOnes();
  augmented.bottomLeftCorner(1, n).setOnes();

  const Eigen::FullPivLU<Eigen::MatrixXd> lu(augmented);
  if (!lu.isInvertible()) {
    throw SingularSystemError(
        "augmented system is singular; is the comparison graph connected?");
  }
  const Eigen::MatrixXd inv = lu.inverse();
  const double expected = 1.0 / static_cast<double>(n);
  const double border =
      std::max((inv.topRightCorner(n, 1).array() - expected).abs().maxCoeff(),
               (inv.bottomLeftCorner(1, n).array() - expected).abs().maxCoeff());
  if (border > 1e-8 || std::abs(inv(n, n)) > 1e-8) {
    throw SingularSystemError(
        "augmented inverse lacks the expected border blocks");
  }
  return finalize(inv.topLeftCorner(n, n), hessian);
}

DebiasResult debias(const ScoreVector& theta_hat,
                    const ComparisonDataset& data, double lambda0) {
  const int n = data.n();
  if (theta_hat.n() != n) {
    throw InvalidArgumentError("score vector size does not match dataset");
  }

  const Eigen::VectorXd grad = gradient(theta_hat, data);
  ConstrainedInverse inv = constrained_inverse(hessian(theta_hat, data));

  DebiasResult result;
  result.theta_hat = theta_hat;
  result.theta_debiased = ScoreVector(theta_hat.values - inv.theta11 * grad);
  result.theta11 = std::move(inv.theta11);
  result.se = (result.theta11.diagonal() / data.L).cwiseSqrt();
  result.lambda_dual = -grad.sum() / n;
  result.scaling = ScalingInfo{n, data.graph.effective_p(), data.L};
  result.lambda0 = lambda0;

  if (std::abs(result.theta_debiased.values.sum()) > 1e-8) {
    throw SingularSystemError("debiased scores violate the sum-zero constraint");
  }
  if (std::abs(result.lambda_dual) > 1e-10) {
    throw SingularSystemError(
        "nonzero dual multiplier: the score equation 1^T grad = 0 failed");
  }
  return result;
}

double pairwise_variance(const DebiasResult& result, int i, int j) {
  const int n = result.scaling.n;
  if (i < 0 || i >= n || j < 0 || j >= n) {
    throw IndexOutOfRangeError("item index out of range");
  }
  if (i == j) throw InvalidArgumentError("need two distinct items");
  const auto& t = result.theta11;
  return (t(i, i) + t(j, j) - 2.0 * t(i, j)) / result.scaling.L;
}

}  // namespace btlrank
