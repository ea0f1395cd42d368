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

// Counter-based random numbers (Philox4x32-10, Salmon et al., SC 2011).
// Every variate is a pure function of (seed, stream, index), so generation
// is reproducible regardless of iteration order or thread schedule.

#ifndef BTLRANK_RNG_HPP_
#define BTLRANK_RNG_HPP_

#include <array>
#include <cmath>
#include <cstdint>

namespace btlrank {
namespace rng {

// Stream tags keep independent uses of the generator from colliding.
// A stream is tag << 56 | sub-stream id (sub-stream must fit in 56 bits).
enum class Stream : std::uint64_t {
  kGraph = 1,
  kOutcome = 2,
  kBootstrap = 3,
  kSubsample = 4,
  kScores = 5,
  kExperiment = 6,
};

inline constexpr std::uint64_t stream_id(Stream tag, std::uint64_t sub = 0) {
  return (static_cast<std::uint64_t>(tag) << 56) | (sub & 0x00FFFFFFFFFFFFFFull);
}

namespace detail {

inline constexpr std::uint32_t kPhiloxW32A = 0x9E3779B9u;
inline constexpr std::uint32_t kPhiloxW32B = 0xBB67AE85u;
inline constexpr std::uint32_t kPhiloxM4x32A = 0xD2511F53u;
inline constexpr std::uint32_t kPhiloxM4x32B = 0xCD9E8D57u;

inline void mul_hi_lo(std::uint32_t a, std::uint32_t b, std::uint32_t* lo,
                      std::uint32_t* hi) {
  const std::uint64_t product = static_cast<std::uint64_t>(a) * b;
  *lo = static_cast<std::uint32_t>(product);
  *hi = static_cast<std::uint32_t>(product >> 32);
}

inline void philox_round(std::array<std::uint32_t, 4>& ctr,
                         std::array<std::uint32_t, 2>& key) {
  std::uint32_t lo0, hi0, lo1, hi1;
  mul_hi_lo(kPhiloxM4x32A, ctr[0], &lo0, &hi0);
  mul_hi_lo(kPhiloxM4x32B, ctr[2], &lo1, &hi1);
  const std::array<std::uint32_t, 4> next = {hi1 ^ ctr[1] ^ key[0], lo1,
                                             hi0 ^ ctr[3] ^ key[1], lo0};
  ctr = next;
  key[0] += kPhiloxW32A;
  key[1] += kPhiloxW32B;
}

}  // namespace detail

// One 10-round Philox4x32 block keyed by `seed` at counter (stream, index).
inline std::array<std::uint32_t, 4> philox4(std::uint64_t seed,
                                            std::uint64_t stream,
                                            std::uint64_t index) {
  std::array<std::uint32_t, 4> ctr = {
      static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32),
      static_cast<std::uint32_t>(stream),
      static_cast<std::uint32_t>(stream >> 32)};
  std::array<std::uint32_t, 2> key = {static_cast<std::uint32_t>(seed),
                                      static_cast<std::uint32_t>(seed >> 32)};
  for (int round = 0; round < 10; ++round) detail::philox_round(ctr, key);
  return ctr;
}

inline std::uint64_t bits64(std::uint64_t seed, std::uint64_t stream,
                            std::uint64_t index) {
  const auto out = philox4(seed, stream, index);
  return (static_cast<std::uint64_t>(out[0]) << 32) | out[1];
}

// Uniform double in [0, 1), 53 random bits.
inline double u01(std::uint64_t seed, std::uint64_t stream,
                  std::uint64_t index) {
  return static_cast<double>(bits64(seed, stream, index) >> 11) * 0x1.0p-53;
}

// Two independent standard normals per counter (Box-Muller on one block).
inline std::array<double, 2> normal_pair(std::uint64_t seed,
                                         std::uint64_t stream,
                                         std::uint64_t index) {
  const auto out = philox4(seed, stream, index);
  const std::uint64_t a =
      (static_cast<std::uint64_t>(out[0]) << 32) | out[1];
  const std::uint64_t b =
      (static_cast<std::uint64_t>(out[2]) << 32) | out[3];
  // u1 in (0, 1] so the log is finite.
  const double u1 = (static_cast<double>(a >> 11) + 1.0) * 0x1.0p-53;
  const double u2 = static_cast<double>(b >> 11) * 0x1.0p-53;
  const double radius = std::sqrt(-2.0 * std::log(u1));
  const double angle = 2.0 * M_PI * u2;
  return {radius * std::cos(angle), radius * std::sin(angle)};
}

inline double normal(std::uint64_t seed, std::uint64_t stream,
                     std::uint64_t index) {
  return normal_pair(seed, stream, index)[0];
}

// Deterministically derive an independent child seed (e.g. one per
// experiment replication).
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t which) {
  return bits64(seed, stream_id(Stream::kExperiment), which);
}

}  // namespace rng
}  // namespace btlrank

#endif  // BTLRANK_RNG_HPP_
