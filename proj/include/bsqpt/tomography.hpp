// Copyright 2026 The bsqpt Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef BSQPT_TOMOGRAPHY_HPP
#define BSQPT_TOMOGRAPHY_HPP

#include <array>
#include <cstdint>
#include <optional>
#include <span>

#include "bsqpt/channel.hpp"

namespace bsqpt {

/// Preparation and analysis states: |0>, |1>, |+>, |L> = (|0> + i|1>)/sqrt(2)
/// on each qubit, and their 16 products indexed [ij] = 4i + j.
struct InputStateSet {
  std::array<CMat, 4> singles;
  std::array<CMat, 16> products;

  /// 2-norm condition number of the 16x16 Gram matrix Tr(rho_a rho_b).
  double gram_condition_number() const;
};

InputStateSet build_input_set();

/// X_k = sum_i single(k, i) rho_i, and
/// X_k (x) X_l = sum_[ij] coeffs([kl], [ij]) rho_i (x) rho_j.
struct DecompositionCoefficients {
  CMat single;  // 4x4
  CMat coeffs;  // 16x16
};

/// Throws std::invalid_argument if the single-qubit states do not span the
/// operator space, and std::logic_error if the reconstruction identity fails.
DecompositionCoefficients decompose_standard(const InputStateSet &inputs);

/// Single-qubit dual frame: rho = sum_j Tr(P_j rho) D_j.
std::array<CMat, 4> dual_frame(const InputStateSet &inputs);

/// Coincidence record. counts(input, projector), both indexed [ij].
struct CountTable {
  Eigen::MatrixXd counts = Eigen::MatrixXd::Zero(16, 16);
  double total_scale = 1.0;
  std::optional<std::uint64_t> noise_seed;

  /// Throws std::invalid_argument on negative or non-finite counts.
  void validate() const;
};

struct NoiseModel {
  enum class Kind { kNone, kPoisson };
  Kind kind = Kind::kNone;
  std::uint64_t seed = 0;

  static NoiseModel none() { return {}; }
  static NoiseModel poisson(std::uint64_t seed) { return {Kind::kPoisson, seed}; }
};

/// count(in, proj) = total_scale * Tr(Pi_proj E(rho_in)); Poisson mode draws
/// integer samples with that mean from a generator seeded per call.
CountTable simulate_counts(const KrausSet &channel, const InputStateSet &inputs,
                           double total_scale, NoiseModel noise = NoiseModel::none());

/// Linear inversion of 16 product-projector expectations through the tensor
/// product of single-qubit dual frames. Output is Hermitian and unnormalized;
/// it is not forced to be positive.
DensityMatrix reconstruct_state(std::span<const double> expectations,
                                const InputStateSet &inputs);

/// The 16 projector expectations Tr(Pi_[ij] rho) of a two-qubit operator.
Eigen::VectorXd expectations(const DensityMatrix &rho, const InputStateSet &inputs);

/// Output states, then E(X_k (x) X_l) by linear combination, then the
/// associated state. The result carries the scale of the counts.
ProcessMatrix reconstruct_process(const CountTable &ct, const InputStateSet &inputs);

}  // namespace bsqpt

#endif  // BSQPT_TOMOGRAPHY_HPP
