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

#ifndef BSQPT_CHANNEL_HPP
#define BSQPT_CHANNEL_HPP

#include <array>
#include <vector>

#include "bsqpt/bases.hpp"
#include "bsqpt/quantumcore.hpp"

namespace bsqpt {

struct KrausItem {
  double weight;
  CMat op;
};

/// Weighted operator-sum E(rho) = sum_i w_i K_i rho K_i^dagger. Weights are
/// kept apart from the operators so that mixing parameters stay visible.
struct KrausSet {
  std::vector<KrausItem> items;
  /// When set, the trace-nonincreasing condition is enforced by validate().
  bool physical = false;

  /// sum_i w_i K_i^dagger K_i
  CMat effect() const;
  /// Throws std::invalid_argument on negative weights, wrong dimensions, or
  /// (when `physical`) a trace-increasing effect.
  void validate() const;
};

/// E(X_k (x) X_l) for every pair index [kl].
struct MapTable {
  std::array<CMat, 16> outputs;
};

DensityMatrix apply_kraus(const KrausSet &ks, const DensityMatrix &rho);

/// Evaluates sum_{ab} chi_ab A_a rho A_b^dagger in the given basis.
/// Throws std::invalid_argument when chi.basis != basis.kind.
DensityMatrix apply_process_matrix(const ProcessMatrix &chi,
                                   const OperatorBasis &basis,
                                   const DensityMatrix &rho);

/// Expansion coefficients c_[kl] = Tr((X_k (x) X_l)^dagger K) of a 4x4
/// operator in the standard operator basis, and the inverse map.
Ket standard_coefficients(const CMat &op);
CMat operator_from_coefficients(const Ket &coeffs);

/// chi_S = sum_i w_i c_i c_i^dagger.
ProcessMatrix choi_from_kraus(const KrausSet &ks);

/// Evaluates the channel on all 16 standard basis operators.
MapTable map_table_from_kraus(const KrausSet &ks);

/// E(X^dagger) = E(X)^dagger over the table, to `tol`.
bool is_hermiticity_preserving(const MapTable &mt, double tol = kDefaultTol);

/// P_23 P_12 P_34 on four qubits, with systems 1..4 numbered left to right.
CMat associated_state_permutation();

/// sum_{kl} X_k (x) X_l (x) E(X_k (x) X_l), the permuted associated state.
CMat permuted_associated_state(const MapTable &mt);

/// Builds the permuted associated state from the map table and undoes the
/// permutation to obtain chi_S.
ProcessMatrix assemble_choi_from_map(const MapTable &mt);

/// Eigendecomposition of chi_S into a Kraus set. Each item carries the
/// eigenvalue as its weight and a unit-norm coefficient vector as operator.
/// `tol` applies to eigenvalues of the unit-trace-normalized matrix.
/// Throws std::domain_error when an eigenvalue falls below -tol.
KrausSet kraus_from_process_matrix(const ProcessMatrix &chi, double tol = 1e-6);

/// Numerical rank: number of eigenvalues above rel_tol times the largest.
int numerical_rank(const CMat &hermitian, double rel_tol = 1e-10);

}  // namespace bsqpt

#endif  // BSQPT_CHANNEL_HPP
