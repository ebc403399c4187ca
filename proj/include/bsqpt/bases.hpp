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

#ifndef BSQPT_BASES_HPP
#define BSQPT_BASES_HPP

#include <array>
#include <optional>
#include <string_view>

#include "bsqpt/quantumcore.hpp"

namespace bsqpt {

/// Two-qubit operator bases.
///
///   Standard   X_k (x) X_l with X_<ij> = |i><j|, <ij> = 2i+j
///   PauliKron  E_k (x) E_l with E_k = sigma_k / sqrt(2)
///   Bell       |Phi_k><Phi_l| (Bell order phi+, phi-, psi+, psi-)
///   FilterF    (E_k (x) E_l) U_S
///
/// Every basis is indexed by the pair index [kl] := 4k + l.
enum class BasisKind { kStandard, kPauliKron, kBell, kFilterF };

inline constexpr int pair_index(int k, int l) { return 4 * k + l; }

/// Single-letter tag used in files and on the command line (S, B, C, F).
char basis_tag(BasisKind kind);
std::optional<BasisKind> parse_basis_tag(std::string_view tag);

/// |i><j| for k = 2i + j.
CMat standard_element(int k);
/// sigma_k / sqrt(2).
CMat pauli_element(int k);

struct OperatorBasis {
  BasisKind kind;
  std::array<CMat, 16> elements;
  /// u_matrix(4k+l, alpha) = Tr((X_k (x) X_l)^dagger A_alpha).
  CMat u_matrix;
};

/// Throws std::logic_error if the derived change-of-basis matrix is not
/// unitary to 1e-12.
OperatorBasis build_basis(BasisKind kind);

/// Cached immutable instance.
const OperatorBasis &basis(BasisKind kind);

/// 16x16 process matrix expressed in a declared operator basis. In the
/// standard basis it is also the (unnormalized) associated four-qubit state.
struct ProcessMatrix {
  BasisKind basis;
  CMat m;
};

/// chi_A = U^dagger chi_S U. Throws std::invalid_argument unless `chi_s`
/// is tagged Standard.
ProcessMatrix transform_process_matrix(const ProcessMatrix &chi_s,
                                       const OperatorBasis &target);

/// Converts between any two bases by way of the standard basis.
ProcessMatrix change_basis(const ProcessMatrix &chi, BasisKind target);

}  // namespace bsqpt

#endif  // BSQPT_BASES_HPP
