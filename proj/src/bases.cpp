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

#include "bsqpt/bases.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace bsqpt {

char basis_tag(BasisKind kind) {
  switch (kind) {
    case BasisKind::kStandard: return 'S';
    case BasisKind::kPauliKron: return 'B';
    case BasisKind::kBell: return 'C';
    case BasisKind::kFilterF: return 'F';
  }
  return '?';
}

std::optional<BasisKind> parse_basis_tag(std::string_view tag) {
  if (tag == "S") return BasisKind::kStandard;
  if (tag == "B") return BasisKind::kPauliKron;
  if (tag == "C") return BasisKind::kBell;
  if (tag == "F") return BasisKind::kFilterF;
  return std::nullopt;
}

CMat standard_element(int k) {
  if (k < 0 || k > 3) throw std::out_of_range("standard_element: k must be 0..3");
  return outer(basis_ket(2, static_cast<std::size_t>(k / 2)),
               basis_ket(2, static_cast<std::size_t>(k % 2)));
}

CMat pauli_element(int k) { return sigma(k) / std::sqrt(2.0); }

OperatorBasis build_basis(BasisKind kind) {
  OperatorBasis b{kind, {}, CMat::Zero(16, 16)};
  const CMat us = swap_operator();
  for (int k = 0; k < 4; ++k) {
    for (int l = 0; l < 4; ++l) {
      CMat &el = b.elements[pair_index(k, l)];
      switch (kind) {
        case BasisKind::kStandard:
          el = kron(standard_element(k), standard_element(l));
          break;
        case BasisKind::kPauliKron:
          el = kron(pauli_element(k), pauli_element(l));
          break;
        case BasisKind::kBell:
          el = outer(bell_state(k), bell_state(l));
          break;
        case BasisKind::kFilterF:
          el = kron(pauli_element(k), pauli_element(l)) * us;
          break;
      }
    }
  }
  for (int k = 0; k < 4; ++k) {
    for (int l = 0; l < 4; ++l) {
      const CMat x = kron(standard_element(k), standard_element(l));
      for (int a = 0; a < 16; ++a) {
        b.u_matrix(pair_index(k, l), a) = hs_inner(x, b.elements[a]);
      }
    }
  }
  const double err =
      (b.u_matrix.adjoint() * b.u_matrix - CMat::Identity(16, 16)).cwiseAbs().maxCoeff();
  if (err > 1e-12) {
    throw std::logic_error(std::string("build_basis: change-of-basis matrix for ") +
                           basis_tag(kind) + " is not unitary");
  }
  return b;
}

const OperatorBasis &basis(BasisKind kind) {
  static const std::array<OperatorBasis, 4> cache = {
      build_basis(BasisKind::kStandard), build_basis(BasisKind::kPauliKron),
      build_basis(BasisKind::kBell), build_basis(BasisKind::kFilterF)};
  return cache[static_cast<std::size_t>(kind)];
}

ProcessMatrix transform_process_matrix(const ProcessMatrix &chi_s,
                                       const OperatorBasis &target) {
  if (chi_s.basis != BasisKind::kStandard) {
    throw std::invalid_argument("transform_process_matrix: input is tagged " +
                                std::string(1, basis_tag(chi_s.basis)) +
                                ", expected S");
  }
  if (chi_s.m.rows() != 16 || chi_s.m.cols() != 16) {
    throw std::invalid_argument("transform_process_matrix: expected a 16x16 matrix");
  }
  return {target.kind, target.u_matrix.adjoint() * chi_s.m * target.u_matrix};
}

ProcessMatrix change_basis(const ProcessMatrix &chi, BasisKind target) {
  if (chi.basis == target) return chi;
  const CMat &u = basis(chi.basis).u_matrix;
  const ProcessMatrix standard{BasisKind::kStandard, u * chi.m * u.adjoint()};
  return transform_process_matrix(standard, basis(target));
}

}  // namespace bsqpt
