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

#include "bsqpt/channel.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace bsqpt {

namespace {

void require_two_qubit(const CMat &m, const char *what) {
  if (m.rows() != 4 || m.cols() != 4) {
    throw std::invalid_argument(std::string(what) + ": expected a 4x4 matrix, got " +
                                std::to_string(m.rows()) + "x" +
                                std::to_string(m.cols()));
  }
}

// Index of X_k^dagger within the standard single-qubit basis: |i><j| -> |j><i|.
constexpr int adjoint_index(int k) { return 2 * (k % 2) + k / 2; }

}  // namespace

CMat KrausSet::effect() const {
  CMat e = CMat::Zero(4, 4);
  for (const auto &it : items) e += it.weight * it.op.adjoint() * it.op;
  return e;
}

void KrausSet::validate() const {
  for (const auto &it : items) {
    require_two_qubit(it.op, "KrausSet");
    if (!(it.weight >= 0.0)) {
      throw std::invalid_argument("KrausSet: negative or NaN weight");
    }
  }
  if (physical) {
    const double top = hermitian_eigenvalues(effect()).maxCoeff();
    if (top > 1.0 + 1e-9) {
      throw std::invalid_argument("KrausSet: trace-increasing effect, largest eigenvalue " +
                                  std::to_string(top));
    }
  }
}

DensityMatrix apply_kraus(const KrausSet &ks, const DensityMatrix &rho) {
  require_two_qubit(rho, "apply_kraus");
  DensityMatrix out = DensityMatrix::Zero(4, 4);
  for (const auto &it : ks.items) {
    require_two_qubit(it.op, "apply_kraus");
    out += it.weight * it.op * rho * it.op.adjoint();
  }
  return out;
}

DensityMatrix apply_process_matrix(const ProcessMatrix &chi,
                                   const OperatorBasis &basis,
                                   const DensityMatrix &rho) {
  if (chi.basis != basis.kind) {
    throw std::invalid_argument(std::string("apply_process_matrix: chi is tagged ") +
                                basis_tag(chi.basis) + " but basis is " +
                                basis_tag(basis.kind));
  }
  require_two_qubit(rho, "apply_process_matrix");
  std::array<CMat, 16> left;
  std::array<CMat, 16> right;
  for (int a = 0; a < 16; ++a) {
    left[a] = basis.elements[a] * rho;
    right[a] = basis.elements[a].adjoint();
  }
  DensityMatrix out = DensityMatrix::Zero(4, 4);
  for (int a = 0; a < 16; ++a) {
    for (int b = 0; b < 16; ++b) {
      const cplx c = chi.m(a, b);
      if (c == cplx(0.0, 0.0)) continue;
      out += c * left[a] * right[b];
    }
  }
  return out;
}

Ket standard_coefficients(const CMat &op) {
  require_two_qubit(op, "standard_coefficients");
  // X_<ij> (x) X_<i'j'> = |i i'><j j'|, so the coefficient is a permuted
  // matrix entry.
  Ket c(16);
  for (int k = 0; k < 4; ++k)
    for (int l = 0; l < 4; ++l)
      c(pair_index(k, l)) = op(2 * (k / 2) + l / 2, 2 * (k % 2) + l % 2);
  return c;
}

CMat operator_from_coefficients(const Ket &coeffs) {
  if (coeffs.size() != 16) {
    throw std::invalid_argument("operator_from_coefficients: expected 16 coefficients");
  }
  CMat op(4, 4);
  for (int k = 0; k < 4; ++k)
    for (int l = 0; l < 4; ++l)
      op(2 * (k / 2) + l / 2, 2 * (k % 2) + l % 2) = coeffs(pair_index(k, l));
  return op;
}

ProcessMatrix choi_from_kraus(const KrausSet &ks) {
  ProcessMatrix chi{BasisKind::kStandard, CMat::Zero(16, 16)};
  for (const auto &it : ks.items) {
    const Ket c = standard_coefficients(it.op);
    chi.m += it.weight * c * c.adjoint();
  }
  return chi;
}

MapTable map_table_from_kraus(const KrausSet &ks) {
  MapTable mt;
  const auto &s = basis(BasisKind::kStandard);
  for (int a = 0; a < 16; ++a) mt.outputs[a] = apply_kraus(ks, s.elements[a]);
  return mt;
}

bool is_hermiticity_preserving(const MapTable &mt, double tol) {
  for (int k = 0; k < 4; ++k) {
    for (int l = 0; l < 4; ++l) {
      const CMat &fwd = mt.outputs[pair_index(k, l)];
      const CMat &adj = mt.outputs[pair_index(adjoint_index(k), adjoint_index(l))];
      if ((fwd.adjoint() - adj).cwiseAbs().maxCoeff() > tol) return false;
    }
  }
  return true;
}

CMat associated_state_permutation() {
  return permutation_operator(4, 1, 2) * permutation_operator(4, 0, 1) *
         permutation_operator(4, 2, 3);
}

CMat permuted_associated_state(const MapTable &mt) {
  const auto &s = basis(BasisKind::kStandard);
  CMat d = CMat::Zero(16, 16);
  for (int a = 0; a < 16; ++a) {
    require_two_qubit(mt.outputs[a], "permuted_associated_state");
    d += kron(s.elements[a], mt.outputs[a]);
  }
  return d;
}

ProcessMatrix assemble_choi_from_map(const MapTable &mt) {
  static const CMat w = associated_state_permutation();
  const CMat permuted = permuted_associated_state(mt);
  return {BasisKind::kStandard, w.adjoint() * permuted * w};
}

KrausSet kraus_from_process_matrix(const ProcessMatrix &chi, double tol) {
  if (chi.basis != BasisKind::kStandard) {
    throw std::invalid_argument("kraus_from_process_matrix: chi must be in the standard basis");
  }
  if (!is_hermitian(chi.m, kDefaultTol * std::max(1.0, chi.m.cwiseAbs().maxCoeff()))) {
    throw std::invalid_argument("kraus_from_process_matrix: chi is not Hermitian");
  }
  Eigen::SelfAdjointEigenSolver<CMat> es(0.5 * (chi.m + chi.m.adjoint()));
  const double trace = chi.m.trace().real();
  KrausSet ks;
  if (trace <= 0.0) {
    if (es.eigenvalues().minCoeff() < -tol) {
      throw std::domain_error("not completely positive: non-positive trace with negative eigenvalue");
    }
    return ks;
  }
  for (Eigen::Index i = 0; i < 16; ++i) {
    const double lam = es.eigenvalues()(i) / trace;
    if (lam < -tol) {
      throw std::domain_error("not completely positive: normalized eigenvalue " +
                              std::to_string(lam));
    }
    if (lam > tol) {
      ks.items.push_back({es.eigenvalues()(i), operator_from_coefficients(es.eigenvectors().col(i))});
    }
  }
  return ks;
}

int numerical_rank(const CMat &hermitian, double rel_tol) {
  const Eigen::VectorXd ev = hermitian_eigenvalues(hermitian);
  const double top = ev.cwiseAbs().maxCoeff();
  if (top == 0.0) return 0;
  int rank = 0;
  for (Eigen::Index i = 0; i < ev.size(); ++i)
    if (std::abs(ev(i)) > rel_tol * top) ++rank;
  return rank;
}

}  // namespace bsqpt
