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

#include "bsqpt/quantumcore.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace bsqpt {

CMat kron(const CMat &a, const CMat &b) {
  const auto ar = a.rows(), ac = a.cols(), br = b.rows(), bc = b.cols();
  CMat out(ar * br, ac * bc);
  for (Eigen::Index i = 0; i < ar; ++i) {
    for (Eigen::Index j = 0; j < ac; ++j) {
      out.block(i * br, j * bc, br, bc) = a(i, j) * b;
    }
  }
  return out;
}

CMat dagger(const CMat &a) { return a.adjoint(); }

CMat outer(const Ket &a, const Ket &b) { return a * b.adjoint(); }

Ket basis_ket(std::size_t dim, std::size_t index) {
  if (index >= dim) {
    throw std::out_of_range("basis_ket: index " + std::to_string(index) +
                            " out of range for dim " + std::to_string(dim));
  }
  Ket k = Ket::Zero(static_cast<Eigen::Index>(dim));
  k(static_cast<Eigen::Index>(index)) = 1.0;
  return k;
}

CMat partial_trace(const CMat &a, std::size_t d0, std::size_t d1, int keep) {
  const auto n0 = static_cast<Eigen::Index>(d0);
  const auto n1 = static_cast<Eigen::Index>(d1);
  if (a.rows() != a.cols() || a.rows() != n0 * n1) {
    throw std::invalid_argument("partial_trace: dims " + std::to_string(d0) +
                                "x" + std::to_string(d1) +
                                " do not match matrix of size " +
                                std::to_string(a.rows()));
  }
  if (keep == 0) {
    CMat out = CMat::Zero(n0, n0);
    for (Eigen::Index r = 0; r < n0; ++r)
      for (Eigen::Index c = 0; c < n0; ++c)
        for (Eigen::Index k = 0; k < n1; ++k) out(r, c) += a(r * n1 + k, c * n1 + k);
    return out;
  }
  if (keep == 1) {
    CMat out = CMat::Zero(n1, n1);
    for (Eigen::Index r = 0; r < n1; ++r)
      for (Eigen::Index c = 0; c < n1; ++c)
        for (Eigen::Index k = 0; k < n0; ++k) out(r, c) += a(k * n1 + r, k * n1 + c);
    return out;
  }
  throw std::invalid_argument("partial_trace: keep must be 0 or 1");
}

CMat permutation_operator(int n_qubits, int i, int j) {
  if (n_qubits < 1 || n_qubits > 8 || i < 0 || j < 0 || i >= n_qubits ||
      j >= n_qubits) {
    throw std::out_of_range("permutation_operator: qubit index out of range");
  }
  const Eigen::Index dim = Eigen::Index{1} << n_qubits;
  const int bi = n_qubits - 1 - i;
  const int bj = n_qubits - 1 - j;
  CMat p = CMat::Zero(dim, dim);
  for (Eigen::Index col = 0; col < dim; ++col) {
    const auto vi = (col >> bi) & 1;
    const auto vj = (col >> bj) & 1;
    Eigen::Index row = col;
    if (vi != vj) row ^= (Eigen::Index{1} << bi) | (Eigen::Index{1} << bj);
    p(row, col) = 1.0;
  }
  return p;
}

CMat sigma(int k) {
  CMat s(2, 2);
  switch (k) {
    case 0: s << 1, 0, 0, 1; break;
    case 1: s << 0, 1, 1, 0; break;
    case 2: s << 0, cplx(0, -1), cplx(0, 1), 0; break;
    case 3: s << 1, 0, 0, -1; break;
    default: throw std::out_of_range("sigma: index must be 0..3");
  }
  return s;
}

CMat swap_operator() { return permutation_operator(2, 0, 1); }

Ket bell_state(int k) {
  const double h = 1.0 / std::sqrt(2.0);
  Ket v = Ket::Zero(4);
  switch (k) {
    case 0: v(0) = h; v(3) = h; break;   // phi+
    case 1: v(0) = h; v(3) = -h; break;  // phi-
    case 2: v(1) = h; v(2) = h; break;   // psi+
    case 3: v(1) = h; v(2) = -h; break;  // psi-
    default: throw std::out_of_range("bell_state: index must be 0..3");
  }
  return v;
}

bool is_hermitian(const CMat &a, double tol) {
  if (a.rows() != a.cols()) return false;
  return (a - a.adjoint()).cwiseAbs().maxCoeff() <= tol;
}

Eigen::VectorXd hermitian_eigenvalues(const CMat &a) {
  const CMat h = 0.5 * (a + a.adjoint());
  Eigen::SelfAdjointEigenSolver<CMat> es(h, Eigen::EigenvaluesOnly);
  return es.eigenvalues();
}

PsdReport is_psd(const CMat &a, double tol) {
  if (!is_hermitian(a, tol)) {
    return {PsdReport::Status::kNotHermitian,
            std::numeric_limits<double>::quiet_NaN()};
  }
  const double lo = hermitian_eigenvalues(a).minCoeff();
  return {lo >= -tol ? PsdReport::Status::kPsd : PsdReport::Status::kNotPsd, lo};
}

CMat project_to_psd(const CMat &a) {
  const CMat h = 0.5 * (a + a.adjoint());
  Eigen::SelfAdjointEigenSolver<CMat> es(h);
  const Eigen::VectorXd& ev = es.eigenvalues();
  // Round-off level negatives are left alone so that the projection is
  // idempotent on its own output.
  const double floor = -1e-14 * std::max(1.0, ev.cwiseAbs().maxCoeff());
  if (ev.minCoeff() >= floor) return a;
  const Eigen::VectorXd clipped = ev.cwiseMax(0.0);
  return es.eigenvectors() * clipped.asDiagonal() * es.eigenvectors().adjoint();
}

namespace {

CMat psd_sqrt(const CMat &a) {
  Eigen::SelfAdjointEigenSolver<CMat> es(0.5 * (a + a.adjoint()));
  const Eigen::VectorXd root = es.eigenvalues().cwiseMax(0.0).cwiseSqrt();
  return es.eigenvectors() * root.asDiagonal() * es.eigenvectors().adjoint();
}

}  // namespace

double fidelity(const CMat &a, const CMat &b) {
  const double ta = a.trace().real();
  const double tb = b.trace().real();
  if (std::abs(ta) < 1e-300 || std::abs(tb) < 1e-300) {
    throw std::domain_error("fidelity: zero-trace input");
  }
  const CMat sa = psd_sqrt(a / ta);
  const CMat inner = sa * (b / tb) * sa;
  const double f = psd_sqrt(inner).trace().real();
  return std::min(1.0, std::max(0.0, f * f));
}

double frobenius_distance(const CMat &a, const CMat &b) { return (a - b).norm(); }

cplx hs_inner(const CMat &a, const CMat &b) { return (a.adjoint() * b).trace(); }

CMat random_ginibre(std::size_t dim, std::mt19937_64 &rng) {
  std::normal_distribution<double> g(0.0, 1.0);
  const auto n = static_cast<Eigen::Index>(dim);
  CMat m(n, n);
  for (Eigen::Index r = 0; r < n; ++r)
    for (Eigen::Index c = 0; c < n; ++c) m(r, c) = cplx(g(rng), g(rng));
  return m;
}

CMat random_density_matrix(std::size_t dim, std::mt19937_64 &rng) {
  const CMat g = random_ginibre(dim, rng);
  CMat rho = g * g.adjoint();
  return rho / rho.trace().real();
}

CMat random_hermitian(std::size_t dim, std::mt19937_64 &rng) {
  const CMat g = random_ginibre(dim, rng);
  return 0.5 * (g + g.adjoint());
}

}  // namespace bsqpt
