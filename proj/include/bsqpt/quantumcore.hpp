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

#ifndef BSQPT_QUANTUMCORE_HPP
#define BSQPT_QUANTUMCORE_HPP

#include <complex>
#include <cstddef>
#include <random>

#include <Eigen/Dense>

namespace bsqpt {

using cplx = std::complex<double>;

/// Dense square complex matrix. Row-major index convention for tensor
/// products: qubit 0 is the most significant factor, so |i,j> <-> 2i+j.
using CMat = Eigen::MatrixXcd;
using Ket = Eigen::VectorXcd;

/// A (possibly sub-normalized) two-qubit density matrix.
using DensityMatrix = CMat;

inline constexpr double kDefaultTol = 1e-9;

CMat kron(const CMat &a, const CMat &b);
CMat dagger(const CMat &a);

/// Outer product |a><b|.
CMat outer(const Ket &a, const Ket &b);
inline CMat projector(const Ket &k) { return outer(k, k); }

/// Computational basis ket |index> in dimension `dim`.
Ket basis_ket(std::size_t dim, std::size_t index);

/// Partial trace of a bipartite operator on C^d0 (x) C^d1.
/// `keep` selects the surviving subsystem (0 or 1).
/// Throws std::invalid_argument if d0*d1 != a.rows() or keep is not 0/1.
CMat partial_trace(const CMat &a, std::size_t d0, std::size_t d1, int keep);

/// Permutation (swap) operator exchanging qubits i and j of an n-qubit
/// register. Throws std::out_of_range for bad indices.
CMat permutation_operator(int n_qubits, int i, int j);

// Pauli matrices; sigma(0) is the identity.
CMat sigma(int k);

/// Two-qubit swap U_S.
CMat swap_operator();

/// Bell states in the order phi+, phi-, psi+, psi-.
Ket bell_state(int k);

bool is_hermitian(const CMat &a, double tol = kDefaultTol);

struct PsdReport {
  enum class Status { kPsd, kNotPsd, kNotHermitian };
  Status status;
  double min_eigenvalue;  // NaN when not Hermitian
  bool ok() const { return status == Status::kPsd; }
};

PsdReport is_psd(const CMat &a, double tol = kDefaultTol);

/// Clips negative eigenvalues of a Hermitian matrix to zero.
CMat project_to_psd(const CMat &a);

/// Eigenvalues of a Hermitian matrix in ascending order.
Eigen::VectorXd hermitian_eigenvalues(const CMat &a);

/// Uhlmann fidelity (Tr sqrt(sqrt(a) b sqrt(a)))^2 of the trace-normalized
/// inputs. Throws std::domain_error on (near) zero trace.
double fidelity(const CMat &a, const CMat &b);

double frobenius_distance(const CMat &a, const CMat &b);

/// Hilbert-Schmidt inner product Tr(a^dagger b).
cplx hs_inner(const CMat &a, const CMat &b);

// Random sampling helpers, used by tests and property checks.
CMat random_ginibre(std::size_t dim, std::mt19937_64 &rng);
CMat random_density_matrix(std::size_t dim, std::mt19937_64 &rng);
CMat random_hermitian(std::size_t dim, std::mt19937_64 &rng);

}  // namespace bsqpt

#endif  // BSQPT_QUANTUMCORE_HPP
