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

#include "bsqpt/tomography.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>
#include <string>

#include "bsqpt/bases.hpp"

namespace bsqpt {

namespace {

// Columns are vec(rho_i), row-major flattening of the 2x2 matrices.
CMat single_frame_matrix(const InputStateSet &inputs) {
  CMat a(4, 4);
  for (int i = 0; i < 4; ++i)
    for (int r = 0; r < 2; ++r)
      for (int c = 0; c < 2; ++c) a(2 * r + c, i) = inputs.singles[i](r, c);
  return a;
}

Ket vec2(const CMat &m) {
  Ket v(4);
  for (int r = 0; r < 2; ++r)
    for (int c = 0; c < 2; ++c) v(2 * r + c) = m(r, c);
  return v;
}

CMat unvec2(const Ket &v) {
  CMat m(2, 2);
  for (int r = 0; r < 2; ++r)
    for (int c = 0; c < 2; ++c) m(r, c) = v(2 * r + c);
  return m;
}

Eigen::FullPivLU<CMat> frame_lu(const InputStateSet &inputs) {
  Eigen::FullPivLU<CMat> lu(single_frame_matrix(inputs));
  if (!lu.isInvertible()) {
    throw std::invalid_argument("input state set does not span the single-qubit operator space");
  }
  return lu;
}

}  // namespace

InputStateSet build_input_set() {
  const double h = 1.0 / std::sqrt(2.0);
  Ket zero = basis_ket(2, 0);
  Ket one = basis_ket(2, 1);
  Ket plus(2);
  plus << h, h;
  Ket left(2);
  left << h, cplx(0.0, h);

  InputStateSet set;
  set.singles = {projector(zero), projector(one), projector(plus), projector(left)};
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) set.products[pair_index(i, j)] = kron(set.singles[i], set.singles[j]);
  return set;
}

double InputStateSet::gram_condition_number() const {
  Eigen::MatrixXd g(16, 16);
  for (int a = 0; a < 16; ++a)
    for (int b = 0; b < 16; ++b) g(a, b) = (products[a] * products[b]).trace().real();
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(g);
  const auto &sv = svd.singularValues();
  if (sv(sv.size() - 1) == 0.0) return std::numeric_limits<double>::infinity();
  return sv(0) / sv(sv.size() - 1);
}

DecompositionCoefficients decompose_standard(const InputStateSet &inputs) {
  const auto lu = frame_lu(inputs);
  DecompositionCoefficients dc{CMat(4, 4), CMat(16, 16)};
  for (int k = 0; k < 4; ++k) {
    const Ket a = lu.solve(vec2(standard_element(k)));
    for (int i = 0; i < 4; ++i) dc.single(k, i) = a(i);
  }
  for (int k = 0; k < 4; ++k)
    for (int l = 0; l < 4; ++l)
      for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
          dc.coeffs(pair_index(k, l), pair_index(i, j)) = dc.single(k, i) * dc.single(l, j);

  const auto &std_basis = basis(BasisKind::kStandard);
  for (int kl = 0; kl < 16; ++kl) {
    CMat sum = CMat::Zero(4, 4);
    for (int in = 0; in < 16; ++in) sum += dc.coeffs(kl, in) * inputs.products[in];
    if ((sum - std_basis.elements[kl]).cwiseAbs().maxCoeff() > 1e-12) {
      throw std::logic_error("decompose_standard: reconstruction identity failed at [kl]=" +
                             std::to_string(kl));
    }
  }
  return dc;
}

std::array<CMat, 4> dual_frame(const InputStateSet &inputs) {
  // Tr(P_j rho) = vec(P_j)^dagger vec(rho), so vec(rho) = A^{-dagger} e.
  const CMat a = single_frame_matrix(inputs);
  Eigen::FullPivLU<CMat> lu(a.adjoint());
  if (!lu.isInvertible()) {
    throw std::invalid_argument("input state set does not span the single-qubit operator space");
  }
  const CMat inv = lu.inverse();
  std::array<CMat, 4> duals;
  for (int j = 0; j < 4; ++j) {
    const CMat d = unvec2(inv.col(j));
    duals[j] = 0.5 * (d + d.adjoint());
  }
  return duals;
}

void CountTable::validate() const {
  if (counts.rows() != 16 || counts.cols() != 16) {
    throw std::invalid_argument("CountTable: expected 16x16 counts");
  }
  for (int i = 0; i < 16; ++i)
    for (int j = 0; j < 16; ++j)
      if (!std::isfinite(counts(i, j)) || counts(i, j) < 0.0) {
        throw std::invalid_argument("CountTable: count at (" + std::to_string(i) + "," +
                                    std::to_string(j) + ") is negative or not finite");
      }
}

CountTable simulate_counts(const KrausSet &channel, const InputStateSet &inputs,
                           double total_scale, NoiseModel noise) {
  if (!(total_scale > 0.0)) throw std::invalid_argument("simulate_counts: total_scale must be > 0");
  CountTable ct;
  ct.total_scale = total_scale;
  for (int in = 0; in < 16; ++in) {
    const DensityMatrix out = apply_kraus(channel, inputs.products[in]);
    for (int pr = 0; pr < 16; ++pr) {
      // Clamp round-off negatives on exactly-zero outcomes.
      ct.counts(in, pr) = std::max(0.0, total_scale * (inputs.products[pr] * out).trace().real());
    }
  }
  if (noise.kind == NoiseModel::Kind::kPoisson) {
    ct.noise_seed = noise.seed;
    std::mt19937_64 rng(noise.seed);
    for (int in = 0; in < 16; ++in) {
      for (int pr = 0; pr < 16; ++pr) {
        const double mean = ct.counts(in, pr);
        if (mean <= 0.0) {
          ct.counts(in, pr) = 0.0;
          continue;
        }
        std::poisson_distribution<long long> pd(mean);
        ct.counts(in, pr) = static_cast<double>(pd(rng));
      }
    }
  }
  return ct;
}

Eigen::VectorXd expectations(const DensityMatrix &rho, const InputStateSet &inputs) {
  Eigen::VectorXd e(16);
  for (int a = 0; a < 16; ++a) e(a) = (inputs.products[a] * rho).trace().real();
  return e;
}

DensityMatrix reconstruct_state(std::span<const double> expectations,
                                const InputStateSet &inputs) {
  if (expectations.size() != 16) {
    throw std::invalid_argument("reconstruct_state: expected 16 expectation values");
  }
  const auto duals = dual_frame(inputs);
  DensityMatrix rho = DensityMatrix::Zero(4, 4);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      rho += expectations[static_cast<std::size_t>(pair_index(i, j))] * kron(duals[i], duals[j]);
  return rho;
}

ProcessMatrix reconstruct_process(const CountTable &ct, const InputStateSet &inputs) {
  ct.validate();
  const auto dc = decompose_standard(inputs);
  std::array<DensityMatrix, 16> outputs;
  for (int in = 0; in < 16; ++in) {
    const Eigen::VectorXd row = ct.counts.row(in).transpose();
    outputs[in] = reconstruct_state(std::span<const double>(row.data(), 16), inputs);
  }
  MapTable mt;
  for (int kl = 0; kl < 16; ++kl) {
    CMat sum = CMat::Zero(4, 4);
    for (int in = 0; in < 16; ++in) sum += dc.coeffs(kl, in) * outputs[in];
    mt.outputs[kl] = sum;
  }
  return assemble_choi_from_map(mt);
}

}  // namespace bsqpt
