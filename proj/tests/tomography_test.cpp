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

#include <gtest/gtest.h>

#include "bsqpt/bases.hpp"
#include "bsqpt/bsfilter.hpp"
#include "test_util.hpp"

using namespace bsqpt;
using bsqpt::testing::max_abs;

namespace {

const cplx kI(0.0, 1.0);

KrausSet identity_channel() {
  KrausSet ks;
  ks.items.push_back({1.0, CMat::Identity(4, 4)});
  return ks;
}

std::span<const double> as_span(const Eigen::VectorXd &v) {
  return {v.data(), static_cast<std::size_t>(v.size())};
}

double scaled_distance(const ProcessMatrix &got, double scale, const CMat &truth) {
  return frobenius_distance(got.m / scale, truth);
}

}  // namespace

TEST(tomography, input_set) {
  const InputStateSet set = build_input_set();
  for (int r = 0; r < 2; ++r)
    for (int c = 0; c < 2; ++c) EXPECT_NEAR(std::abs(set.singles[2](r, c) - 0.5), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(set.singles[3](1, 0) - 0.5 * kI), 0.0, 1e-15);
  EXPECT_LT(max_abs(set.products[0] - projector(basis_ket(4, 0))), 1e-15);
  for (const auto &p : set.products) {
    EXPECT_NEAR(p.trace().real(), 1.0, 1e-15);
    EXPECT_LT(max_abs(p * p - p), 1e-15);
  }
  const double cond = set.gram_condition_number();
  EXPECT_TRUE(std::isfinite(cond));
  EXPECT_GT(cond, 1.0);
  EXPECT_LT(cond, 1e3);

  // Independent singularity check: Gram determinant.
  Eigen::MatrixXd g(16, 16);
  for (int a = 0; a < 16; ++a)
    for (int b = 0; b < 16; ++b) g(a, b) = (set.products[a] * set.products[b]).trace().real();
  EXPECT_GT(std::abs(g.determinant()), 1e-10);
}

TEST(tomography, decompose_examples) {
  const InputStateSet set = build_input_set();
  const DecompositionCoefficients dc = decompose_standard(set);
  // X0 = |0><0|
  EXPECT_NEAR(std::abs(dc.single(0, 0) - 1.0), 0.0, 1e-14);
  for (int i = 1; i < 4; ++i) EXPECT_NEAR(std::abs(dc.single(0, i)), 0.0, 1e-14);
  // X1 = |+><+| + i|L><L| - (1+i)/2 (|0><0| + |1><1|)
  const cplx half(0.5, 0.5);
  EXPECT_NEAR(std::abs(dc.single(1, 0) + half), 0.0, 1e-14);
  EXPECT_NEAR(std::abs(dc.single(1, 1) + half), 0.0, 1e-14);
  EXPECT_NEAR(std::abs(dc.single(1, 2) - 1.0), 0.0, 1e-14);
  EXPECT_NEAR(std::abs(dc.single(1, 3) - kI), 0.0, 1e-14);
  const CMat x1 = set.singles[2] + kI * set.singles[3] - half * (set.singles[0] + set.singles[1]);
  EXPECT_LT(max_abs(x1 - standard_element(1)), 1e-15);
  // Factorization of the two-qubit coefficients.
  for (int in = 0; in < 16; ++in)
    EXPECT_NEAR(std::abs(dc.coeffs(pair_index(1, 0), in) - dc.single(1, in / 4) * dc.single(0, in % 4)),
                0.0, 1e-15);
  for (int kl = 0; kl < 16; ++kl) {
    CMat sum = CMat::Zero(4, 4);
    for (int in = 0; in < 16; ++in) sum += dc.coeffs(kl, in) * set.products[in];
    EXPECT_LT(max_abs(sum - kron(standard_element(kl / 4), standard_element(kl % 4))), 1e-12);
  }
}

TEST(tomography, decompose_rejects_singular_set) {
  InputStateSet set = build_input_set();
  set.singles[3] = set.singles[2];
  EXPECT_THROW(decompose_standard(set), std::invalid_argument);
  EXPECT_THROW(dual_frame(set), std::invalid_argument);
}

TEST(tomography, simulate_counts_examples) {
  const InputStateSet set = build_input_set();
  const CountTable id = simulate_counts(identity_channel(), set, 1000.0);
  EXPECT_NEAR(id.counts(0, 0), 1000.0, 1e-10);
  EXPECT_FALSE(id.noise_seed.has_value());

  const CountTable trip = simulate_counts(kraus_pair(FilterParams{}), set, 1000.0);
  for (int pr = 0; pr < 16; ++pr) EXPECT_NEAR(trip.counts(0, pr), 0.0, 1e-12);

  const KrausSet filt = kraus_pair(bsqpt::testing::reference_params(0.325));
  const CountTable a = simulate_counts(filt, set, 1e4, NoiseModel::poisson(7));
  const CountTable b = simulate_counts(filt, set, 1e4, NoiseModel::poisson(7));
  const CountTable c = simulate_counts(filt, set, 1e4, NoiseModel::poisson(8));
  EXPECT_EQ(a.counts, b.counts);
  EXPECT_NE(a.counts, c.counts);
  ASSERT_TRUE(a.noise_seed.has_value());
  EXPECT_EQ(*a.noise_seed, 7u);
  for (int i = 0; i < 16; ++i)
    for (int j = 0; j < 16; ++j) EXPECT_EQ(a.counts(i, j), std::round(a.counts(i, j)));

  EXPECT_THROW(simulate_counts(filt, set, 0.0), std::invalid_argument);
}

TEST(tomography, count_table_validation) {
  CountTable ct;
  EXPECT_NO_THROW(ct.validate());
  ct.counts(3, 4) = -1.0;
  EXPECT_THROW(ct.validate(), std::invalid_argument);
  ct.counts(3, 4) = std::nan("");
  EXPECT_THROW(ct.validate(), std::invalid_argument);
}

TEST(tomography, reconstruct_state_examples) {
  const InputStateSet set = build_input_set();
  const CMat mixed = CMat::Identity(4, 4) / 4.0;
  const Eigen::VectorXd e = expectations(mixed, set);
  EXPECT_LT(max_abs(reconstruct_state(as_span(e), set) - mixed), 1e-12);

  const CMat psi = projector(bell_state(2));
  const Eigen::VectorXd ep = expectations(psi, set);
  EXPECT_LT(max_abs(reconstruct_state(as_span(ep), set) - psi), 1e-12);
  const Eigen::VectorXd scaled = 2.5 * ep;
  EXPECT_LT(max_abs(reconstruct_state(as_span(scaled), set) - 2.5 * psi), 1e-12);
}

TEST(tomography, dual_frame_exact_on_hermitian) {
  const InputStateSet set = build_input_set();
  const auto duals = dual_frame(set);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      EXPECT_NEAR(std::abs((set.singles[j] * duals[i]).trace() - (i == j ? 1.0 : 0.0)), 0.0, 1e-14);

  std::mt19937_64 rng(41);
  for (int trial = 0; trial < 100; ++trial) {
    const CMat h = random_hermitian(4, rng);
    const Eigen::VectorXd e = expectations(h, set);
    const CMat back = reconstruct_state(as_span(e), set);
    EXPECT_LT(max_abs(back - h), 1e-12);
    EXPECT_LT(max_abs(back - back.adjoint()), 1e-15);
  }
}

TEST(tomography, reconstruct_process_examples) {
  const InputStateSet set = build_input_set();
  const ProcessMatrix id = reconstruct_process(simulate_counts(identity_channel(), set, 1.0), set);
  EXPECT_EQ(id.basis, BasisKind::kStandard);
  EXPECT_LT(max_abs(id.m - choi_from_kraus(identity_channel()).m), 1e-10);

  const KrausSet filt = kraus_pair(bsqpt::testing::reference_params(0.5));
  const ProcessMatrix chi = reconstruct_process(simulate_counts(filt, set, 1.0), set);
  EXPECT_LT(max_abs(chi.m - choi_from_kraus(filt).m), 1e-10);
  EXPECT_EQ(numerical_rank(chi.m, 1e-9), 2);
}

TEST(tomography, end_to_end_noiseless) {
  const InputStateSet set = build_input_set();
  std::mt19937_64 rng(123);
  double worst = 0.0;
  for (int trial = 0; trial < 50; ++trial) {
    const KrausSet ks = bsqpt::testing::random_channel(rng);
    const ProcessMatrix chi = reconstruct_process(simulate_counts(ks, set, 1.0), set);
    worst = std::max(worst, frobenius_distance(chi.m, choi_from_kraus(ks).m));
  }
  EXPECT_LT(worst, 1e-9);
}

TEST(tomography, scale_equivariance) {
  const InputStateSet set = build_input_set();
  const KrausSet filt = kraus_pair(bsqpt::testing::reference_params(0.14));
  const ProcessMatrix one = reconstruct_process(simulate_counts(filt, set, 1.0), set);
  for (double lambda : {0.3, 7.0, 1e4}) {
    const ProcessMatrix many = reconstruct_process(simulate_counts(filt, set, lambda), set);
    EXPECT_LT(max_abs(many.m - lambda * one.m), 1e-12 * lambda);
  }
}

TEST(tomography, poisson_converges_with_counts) {
  const InputStateSet set = build_input_set();
  const KrausSet filt = kraus_pair(bsqpt::testing::reference_params(0.325));
  const CMat truth = choi_from_kraus(filt).m;
  double low = 0.0, high = 0.0;
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    low += scaled_distance(reconstruct_process(simulate_counts(filt, set, 1e3, NoiseModel::poisson(seed)), set),
                           1e3, truth);
    high += scaled_distance(reconstruct_process(simulate_counts(filt, set, 1e6, NoiseModel::poisson(seed)), set),
                            1e6, truth);
  }
  EXPECT_LT(high / 20.0, low / 20.0);
  EXPECT_LT(high / 20.0, 0.05 * truth.norm());
}
