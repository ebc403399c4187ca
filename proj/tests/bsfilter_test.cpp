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

#include "bsqpt/bsfilter.hpp"

#include <gtest/gtest.h>

#include <numbers>

#include "bsqpt/bases.hpp"
#include "test_util.hpp"

using namespace bsqpt;
using bsqpt::testing::closed_form_chi_f_15_15;
using bsqpt::testing::max_abs;
using bsqpt::testing::naive_apply;
using std::numbers::pi;

namespace {

const cplx kI(0.0, 1.0);

double channel_distance_on_standard_inputs(const KrausSet &a, const KrausSet &b) {
  double worst = 0.0;
  for (int k = 0; k < 4; ++k)
    for (int l = 0; l < 4; ++l) {
      const CMat x = kron(standard_element(k), standard_element(l));
      worst = std::max(worst, max_abs(naive_apply(a, x) - naive_apply(b, x)));
    }
  return worst;
}

}  // namespace

TEST(bsfilter, u3_examples) {
  EXPECT_LT(max_abs(u3(0, 0) - kron(sigma(3), sigma(3))), 1e-15);
  EXPECT_LT(max_abs(u3(0.7, 0.7) * basis_ket(4, 0) - basis_ket(4, 0)), 1e-15);
  const CMat u = u3(0.41 * pi, 0.076 * pi);
  EXPECT_LT(max_abs(u.adjoint() * u - CMat::Identity(4, 4)), 1e-15);
  EXPECT_EQ(max_abs(CMat(u.diagonal().asDiagonal()) - u), 0.0);
  // det = product of the four phases = 1.
  EXPECT_LT(std::abs(u.determinant() - 1.0), 1e-14);
  // Factorized form e^{i t1 s3/2} s3 (x) e^{-i t2 s3/2} s3.
  auto rot = [](double t) {
    CMat r = CMat::Zero(2, 2);
    r(0, 0) = std::exp(kI * t / 2.0);
    r(1, 1) = std::exp(-kI * t / 2.0);
    return r;
  };
  const CMat factored = kron(rot(0.41 * pi) * sigma(3), rot(-0.076 * pi) * sigma(3));
  EXPECT_LT(max_abs(factored - u), 1e-15);
}

TEST(bsfilter, triplet_filter) {
  const FilterParams ideal;
  const KrausSet ks = kraus_pair(ideal);
  EXPECT_LT(max_abs(ks.items[0].op - projector(bell_state(2))), 1e-15);
  EXPECT_LT(max_abs(ks.items[0].op * bell_state(3)), 1e-15);
  EXPECT_LT(max_abs(ks.items[0].op * basis_ket(4, 0)), 1e-15);

  const CMat out = apply_kraus(ks, projector(bell_state(2)));
  EXPECT_LT(max_abs(out - projector(bell_state(2))), 1e-15);
  for (const CMat &sig : {projector(bell_state(3)), projector(basis_ket(4, 0)),
                          projector(basis_ket(4, 3))}) {
    EXPECT_LT(max_abs(apply_kraus(ks, sig)), 1e-15);
  }
}

TEST(bsfilter, kraus_pair_weights_and_scale) {
  const FilterParams fp = FilterParams::from_ratio(0.76, 0.2, -0.3, 0.14, 2.5);
  EXPECT_NEAR(fp.T, 1.0 / 1.76, 1e-15);
  EXPECT_NEAR(fp.R, 0.76 / 1.76, 1e-15);
  EXPECT_NEAR(fp.ratio_rt(), 0.76, 1e-15);
  const KrausSet ks = kraus_pair(fp);
  ASSERT_EQ(ks.items.size(), 2u);
  EXPECT_DOUBLE_EQ(ks.items[0].weight, 0.86);
  EXPECT_DOUBLE_EQ(ks.items[1].weight, 0.14);
  FilterParams unit = fp;
  unit.scale = 1.0;
  std::mt19937_64 rng(3);
  const CMat rho = random_density_matrix(4, rng);
  EXPECT_LT(max_abs(apply_kraus(ks, rho) - 2.5 * apply_kraus(kraus_pair(unit), rho)), 1e-14);
  EXPECT_FALSE(ks.physical);
  EXPECT_TRUE(kraus_pair(unit).physical);
}

TEST(bsfilter, filter_params_validation) {
  FilterParams fp;
  fp.p = 0.6;
  EXPECT_THROW(fp.validate(), std::invalid_argument);
  fp.p = -0.01;
  EXPECT_THROW(fp.validate(), std::invalid_argument);
  fp = FilterParams{};
  fp.T = 0.0;
  EXPECT_THROW(fp.validate(), std::invalid_argument);
  fp = FilterParams{};
  fp.scale = 0.0;
  EXPECT_THROW(fp.validate(), std::invalid_argument);
  fp = FilterParams{};
  fp.theta1 = std::nan("");
  EXPECT_THROW(kraus_pair(fp), std::invalid_argument);
  EXPECT_THROW(BSOptics({0.5, 0.6, 0, 0}).validate(), std::invalid_argument);
}

TEST(bsfilter, optics_ideal_matches_model) {
  const KrausSet optics = kraus_pair_from_optics({0.5, 0.5, 0.0, 0.0}, 0.0);
  EXPECT_LT(channel_distance_on_standard_inputs(optics, kraus_pair(FilterParams{})), 1e-12);
}

TEST(bsfilter, optics_reproduces_model_with_theta_delta_minus_gamma) {
  std::mt19937_64 rng(77);
  std::uniform_real_distribution<double> ang(-pi, pi), rr(0.05, 0.95), pp(0.0, 0.5);
  std::vector<std::pair<double, double>> phases = {{0.0, 0.41 * pi}, {0.3, 0.3 + 0.41 * pi}};
  for (int i = 0; i < 20; ++i) phases.push_back({ang(rng), ang(rng)});
  for (auto [gamma, delta] : phases) {
    const double r = rr(rng);
    const double p = pp(rng);
    const BSOptics bs{1.0 - r, r, gamma, delta};
    FilterParams fp;
    fp.T = 1.0 - r;
    fp.R = r;
    fp.theta1 = fp.theta2 = delta - gamma;
    fp.p = p;
    EXPECT_LT(channel_distance_on_standard_inputs(kraus_pair_from_optics(bs, p), kraus_pair(fp)),
              1e-12);
  }
}

TEST(bsfilter, optics_amplitudes) {
  const double r = 0.76 / 1.76;
  for (double gamma : {0.0, 0.37, -1.9}) {
    const BSOptics bs = BSOptics::from_ratio(0.76, gamma, 0.5);
    const auto ops = coincidence_operators(bs);
    EXPECT_NEAR(std::abs(ops.reflected(0, 0) + r), 0.0, 1e-15);
    EXPECT_NEAR(std::abs(ops.transmitted(0, 0) - (1.0 - r)), 0.0, 1e-15);
    const CMat m = beamsplitter_mode_matrix(bs);
    EXPECT_LT(max_abs(m.adjoint() * m - CMat::Identity(4, 4)), 1e-15);
  }
  // A circularly polarized photon changes helicity on reflection.
  const CMat j = reflection_jones({0.5, 0.5, 0.0, 0.0});
  const Ket ccw = bsqpt::testing::ket_from({1.0 / std::sqrt(2.0), kI / std::sqrt(2.0)});
  const Ket cw = bsqpt::testing::ket_from({1.0 / std::sqrt(2.0), -kI / std::sqrt(2.0)});
  const Ket out = j * ccw;
  EXPECT_NEAR(std::abs(cw.dot(out)), out.norm(), 1e-15);
  EXPECT_NEAR(std::abs(ccw.dot(out)), 0.0, 1e-15);
}

TEST(bsfilter, decoherence_examples) {
  EXPECT_EQ(decoherence_from_delay(0.0, 83.0, 1.0).p, 0.0);
  EXPECT_NEAR(decoherence_from_delay(0.0, 83.0, 0.72).p, 0.14, 1e-15);
  EXPECT_NEAR(decoherence_from_delay(100.0, 83.0, 0.72).p, 0.325, 1e-3);
  EXPECT_NEAR(decoherence_from_delay(350.0, 83.0, 0.72).p, 0.5, 1e-3);
  const Decoherence d = decoherence_from_delay(40.0, 83.0, 0.9);
  EXPECT_NEAR(std::norm(d.state.s), 0.9 * std::exp(-1600.0 / (2.0 * 83.0 * 83.0)), 1e-15);
  EXPECT_THROW(decoherence_from_delay(0.0, 0.0, 1.0), std::invalid_argument);
  EXPECT_THROW(decoherence_from_delay(0.0, 10.0, 1.5), std::invalid_argument);
}

TEST(bsfilter, coherence_time_calibration) {
  const double tc = default_coherence_time_fs();
  EXPECT_NEAR(tc, 83.0, 0.5);
  EXPECT_NEAR(decoherence_from_delay(100.0, tc, kDefaultModeMatch).p, 0.325, 1e-12);
  EXPECT_NEAR(decoherence_from_delay(350.0, tc, kDefaultModeMatch).p, 0.5, 1e-3);
  EXPECT_NEAR(calibrate_coherence_time(-100.0, 0.325, 0.72), tc, 1e-12);
  EXPECT_THROW(calibrate_coherence_time(100.0, 0.1, 0.72), std::invalid_argument);
}

TEST(bsfilter, decoherence_bounds_and_monotone) {
  for (double mu : {0.3, 0.72, 1.0}) {
    double prev = -1.0;
    for (double tau = 0.0; tau <= 600.0; tau += 10.0) {
      const double p = decoherence_from_delay(tau, 83.0, mu).p;
      EXPECT_GE(p, (1.0 - mu) / 2.0 - 1e-15);
      EXPECT_LE(p, 0.5);
      EXPECT_GE(p, prev);
      EXPECT_EQ(p, decoherence_from_delay(-tau, 83.0, mu).p);
      prev = p;
    }
  }
}

TEST(bsfilter, pt_model_examples) {
  std::mt19937_64 rng(5);
  const FilterParams fp = bsqpt::testing::reference_params(0.0);
  const CMat rho = random_density_matrix(4, rng);
  KrausSet pure;
  pure.items.push_back({1.0, kraus_pair(fp).items[0].op});
  EXPECT_LT(max_abs(apply_pt_model(rho, 1.0, fp) - naive_apply(pure, rho)), 1e-12);

  FilterParams half = fp;
  half.p = 0.5;
  EXPECT_LT(max_abs(apply_pt_model(rho, 0.0, fp) - naive_apply(kraus_pair(half), rho)), 1e-12);

  FilterParams p32 = fp;
  p32.p = 0.32;
  EXPECT_LT(max_abs(apply_pt_model(rho, 0.6, fp) - naive_apply(kraus_pair(p32), rho)), 1e-12);

  EXPECT_THROW(apply_pt_model(rho, cplx(0.9, 0.9), fp), std::invalid_argument);
}

TEST(bsfilter, pt_model_equals_mixed_kraus_model) {
  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> u(0.0, 1.0), ang(-pi, pi);
  for (int trial = 0; trial < 50; ++trial) {
    const CMat rho = random_density_matrix(4, rng);
    const cplx s = std::polar(u(rng), ang(rng));
    const double r = u(rng);
    FilterParams fp;
    fp.T = 1.0 - r + 1e-3;
    fp.R = r;
    fp.theta1 = ang(rng);
    fp.theta2 = ang(rng);
    fp.scale = 0.5 + u(rng);
    FilterParams mixed = fp;
    mixed.p = (1.0 - std::norm(s)) / 2.0;
    EXPECT_LT(max_abs(apply_pt_model(rho, s, fp) - naive_apply(kraus_pair(mixed), rho)), 1e-12);
  }
}

TEST(bsfilter, trace_nonincreasing) {
  std::mt19937_64 rng(31);
  std::uniform_real_distribution<double> u(0.0, 1.0), ang(-pi, pi);
  for (int trial = 0; trial < 200; ++trial) {
    const double r = u(rng);
    FilterParams fp;
    fp.T = 1.0 - r;
    fp.R = r;
    if (fp.T <= 0.0) continue;
    fp.theta1 = ang(rng);
    fp.theta2 = ang(rng);
    fp.p = 0.5 * u(rng);
    const double top = hermitian_eigenvalues(kraus_pair(fp).effect()).maxCoeff();
    EXPECT_LE(top, 1.0 + 1e-9);
  }
}

TEST(bsfilter, filter_basis_corner_element_grows_with_p) {
  double prev = -1.0;
  for (double p : {0.0, 0.14, 0.25, 0.325, 0.4, 0.5}) {
    const FilterParams fp = bsqpt::testing::reference_params(p);
    const ProcessMatrix chi = change_basis(choi_from_kraus(kraus_pair(fp)), BasisKind::kFilterF);
    const cplx v = chi.m(15, 15);
    EXPECT_NEAR(v.real(), closed_form_chi_f_15_15(fp), 1e-12);
    EXPECT_NEAR(v.imag(), 0.0, 1e-12);
    EXPECT_GT(v.real(), prev);
    prev = v.real();
  }
}

TEST(bsfilter, hom_dip_ideal_and_closed_form) {
  std::vector<double> grid;
  for (int i = -40; i <= 40; ++i) grid.push_back(25.0 * i);
  const CMat hh = projector(basis_ket(4, 0));

  const auto ideal = hom_dip(FilterParams{}, grid, 83.0, 1.0, hh);
  EXPECT_NEAR(ideal[40].rate, 0.0, 1e-15);
  EXPECT_NEAR(dip_visibility(ideal), 1.0, 1e-12);

  const FilterParams fp = FilterParams::from_ratio(0.76, 0.0, 0.0, 0.0);
  const auto curve = hom_dip(fp, grid, 83.0, 1.0, hh);
  for (const auto &pt : curve) {
    const double expect = fp.T * fp.T + fp.R * fp.R -
                          2.0 * fp.T * fp.R * std::exp(-pt.tau_fs * pt.tau_fs / (2.0 * 83.0 * 83.0));
    EXPECT_NEAR(pt.rate, expect, 1e-14);
  }
  const double vis = hom_visibility_closed_form(fp.T, fp.R, 1.0);
  EXPECT_NEAR(vis, 2.0 * 0.76 / (1.0 + 0.76 * 0.76), 1e-15);
  EXPECT_NEAR(vis, 0.9636, 1e-3);
  EXPECT_NEAR(dip_visibility(curve), vis, 1e-12);
  EXPECT_NEAR(hom_visibility_closed_form(fp.T, fp.R, 0.72), 0.69, 5e-3);
}

TEST(bsfilter, hom_dip_even_with_minimum_at_zero) {
  std::vector<double> grid;
  for (int i = -30; i <= 30; ++i) grid.push_back(10.0 * i);
  const FilterParams fp = bsqpt::testing::reference_params(0.0);
  for (const CMat &rho : {projector(basis_ket(4, 0)), projector(basis_ket(4, 1)),
                          projector(basis_ket(4, 3))}) {
    const auto curve = hom_dip(fp, grid, 83.0, 0.72, rho);
    for (std::size_t i = 0; i < curve.size(); ++i) {
      EXPECT_NEAR(curve[i].rate, curve[curve.size() - 1 - i].rate, 1e-14);
      EXPECT_GE(curve[i].rate, curve[30].rate - 1e-14);
    }
  }
}
