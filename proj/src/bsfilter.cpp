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

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace bsqpt {

namespace {

constexpr cplx kI{0.0, 1.0};

bool finite(double x) { return std::isfinite(x); }

// Mode indices in beamsplitter_mode_matrix.
constexpr int in_a(int pol) { return pol; }
constexpr int in_b(int pol) { return 2 + pol; }
constexpr int out_c(int pol) { return pol; }
constexpr int out_d(int pol) { return 2 + pol; }

}  // namespace

FilterParams FilterParams::from_ratio(double ratio_rt, double theta1, double theta2,
                                      double p, double scale) {
  if (!(ratio_rt >= 0.0) || !finite(ratio_rt)) {
    throw std::invalid_argument("FilterParams: ratio_RT must be finite and >= 0");
  }
  FilterParams fp;
  fp.T = 1.0 / (1.0 + ratio_rt);
  fp.R = ratio_rt / (1.0 + ratio_rt);
  fp.theta1 = theta1;
  fp.theta2 = theta2;
  fp.p = p;
  fp.scale = scale;
  return fp;
}

void FilterParams::validate() const {
  if (!finite(T) || !finite(R) || !finite(theta1) || !finite(theta2) || !finite(p) ||
      !finite(scale)) {
    throw std::invalid_argument("FilterParams: non-finite field");
  }
  if (!(T > 0.0)) throw std::invalid_argument("FilterParams: T must be > 0");
  if (!(R >= 0.0)) throw std::invalid_argument("FilterParams: R must be >= 0");
  if (p < 0.0 || p > 0.5) throw std::invalid_argument("FilterParams: p must lie in [0, 1/2]");
  if (!(scale > 0.0)) throw std::invalid_argument("FilterParams: scale must be > 0");
}

BSOptics BSOptics::from_ratio(double ratio_rt, double gamma, double delta) {
  const FilterParams fp = FilterParams::from_ratio(ratio_rt, 0.0, 0.0, 0.0);
  return {fp.T, fp.R, gamma, delta};
}

void BSOptics::validate() const {
  if (!finite(T) || !finite(R) || !finite(gamma) || !finite(delta)) {
    throw std::invalid_argument("BSOptics: non-finite field");
  }
  if (T < 0.0 || R < 0.0 || std::abs(T + R - 1.0) > 1e-12) {
    throw std::invalid_argument("BSOptics: require T, R >= 0 and T + R = 1");
  }
}

CMat u3(double theta1, double theta2) {
  CMat u = CMat::Zero(4, 4);
  u(0, 0) = std::exp(kI * (theta1 - theta2) / 2.0);
  u(1, 1) = -std::exp(kI * (theta1 + theta2) / 2.0);
  u(2, 2) = -std::exp(-kI * (theta1 + theta2) / 2.0);
  u(3, 3) = std::exp(-kI * (theta1 - theta2) / 2.0);
  return u;
}

std::pair<CMat, CMat> filter_operators(double T, double R, double theta1, double theta2) {
  const CMat id = CMat::Identity(4, 4);
  const CMat reflected = R * u3(theta1, theta2) * swap_operator();
  return {T * id - reflected, T * id + reflected};
}

KrausSet kraus_pair(const FilterParams &fp) {
  fp.validate();
  auto [minus, plus] = filter_operators(fp.T, fp.R, fp.theta1, fp.theta2);
  const double amp = std::sqrt(fp.scale);
  KrausSet ks;
  ks.items.push_back({1.0 - fp.p, amp * minus});
  ks.items.push_back({fp.p, amp * plus});
  ks.physical = fp.scale <= 1.0 && std::abs(fp.T + fp.R - 1.0) <= 1e-12;
  return ks;
}

CMat beamsplitter_mode_matrix(const BSOptics &bs) {
  bs.validate();
  const double t = std::sqrt(bs.T);
  const double r = std::sqrt(bs.R);
  // The p component picks up an extra pi on reflection.
  const double phase[2] = {bs.gamma + std::numbers::pi, bs.delta};
  CMat m = CMat::Zero(4, 4);
  for (int pol = 0; pol < 2; ++pol) {
    m(out_c(pol), in_a(pol)) = t;
    m(out_c(pol), in_b(pol)) = kI * std::exp(kI * phase[pol]) * r;
    m(out_d(pol), in_a(pol)) = kI * std::exp(-kI * phase[pol]) * r;
    m(out_d(pol), in_b(pol)) = t;
  }
  return m;
}

CoincidenceOperators coincidence_operators(const BSOptics &bs) {
  const CMat m = beamsplitter_mode_matrix(bs);
  CoincidenceOperators ops{CMat::Zero(4, 4), CMat::Zero(4, 4)};
  // Input |x, y>: photon in b with polarization x, photon in a with y.
  // Output |u, v>: photon in d with polarization u, photon in c with v.
  for (int x = 0; x < 2; ++x) {
    for (int y = 0; y < 2; ++y) {
      for (int u = 0; u < 2; ++u) {
        for (int v = 0; v < 2; ++v) {
          const int row = 2 * u + v;
          const int col = 2 * x + y;
          ops.transmitted(row, col) = m(out_d(u), in_b(x)) * m(out_c(v), in_a(y));
          ops.reflected(row, col) = m(out_c(v), in_b(x)) * m(out_d(u), in_a(y));
        }
      }
    }
  }
  return ops;
}

CMat reflection_jones(const BSOptics &bs) {
  const CMat m = beamsplitter_mode_matrix(bs);
  CMat j = CMat::Zero(2, 2);
  for (int pol = 0; pol < 2; ++pol) j(pol, pol) = m(out_d(pol), in_a(pol));
  return j;
}

KrausSet kraus_pair_from_optics(const BSOptics &bs, double p, double scale) {
  if (p < 0.0 || p > 0.5) throw std::invalid_argument("kraus_pair_from_optics: p must lie in [0, 1/2]");
  if (!(scale > 0.0)) throw std::invalid_argument("kraus_pair_from_optics: scale must be > 0");
  const auto ops = coincidence_operators(bs);
  const double amp = std::sqrt(scale);
  KrausSet ks;
  ks.items.push_back({1.0 - p, amp * (ops.transmitted + ops.reflected)});
  ks.items.push_back({p, amp * (ops.transmitted - ops.reflected)});
  ks.physical = scale <= 1.0;
  return ks;
}

Decoherence decoherence_from_delay(double tau_fs, double tau_c_fs, double mu) {
  if (!(tau_c_fs > 0.0) || !finite(tau_c_fs)) {
    throw std::invalid_argument("decoherence_from_delay: tau_c must be > 0");
  }
  if (!(mu >= 0.0 && mu <= 1.0)) {
    throw std::invalid_argument("decoherence_from_delay: mu must lie in [0, 1]");
  }
  if (!finite(tau_fs)) throw std::invalid_argument("decoherence_from_delay: tau must be finite");
  const double overlap2 = mu * std::exp(-tau_fs * tau_fs / (2.0 * tau_c_fs * tau_c_fs));
  Decoherence d;
  d.state = {cplx(std::sqrt(overlap2), 0.0), tau_fs, tau_c_fs, mu};
  d.p = 0.5 * (1.0 - overlap2);
  return d;
}

double calibrate_coherence_time(double tau_fs, double p, double mu) {
  const double ratio = (1.0 - 2.0 * p) / mu;
  if (!(tau_fs != 0.0) || !(ratio > 0.0 && ratio < 1.0)) {
    throw std::invalid_argument(
        "calibrate_coherence_time: need tau != 0 and (1-2p)/mu in (0, 1)");
  }
  return std::abs(tau_fs) / std::sqrt(-2.0 * std::log(ratio));
}

double default_coherence_time_fs() {
  static const double tau_c = calibrate_coherence_time(100.0, 0.325, kDefaultModeMatch);
  return tau_c;
}

DensityMatrix apply_pt_model(const DensityMatrix &rho, cplx s, const FilterParams &fp) {
  if (std::abs(s) > 1.0 + 1e-15) {
    throw std::invalid_argument("apply_pt_model: |s| must not exceed 1");
  }
  if (rho.rows() != 4 || rho.cols() != 4) {
    throw std::invalid_argument("apply_pt_model: expected a two-qubit state");
  }
  // Per-photon temporal space spanned by the two wavepackets, orthonormalized:
  // phi_a = e0, phi_b = s e0 + sqrt(1-|s|^2) e1.
  Ket phi_a = Ket::Zero(2);
  phi_a(0) = 1.0;
  Ket phi_b = Ket::Zero(2);
  phi_b(0) = s;
  phi_b(1) = std::sqrt(std::max(0.0, 1.0 - std::norm(s)));
  const CMat omega = projector(kron(phi_a, phi_b));

  const CMat pol_reflect = u3(fp.theta1, fp.theta2) * swap_operator();
  const CMat full = fp.T * CMat::Identity(16, 16) - fp.R * kron(pol_reflect, swap_operator());
  const CMat out = full * kron(rho, omega) * full.adjoint();
  return fp.scale * partial_trace(out, 4, 4, 0);
}

std::vector<DipPoint> hom_dip(const FilterParams &fp, std::span<const double> tau_grid_fs,
                              double tau_c_fs, double mu, const DensityMatrix &rho) {
  std::vector<DipPoint> curve;
  curve.reserve(tau_grid_fs.size());
  for (double tau : tau_grid_fs) {
    FilterParams at = fp;
    at.p = decoherence_from_delay(tau, tau_c_fs, mu).p;
    curve.push_back({tau, apply_kraus(kraus_pair(at), rho).trace().real()});
  }
  return curve;
}

double dip_visibility(std::span<const DipPoint> curve) {
  if (curve.empty()) throw std::invalid_argument("dip_visibility: empty curve");
  double lo = curve.front().rate, hi = curve.front().rate;
  for (const auto &pt : curve) {
    lo = std::min(lo, pt.rate);
    hi = std::max(hi, pt.rate);
  }
  if (hi <= 0.0) return 0.0;
  return (hi - lo) / hi;
}

double hom_visibility_closed_form(double T, double R, double mu) {
  return 2.0 * T * R * mu / (T * T + R * R);
}

}  // namespace bsqpt
