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

#ifndef BSQPT_BSFILTER_HPP
#define BSQPT_BSFILTER_HPP

#include <span>
#include <utility>
#include <vector>

#include "bsqpt/channel.hpp"
#include "bsqpt/quantumcore.hpp"

namespace bsqpt {

// Post-selected beamsplitter filter model.
//
// The coincidence channel is the mixture
//
//   E(rho) = (1 - p) P- rho P-^dagger + p P+ rho P+^dagger
//   P(-/+)  = T I  -/+  R U3(theta1, theta2) U_S
//
// with T, R the intensity transmission/reflection coefficients and p in
// [0, 1/2] the degree of polarization-temporal decoherence. Qubit 0 is the
// photon entering port b and leaving port d; qubit 1 enters a and leaves c.
// Polarization H <-> |0>, V <-> |1>.

struct FilterParams {
  double T = 0.5;
  double R = 0.5;
  double theta1 = 0.0;
  double theta2 = 0.0;
  double p = 0.0;
  /// Linear rate factor multiplying the whole map.
  double scale = 1.0;

  /// T = 1/(1+ratio), R = ratio/(1+ratio).
  static FilterParams from_ratio(double ratio_rt, double theta1, double theta2,
                                 double p, double scale = 1.0);
  double ratio_rt() const { return R / T; }
  /// Throws std::invalid_argument when p is outside [0, 1/2], T <= 0, R < 0,
  /// scale <= 0 or any field is not finite.
  void validate() const;
};

struct BSOptics {
  double T = 0.5;
  double R = 0.5;
  double gamma = 0.0;  // reflection phase of the p (H) component, before the extra pi
  double delta = 0.0;  // reflection phase of the s (V) component

  static BSOptics from_ratio(double ratio_rt, double gamma, double delta);
  void validate() const;
};

struct TemporalState {
  /// Overlap <phi_a|phi_b> of the two single-photon wavepackets.
  cplx s{1.0, 0.0};
  double tau_fs = 0.0;
  double tau_c_fs = 0.0;
  double mu = 1.0;
};

/// e^{i theta1 sigma3/2} sigma3 (x) e^{-i theta2 sigma3/2} sigma3
CMat u3(double theta1, double theta2);

/// Unweighted, unscaled pair (P-, P+).
std::pair<CMat, CMat> filter_operators(double T, double R, double theta1, double theta2);

/// {(1-p, P-), (p, P+)} with both operators multiplied by sqrt(scale).
KrausSet kraus_pair(const FilterParams &fp);

/// Mode transfer matrix of the beamsplitter acting on annihilation operators,
/// out = M in, with inputs ordered (aH, aV, bH, bV) and outputs (cH, cV, dH, dV).
CMat beamsplitter_mode_matrix(const BSOptics &bs);

/// Coincidence operators split by path: both photons transmitted, and both
/// reflected. The polarization map on coincidence is their sum.
struct CoincidenceOperators {
  CMat transmitted;
  CMat reflected;
};

CoincidenceOperators coincidence_operators(const BSOptics &bs);

/// Jones matrix picked up by a single photon reflected from port a to d.
CMat reflection_jones(const BSOptics &bs);

/// Kraus pair derived from the field-operator relations; P- = t-t + r-r,
/// P+ = t-t - r-r. Equivalent to kraus_pair with theta1 = theta2 = delta - gamma.
KrausSet kraus_pair_from_optics(const BSOptics &bs, double p, double scale = 1.0);

struct Decoherence {
  TemporalState state;
  double p;
};

/// Gaussian wavepacket-overlap model |s|^2 = mu exp(-tau^2 / (2 tau_c^2)),
/// p = (1 - |s|^2) / 2. Throws std::invalid_argument when tau_c <= 0 or mu is
/// outside [0, 1].
Decoherence decoherence_from_delay(double tau_fs, double tau_c_fs, double mu);

/// Coherence time for which decoherence_from_delay(tau, tau_c, mu).p == p.
double calibrate_coherence_time(double tau_fs, double p, double mu);

/// Explicit polarization (x) temporal evolution with
/// P^PT = T I (x) I - R U3 U_S (x) U_S^T, followed by a partial trace over
/// the temporal factor. fp.p is ignored. Throws std::invalid_argument when
/// |s| > 1.
DensityMatrix apply_pt_model(const DensityMatrix &rho, cplx s, const FilterParams &fp);

struct DipPoint {
  double tau_fs;
  double rate;
};

/// Coincidence rate scale * Tr E_{p(tau)}(rho) over the delay grid.
std::vector<DipPoint> hom_dip(const FilterParams &fp, std::span<const double> tau_grid_fs,
                              double tau_c_fs, double mu, const DensityMatrix &rho);

/// (max - min) / max over a curve.
double dip_visibility(std::span<const DipPoint> curve);

/// 2 T R mu / (T^2 + R^2), the |HH> dip visibility of the model at theta1 = theta2.
double hom_visibility_closed_form(double T, double R, double mu);

/// Calibrated defaults reproducing p = 0.14, 0.325, 0.5 at 0, 100, 350 fs.
inline constexpr double kDefaultModeMatch = 0.72;
double default_coherence_time_fs();

}  // namespace bsqpt

#endif  // BSQPT_BSFILTER_HPP
