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

#ifndef BSQPT_FITDECOHERE_HPP
#define BSQPT_FITDECOHERE_HPP

#include <cstdint>
#include <numbers>
#include <vector>

#include "bsqpt/bases.hpp"
#include "bsqpt/bsfilter.hpp"

namespace bsqpt {

struct Interval {
  double lo;
  double hi;
  bool contains(double x) const { return x >= lo && x <= hi; }
};

struct FitConfig {
  int multistart = 16;
  int max_iterations = 5000;
  /// Simplex size (in the internal coordinates) at which a start stops.
  double convergence_tol = 1e-10;
  std::uint64_t seed = 1;
  /// Starts evaluated concurrently; results do not depend on this.
  int threads = 1;

  Interval p_bounds{0.0, 0.5};
  Interval theta_bounds{-std::numbers::pi, std::numbers::pi};
  Interval ratio_bounds{1e-3, 1e3};
  Interval scale_bounds{1e-300, 1e300};
};

struct FitStart {
  FilterParams start;
  double start_residual;
  FilterParams end;
  double end_residual;
  bool converged;
};

struct FitResult {
  FilterParams params;
  double residual = 0.0;
  double fidelity = 0.0;
  long n_evaluations = 0;
  bool converged = false;
  std::vector<FitStart> starts;
};

/// choi_from_kraus(kraus_pair(fp)) expressed in `kind`.
ProcessMatrix model_chi(const FilterParams &fp, BasisKind kind);

/// Frobenius distance between model_chi(fp) and chi_meas in chi_meas's basis.
double residual(const FilterParams &fp, const ProcessMatrix &chi_meas);

/// Least-squares fit of the two-Kraus filter model.
///
/// Each start runs Nelder-Mead over (p, log R/T, theta1, theta2) mapped
/// smoothly into the configured box, so every evaluated candidate is in
/// bounds. The scale enters linearly and is solved in closed form at each
/// evaluation. Among starts with equal residual the smallest |theta|, then
/// the smallest p, wins. Throws std::invalid_argument if chi_meas is not
/// Hermitian or not 16x16.
FitResult fit(const ProcessMatrix &chi_meas, const FitConfig &cfg = {});

}  // namespace bsqpt

#endif  // BSQPT_FITDECOHERE_HPP
