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

#include "bsqpt/fitdecohere.hpp"

#include <gsl/gsl_errno.h>
#include <gsl/gsl_multimin.h>

#include <algorithm>
#include <array>
#include <cmath>
#include <future>
#include <memory>
#include <random>
#include <stdexcept>

#include "bsqpt/channel.hpp"

namespace bsqpt {

ProcessMatrix model_chi(const FilterParams &fp, BasisKind kind) {
  return change_basis(choi_from_kraus(kraus_pair(fp)), kind);
}

double residual(const FilterParams &fp, const ProcessMatrix &chi_meas) {
  return frobenius_distance(model_chi(fp, chi_meas.basis).m, chi_meas.m);
}

namespace {

constexpr int kDim = 4;  // p, log ratio, theta1, theta2

// Smooth bijection-ish map from R onto [lo, hi].
double to_box(double x, const Interval &b) { return b.lo + (b.hi - b.lo) * 0.5 * (1.0 + std::sin(x)); }

double from_box(double v, const Interval &b) {
  const double t = std::clamp(2.0 * (v - b.lo) / (b.hi - b.lo) - 1.0, -1.0, 1.0);
  return std::asin(t);
}

class Objective {
 public:
  Objective(const CMat &target_s, const FitConfig &cfg)
      : target_(target_s), cfg_(cfg),
        log_ratio_{std::log(cfg.ratio_bounds.lo), std::log(cfg.ratio_bounds.hi)} {}

  // Parameters at scale 1 for an internal coordinate vector.
  FilterParams shape(const double *x) const {
    const double ratio = std::exp(to_box(x[1], log_ratio_));
    return FilterParams::from_ratio(ratio, to_box(x[2], cfg_.theta_bounds),
                                    to_box(x[3], cfg_.theta_bounds), to_box(x[0], cfg_.p_bounds),
                                    1.0);
  }

  std::array<double, kDim> internal(const FilterParams &fp) const {
    return {from_box(fp.p, cfg_.p_bounds), from_box(std::log(fp.ratio_rt()), log_ratio_),
            from_box(fp.theta1, cfg_.theta_bounds), from_box(fp.theta2, cfg_.theta_bounds)};
  }

  // Best scale for the given shape and the squared residual at that scale.
  std::pair<double, double> solve(const FilterParams &shape_fp) const {
    ++evaluations_;
    const CMat m = choi_from_kraus(kraus_pair(shape_fp)).m;
    const double mm = m.squaredNorm();
    double s = mm > 0.0 ? hs_inner(m, target_).real() / mm : cfg_.scale_bounds.lo;
    s = std::clamp(s, cfg_.scale_bounds.lo, cfg_.scale_bounds.hi);
    return {s, (s * m - target_).squaredNorm()};
  }

  FilterParams full(const double *x) const {
    FilterParams fp = shape(x);
    fp.scale = solve(fp).first;
    return fp;
  }

  double operator()(const double *x) const { return solve(shape(x)).second; }

  long evaluations() const { return evaluations_; }

 private:
  const CMat &target_;
  const FitConfig &cfg_;
  Interval log_ratio_;
  mutable long evaluations_ = 0;
};

double gsl_objective(const gsl_vector *x, void *params) {
  const auto *obj = static_cast<const Objective *>(params);
  return (*obj)(gsl_vector_const_ptr(x, 0));
}

struct VectorDeleter {
  void operator()(gsl_vector *v) const { gsl_vector_free(v); }
};
struct MinimizerDeleter {
  void operator()(gsl_multimin_fminimizer *m) const { gsl_multimin_fminimizer_free(m); }
};

// One Nelder-Mead descent. Returns whether the simplex shrank below tol.
bool descend(const Objective &obj, std::array<double, kDim> &x, double step, int max_iter,
             double tol) {
  gsl_multimin_function fn{&gsl_objective, kDim, const_cast<Objective *>(&obj)};
  std::unique_ptr<gsl_vector, VectorDeleter> start(gsl_vector_alloc(kDim));
  std::unique_ptr<gsl_vector, VectorDeleter> steps(gsl_vector_alloc(kDim));
  for (int i = 0; i < kDim; ++i) gsl_vector_set(start.get(), i, x[i]);
  gsl_vector_set_all(steps.get(), step);
  std::unique_ptr<gsl_multimin_fminimizer, MinimizerDeleter> nm(
      gsl_multimin_fminimizer_alloc(gsl_multimin_fminimizer_nmsimplex2, kDim));
  gsl_multimin_fminimizer_set(nm.get(), &fn, start.get(), steps.get());

  bool converged = false;
  for (int it = 0; it < max_iter; ++it) {
    if (gsl_multimin_fminimizer_iterate(nm.get()) != GSL_SUCCESS) break;
    if (gsl_multimin_test_size(gsl_multimin_fminimizer_size(nm.get()), tol) == GSL_SUCCESS) {
      converged = true;
      break;
    }
  }
  const gsl_vector *best = gsl_multimin_fminimizer_x(nm.get());
  for (int i = 0; i < kDim; ++i) x[i] = gsl_vector_get(best, i);
  return converged;
}

struct StartOutcome {
  FitStart record;
  long evaluations;
};

StartOutcome run_start(const CMat &target_s, const FitConfig &cfg, const FilterParams &start_fp) {
  Objective obj(target_s, cfg);
  auto x = obj.internal(start_fp);
  const FilterParams start_full = obj.full(x.data());
  const double start_res = std::sqrt(obj(x.data()));

  bool converged = descend(obj, x, 0.3, cfg.max_iterations, cfg.convergence_tol);
  // A fresh simplex around the incumbent guards against premature collapse.
  converged = descend(obj, x, 0.01, cfg.max_iterations, cfg.convergence_tol) && converged;

  FilterParams end = obj.full(x.data());
  const double end_res = std::sqrt(obj(x.data()));
  return {{start_full, start_res, end, end_res, converged}, obj.evaluations()};
}

}  // namespace

FitResult fit(const ProcessMatrix &chi_meas, const FitConfig &cfg) {
  if (chi_meas.m.rows() != 16 || chi_meas.m.cols() != 16) {
    throw std::invalid_argument("fit: expected a 16x16 process matrix");
  }
  const double norm = chi_meas.m.norm();
  if (!std::isfinite(norm) || !is_hermitian(chi_meas.m, kDefaultTol * std::max(1.0, norm))) {
    throw std::invalid_argument("fit: measured process matrix is not Hermitian");
  }
  if (cfg.multistart < 1) throw std::invalid_argument("fit: multistart must be >= 1");
  if (!(cfg.ratio_bounds.lo > 0.0) || !(cfg.ratio_bounds.hi > cfg.ratio_bounds.lo)) {
    throw std::invalid_argument("fit: ratio bounds must satisfy 0 < lo < hi");
  }
  if (cfg.p_bounds.lo < 0.0 || cfg.p_bounds.hi > 0.5 || cfg.p_bounds.hi < cfg.p_bounds.lo) {
    throw std::invalid_argument("fit: p bounds must lie within [0, 1/2]");
  }

  static const gsl_error_handler_t *previous = gsl_set_error_handler_off();
  (void)previous;

  const CMat target = change_basis(chi_meas, BasisKind::kStandard).m;

  std::mt19937_64 rng(cfg.seed);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  // Starting ratios are drawn log-uniformly from the bounds intersected with
  // [0.1, 10].
  double start_log_lo = std::log(std::max(cfg.ratio_bounds.lo, 0.1));
  double start_log_hi = std::log(std::min(cfg.ratio_bounds.hi, 10.0));
  if (!(start_log_hi > start_log_lo)) {
    start_log_lo = std::log(cfg.ratio_bounds.lo);
    start_log_hi = std::log(cfg.ratio_bounds.hi);
  }
  std::vector<FilterParams> starts;
  starts.reserve(static_cast<std::size_t>(cfg.multistart));
  for (int i = 0; i < cfg.multistart; ++i) {
    const double ratio = std::exp(start_log_lo + unif(rng) * (start_log_hi - start_log_lo));
    const double th1 = cfg.theta_bounds.lo + unif(rng) * (cfg.theta_bounds.hi - cfg.theta_bounds.lo);
    const double th2 = cfg.theta_bounds.lo + unif(rng) * (cfg.theta_bounds.hi - cfg.theta_bounds.lo);
    const double p = cfg.p_bounds.lo + unif(rng) * (cfg.p_bounds.hi - cfg.p_bounds.lo);
    starts.push_back(FilterParams::from_ratio(ratio, th1, th2, p, 1.0));
  }

  std::vector<StartOutcome> outcomes(starts.size());
  if (cfg.threads > 1) {
    std::vector<std::future<StartOutcome>> pending;
    std::size_t next = 0;
    while (next < starts.size()) {
      pending.clear();
      const std::size_t batch_end =
          std::min(starts.size(), next + static_cast<std::size_t>(cfg.threads));
      for (std::size_t i = next; i < batch_end; ++i) {
        pending.push_back(std::async(std::launch::async, run_start, std::cref(target),
                                     std::cref(cfg), starts[i]));
      }
      for (std::size_t i = next; i < batch_end; ++i) outcomes[i] = pending[i - next].get();
      next = batch_end;
    }
  } else {
    for (std::size_t i = 0; i < starts.size(); ++i) outcomes[i] = run_start(target, cfg, starts[i]);
  }

  FitResult result;
  double best = outcomes.front().record.end_residual;
  for (const auto &o : outcomes) {
    best = std::min(best, o.record.end_residual);
    result.n_evaluations += o.evaluations;
    result.starts.push_back(o.record);
  }
  const double tie = best * 1e-6 + 1e-12 * std::max(norm, 1e-300);
  const FitStart *chosen = nullptr;
  for (const auto &s : result.starts) {
    if (s.end_residual > best + tie) continue;
    if (chosen == nullptr) {
      chosen = &s;
      continue;
    }
    const double a = std::hypot(s.end.theta1, s.end.theta2);
    const double b = std::hypot(chosen->end.theta1, chosen->end.theta2);
    if (a < b - 1e-12 || (std::abs(a - b) <= 1e-12 && s.end.p < chosen->end.p)) chosen = &s;
  }
  result.params = chosen->end;
  result.residual = residual(result.params, chi_meas);
  result.converged = std::any_of(result.starts.begin(), result.starts.end(),
                                 [](const FitStart &s) { return s.converged; });

  const CMat model = model_chi(result.params, BasisKind::kStandard).m;
  const CMat meas_psd = project_to_psd(target);
  if (meas_psd.trace().real() > 0.0 && model.trace().real() > 0.0) {
    result.fidelity = fidelity(model, meas_psd);
  }
  return result;
}

}  // namespace bsqpt
