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

#include "bsqpt/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <functional>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "bsqpt/bases.hpp"
#include "bsqpt/bsfilter.hpp"
#include "bsqpt/channel.hpp"
#include "bsqpt/fitdecohere.hpp"
#include "bsqpt/io.hpp"
#include "bsqpt/tomography.hpp"

namespace bsqpt::cli {

namespace {

// Relative residual above which the fitted model is reported as unable to
// represent the measured process.
constexpr double kMismatchThreshold = 0.05;
// Distance in log(R/T) below which a fitted ratio counts as sitting on its bound.
constexpr double kBoundMargin = 1e-2;

struct Context {
  std::ostream &out;
  std::ostream &err;
};

BasisKind require_basis(const std::string &tag) {
  const auto kind = parse_basis_tag(tag);
  if (!kind) throw io::InputError("unknown basis '" + tag + "' (expected S, B, C or F)");
  return *kind;
}

io::ParamsSpec load_params(const std::string &path, Context &ctx) {
  io::ParamsSpec spec = io::parse_params(io::read_file(path));
  for (const auto &note : spec.derived) ctx.err << "note: " << note << "\n";
  return spec;
}

struct SimulateArgs {
  std::string params, counts_out, noise = "none";
  std::uint64_t seed = 0;
  double total_scale = 1e4;
};

int cmd_simulate(const SimulateArgs &a, Context &ctx) {
  const auto spec = load_params(a.params, ctx);
  NoiseModel noise;
  if (a.noise == "poisson") {
    noise = NoiseModel::poisson(a.seed);
  } else if (a.noise != "none") {
    throw io::InputError("unknown noise model '" + a.noise + "'");
  }
  if (!(a.total_scale > 0.0)) throw io::InputError("--total-scale must be > 0");
  const auto ct = simulate_counts(kraus_pair(spec.params), build_input_set(), a.total_scale, noise);
  const auto &fp = spec.params;
  io::write_file(a.counts_out,
                 io::format_counts(ct, {"bsqpt simulate",
                                        "T=" + io::format_double(fp.T) + " R=" + io::format_double(fp.R) +
                                            " theta1=" + io::format_double(fp.theta1) +
                                            " theta2=" + io::format_double(fp.theta2) +
                                            " p=" + io::format_double(fp.p) +
                                            " scale=" + io::format_double(fp.scale)}));
  return kOk;
}

struct ReconstructArgs {
  std::string counts, basis = "S", out;
  bool psd_project = false;
};

int cmd_reconstruct(const ReconstructArgs &a, Context &ctx) {
  const BasisKind kind = require_basis(a.basis);
  const CountTable ct = io::parse_counts(io::read_file(a.counts));
  ProcessMatrix chi = reconstruct_process(ct, build_input_set());
  const auto report = is_psd(chi.m, kDefaultTol * std::max(1.0, chi.m.norm()));
  if (a.psd_project) {
    chi.m = project_to_psd(chi.m);
  } else if (!report.ok()) {
    ctx.err << "note: reconstructed process matrix is not positive semidefinite (min eigenvalue "
            << report.min_eigenvalue << "); use --psd-project to repair\n";
  }
  io::write_file(a.out, io::format_process_matrix(change_basis(chi, kind)));
  return kOk;
}

struct FitArgs {
  std::string chi, out;
  int multistart = 16;
  std::uint64_t seed = 1;
  int threads = 1;
};

int cmd_fit(const FitArgs &a, Context &ctx) {
  const ProcessMatrix chi = io::parse_process_matrix(io::read_file(a.chi));
  if (!is_hermitian(chi.m, kDefaultTol * std::max(1.0, chi.m.norm()))) {
    throw io::InputError("process matrix is not Hermitian");
  }
  if (a.multistart < 1) throw io::InputError("--multistart must be >= 1");
  FitConfig cfg;
  cfg.multistart = a.multistart;
  cfg.seed = a.seed;
  cfg.threads = std::max(1, a.threads);
  const FitResult r = fit(chi, cfg);

  const double norm = chi.m.norm();
  const double relative = norm > 0.0 ? r.residual / norm : r.residual;
  nlohmann::json j = nlohmann::json::parse(io::format_params(r.params));
  nlohmann::json report;
  report["ratio_RT"] = r.params.ratio_rt();
  report["residual"] = r.residual;
  report["relative_residual"] = relative;
  report["fidelity"] = r.fidelity;
  report["n_evaluations"] = r.n_evaluations;
  report["converged"] = r.converged;
  report["multistart"] = cfg.multistart;
  report["seed"] = cfg.seed;
  std::vector<std::string> warnings;
  if (relative > kMismatchThreshold) {
    warnings.push_back("model_mismatch: the two-Kraus filter model cannot represent this process "
                       "(relative residual " + io::format_double(relative) + ")");
  }
  const double log_ratio = std::log(r.params.ratio_rt());
  const bool at_bound = std::abs(log_ratio - std::log(cfg.ratio_bounds.lo)) < kBoundMargin ||
                        std::abs(log_ratio - std::log(cfg.ratio_bounds.hi)) < kBoundMargin;
  if (at_bound) {
    warnings.push_back("model_mismatch: best fit sits on the ratio_RT bound (" +
                       io::format_double(r.params.ratio_rt()) +
                       "); the process is only reached in a degenerate beamsplitter limit");
  }
  if (!r.converged) warnings.push_back("not_converged: no start met the convergence tolerance");
  if (!warnings.empty()) report["warning"] = warnings;
  j["fit"] = report;
  io::write_file(a.out, j.dump(1) + "\n");
  for (const auto &w : warnings) ctx.err << "warning: " << w << "\n";
  return r.converged ? kOk : kNotConverged;
}

struct HomDipArgs {
  std::string params, out, input = "HH";
  double tau_min = 0.0, tau_max = 0.0;
  int steps = 0;
};

int cmd_homdip(const HomDipArgs &a, Context &ctx) {
  if (a.steps < 2) throw io::InputError("--steps must be >= 2");
  if (!(a.tau_max > a.tau_min)) throw io::InputError("--tau-max must exceed --tau-min");
  const auto spec = load_params(a.params, ctx);
  if (!spec.temporal) throw io::InputError("homdip needs tau_fs, tau_c_fs and mu in the params file");
  static const std::vector<std::string> names = {"HH", "HV", "VH", "VV"};
  const auto it = std::find(names.begin(), names.end(), a.input);
  if (it == names.end()) throw io::InputError("--input must be one of HH, HV, VH, VV");
  const DensityMatrix rho = projector(basis_ket(4, static_cast<std::size_t>(it - names.begin())));

  std::vector<double> grid(static_cast<std::size_t>(a.steps));
  for (int i = 0; i < a.steps; ++i) {
    grid[static_cast<std::size_t>(i)] = a.tau_min + (a.tau_max - a.tau_min) * i / (a.steps - 1);
  }
  const auto curve = hom_dip(spec.params, grid, spec.temporal->tau_c_fs, spec.temporal->mu, rho);
  const auto &fp = spec.params;
  std::string csv;
  csv += "# bsqpt homdip input=" + a.input + " tau_c_fs=" + io::format_double(spec.temporal->tau_c_fs) +
         " mu=" + io::format_double(spec.temporal->mu) + "\n";
  csv += "# visibility=" + io::format_double(dip_visibility(curve)) + "\n";
  csv += "# closed_form_visibility=" +
         io::format_double(hom_visibility_closed_form(fp.T, fp.R, spec.temporal->mu)) + "\n";
  csv += "tau_fs,rate\n";
  for (const auto &pt : curve) csv += io::format_double(pt.tau_fs) + "," + io::format_double(pt.rate) + "\n";
  io::write_file(a.out, csv);
  return kOk;
}

struct TransformArgs {
  std::string chi, to, out;
};

int cmd_transform(const TransformArgs &a, Context &) {
  const BasisKind kind = require_basis(a.to);
  const ProcessMatrix chi = io::parse_process_matrix(io::read_file(a.chi));
  io::write_file(a.out, io::format_process_matrix(change_basis(chi, kind)));
  return kOk;
}

struct ChoiArgs {
  std::string params, basis = "S", out;
};

int cmd_choi(const ChoiArgs &a, Context &ctx) {
  const BasisKind kind = require_basis(a.basis);
  const auto spec = load_params(a.params, ctx);
  io::write_file(a.out, io::format_process_matrix(model_chi(spec.params, kind)));
  return kOk;
}

struct ApplyArgs {
  std::string chi, state, out;
};

int cmd_apply(const ApplyArgs &a, Context &) {
  const ProcessMatrix chi = io::parse_process_matrix(io::read_file(a.chi));
  const DensityMatrix rho = io::parse_state(io::read_file(a.state));
  io::write_file(a.out, io::format_state(apply_process_matrix(chi, basis(chi.basis), rho)));
  return kOk;
}

int threads_from_env() {
  if (const char *v = std::getenv("THREADS")) {
    const int n = std::atoi(v);
    if (n > 0) return n;
  }
  return 1;
}

}  // namespace

int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err) {
  Context ctx{out, err};
  CLI::App app{"Process tomography of a post-selected beamsplitter filter", "bsqpt"};
  app.require_subcommand(1);

  SimulateArgs sim;
  auto *s = app.add_subcommand("simulate", "Simulate the 16x16 coincidence count table");
  s->add_option("--params", sim.params, "Filter parameters (JSON)")->required();
  s->add_option("--counts-out", sim.counts_out, "Output CSV")->required();
  s->add_option("--noise", sim.noise, "none or poisson");
  s->add_option("--seed", sim.seed, "Poisson seed");
  s->add_option("--total-scale", sim.total_scale, "Counts per unit rate");

  ReconstructArgs rec;
  auto *r = app.add_subcommand("reconstruct", "Reconstruct the process matrix from counts");
  r->add_option("--counts", rec.counts, "Count table (CSV)")->required();
  r->add_option("--basis", rec.basis, "S, B, C or F");
  r->add_option("--out", rec.out, "Output matrix (JSON)")->required();
  r->add_flag("--psd-project", rec.psd_project, "Clip negative eigenvalues");

  FitArgs fa;
  fa.threads = threads_from_env();
  auto *f = app.add_subcommand("fit", "Fit the decoherence model to a process matrix");
  f->add_option("--chi", fa.chi, "Process matrix (JSON)")->required();
  f->add_option("--out", fa.out, "Output parameters (JSON)")->required();
  f->add_option("--multistart", fa.multistart, "Number of starts");
  f->add_option("--seed", fa.seed, "Start-point seed");
  f->add_option("--threads", fa.threads, "Concurrent starts");

  HomDipArgs hd;
  auto *h = app.add_subcommand("homdip", "Coincidence rate against delay");
  h->add_option("--params", hd.params, "Parameters with tau_c_fs and mu (JSON)")->required();
  h->add_option("--tau-min", hd.tau_min, "fs")->required();
  h->add_option("--tau-max", hd.tau_max, "fs")->required();
  h->add_option("--steps", hd.steps, "Grid points")->required();
  h->add_option("--out", hd.out, "Output CSV")->required();
  h->add_option("--input", hd.input, "HH, HV, VH or VV");

  TransformArgs tr;
  auto *t = app.add_subcommand("transform", "Change the operator basis of a process matrix");
  t->add_option("--chi", tr.chi, "Process matrix (JSON)")->required();
  t->add_option("--to", tr.to, "S, B, C or F")->required();
  t->add_option("--out", tr.out, "Output matrix (JSON)")->required();

  ChoiArgs ch;
  auto *c = app.add_subcommand("choi", "Model process matrix for given parameters");
  c->add_option("--params", ch.params, "Filter parameters (JSON)")->required();
  c->add_option("--basis", ch.basis, "S, B, C or F");
  c->add_option("--out", ch.out, "Output matrix (JSON)")->required();

  ApplyArgs ap;
  auto *a = app.add_subcommand("apply", "Apply a process matrix to a two-qubit state");
  a->add_option("--chi", ap.chi, "Process matrix (JSON)")->required();
  a->add_option("--state", ap.state, "State matrix (JSON)")->required();
  a->add_option("--out", ap.out, "Output state (JSON)")->required();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp &) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError &e) {
    err << "error: " << e.what() << "\n";
    return kInvalidInput;
  }

  const std::vector<std::pair<CLI::App *, std::function<int()>>> table = {
      {s, [&] { return cmd_simulate(sim, ctx); }},
      {r, [&] { return cmd_reconstruct(rec, ctx); }},
      {f, [&] { return cmd_fit(fa, ctx); }},
      {h, [&] { return cmd_homdip(hd, ctx); }},
      {t, [&] { return cmd_transform(tr, ctx); }},
      {c, [&] { return cmd_choi(ch, ctx); }},
      {a, [&] { return cmd_apply(ap, ctx); }},
  };
  try {
    for (const auto &[sub, fn] : table) {
      if (sub->parsed()) return fn();
    }
  } catch (const io::InputError &e) {
    err << "error: " << e.what() << "\n";
    return kInvalidInput;
  } catch (const io::IoError &e) {
    err << "error: " << e.what() << "\n";
    return kIoFailure;
  } catch (const std::invalid_argument &e) {
    err << "error: " << e.what() << "\n";
    return kInvalidInput;
  } catch (const std::domain_error &e) {
    err << "error: " << e.what() << "\n";
    return kInvalidInput;
  }
  err << "error: no subcommand\n";
  return kInvalidInput;
}

}  // namespace bsqpt::cli
