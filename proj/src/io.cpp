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

#include "bsqpt/io.hpp"

#include <array>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace bsqpt::io {

using nlohmann::json;

std::string read_file(const std::string &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path + " for reading");
  std::ostringstream ss;
  ss << in.rdbuf();
  if (in.bad()) throw IoError("failed reading " + path);
  return ss.str();
}

void write_file(const std::string &path, const std::string &contents) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open " + path + " for writing");
  out << contents;
  out.flush();
  if (!out) throw IoError("failed writing " + path);
}

std::string format_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

namespace {

json parse_json(const std::string &text, const char *what) {
  try {
    return json::parse(text);
  } catch (const json::parse_error &e) {
    throw InputError(std::string(what) + ": malformed JSON: " + e.what());
  }
}

double number_at(const json &j, const char *key) {
  const auto it = j.find(key);
  if (it == j.end() || !it->is_number()) {
    throw InputError(std::string("missing or non-numeric key '") + key + "'");
  }
  const double v = it->get<double>();
  if (!std::isfinite(v)) throw InputError(std::string("non-finite value for '") + key + "'");
  return v;
}

std::optional<double> optional_number(const json &j, const char *key, const char *alias = nullptr) {
  const json *found = nullptr;
  if (auto it = j.find(key); it != j.end()) found = &*it;
  if (alias != nullptr) {
    if (auto it = j.find(alias); it != j.end()) {
      if (found != nullptr) {
        throw InputError(std::string("both '") + key + "' and '" + alias + "' given");
      }
      found = &*it;
    }
  }
  if (found == nullptr) return std::nullopt;
  if (!found->is_number()) throw InputError(std::string("non-numeric value for '") + key + "'");
  const double v = found->get<double>();
  if (!std::isfinite(v)) throw InputError(std::string("non-finite value for '") + key + "'");
  return v;
}

}  // namespace

std::string format_matrix(const MatrixFile &mf) {
  json re = json::array();
  json im = json::array();
  for (Eigen::Index r = 0; r < mf.m.rows(); ++r) {
    json rr = json::array();
    json ir = json::array();
    for (Eigen::Index c = 0; c < mf.m.cols(); ++c) {
      rr.push_back(mf.m(r, c).real());
      ir.push_back(mf.m(r, c).imag());
    }
    re.push_back(std::move(rr));
    im.push_back(std::move(ir));
  }
  json j;
  j["dim"] = mf.dim;
  j["basis"] = mf.basis;
  j["re"] = std::move(re);
  j["im"] = std::move(im);
  return j.dump(1) + "\n";
}

MatrixFile parse_matrix(const std::string &text) {
  const json j = parse_json(text, "matrix file");
  if (!j.is_object()) throw InputError("matrix file: expected a JSON object");
  if (!j.contains("dim") || !j["dim"].is_number_integer()) {
    throw InputError("matrix file: missing integer 'dim'");
  }
  if (!j.contains("basis") || !j["basis"].is_string()) {
    throw InputError("matrix file: missing string 'basis'");
  }
  MatrixFile mf;
  mf.dim = j["dim"].get<int>();
  mf.basis = j["basis"].get<std::string>();
  if (mf.dim <= 0 || mf.dim > 64) throw InputError("matrix file: unsupported dim");
  mf.m = CMat::Zero(mf.dim, mf.dim);
  for (const char *part : {"re", "im"}) {
    if (!j.contains(part) || !j[part].is_array() || j[part].size() != static_cast<std::size_t>(mf.dim)) {
      throw InputError(std::string("matrix file: '") + part + "' must have dim rows");
    }
    const bool real = part[0] == 'r';
    for (int r = 0; r < mf.dim; ++r) {
      const json &row = j[part][static_cast<std::size_t>(r)];
      if (!row.is_array() || row.size() != static_cast<std::size_t>(mf.dim)) {
        throw InputError(std::string("matrix file: row ") + std::to_string(r) + " of '" + part +
                         "' must have dim entries");
      }
      for (int c = 0; c < mf.dim; ++c) {
        const json &v = row[static_cast<std::size_t>(c)];
        if (!v.is_number()) throw InputError("matrix file: non-numeric entry");
        const double x = v.get<double>();
        if (real) {
          mf.m(r, c).real(x);
        } else {
          mf.m(r, c).imag(x);
        }
      }
    }
  }
  return mf;
}

std::string format_process_matrix(const ProcessMatrix &chi) {
  return format_matrix({16, std::string(1, basis_tag(chi.basis)), chi.m});
}

ProcessMatrix parse_process_matrix(const std::string &text) {
  const MatrixFile mf = parse_matrix(text);
  if (mf.dim != 16) throw InputError("process matrix file: dim must be 16");
  const auto kind = parse_basis_tag(mf.basis);
  if (!kind) throw InputError("process matrix file: unknown basis tag '" + mf.basis + "'");
  return {*kind, mf.m};
}

std::string format_state(const DensityMatrix &rho) {
  return format_matrix({static_cast<int>(rho.rows()), "state", rho});
}

DensityMatrix parse_state(const std::string &text) {
  const MatrixFile mf = parse_matrix(text);
  if (mf.basis != "state") throw InputError("state file: basis must be \"state\"");
  if (mf.dim != 4) throw InputError("state file: dim must be 4");
  return mf.m;
}

std::string format_counts(const CountTable &ct, const std::vector<std::string> &comments) {
  std::string out;
  for (const auto &c : comments) out += "# " + c + "\n";
  out += "# total_scale=" + format_double(ct.total_scale) + "\n";
  if (ct.noise_seed) out += "# noise=poisson seed=" + std::to_string(*ct.noise_seed) + "\n";
  out += "input_index,projector_index,count\n";
  for (int i = 0; i < 16; ++i) {
    for (int p = 0; p < 16; ++p) {
      out += std::to_string(i) + "," + std::to_string(p) + "," + format_double(ct.counts(i, p)) + "\n";
    }
  }
  return out;
}

namespace {

std::string trim(std::string s) {
  const auto ws = " \t\r\n";
  s.erase(0, s.find_first_not_of(ws));
  const auto end = s.find_last_not_of(ws);
  s.erase(end == std::string::npos ? 0 : end + 1);
  return s;
}

int parse_index(const std::string &field, int line) {
  std::size_t used = 0;
  int v = -1;
  try {
    v = std::stoi(field, &used);
  } catch (const std::exception &) {
    used = 0;
  }
  if (used != field.size() || v < 0 || v > 15) {
    throw InputError("counts line " + std::to_string(line) + ": index '" + field +
                     "' is not an integer in 0..15");
  }
  return v;
}

}  // namespace

CountTable parse_counts(const std::string &text) {
  CountTable ct;
  std::array<bool, 256> seen{};
  std::istringstream in(text);
  std::string raw;
  bool header = false;
  int line = 0;
  int rows = 0;
  while (std::getline(in, raw)) {
    ++line;
    const std::string s = trim(raw);
    if (s.empty()) continue;
    if (s[0] == '#') {
      const auto key = s.find("total_scale=");
      if (key != std::string::npos) {
        try {
          ct.total_scale = std::stod(s.substr(key + 12));
        } catch (const std::exception &) {
          throw InputError("counts line " + std::to_string(line) + ": bad total_scale");
        }
      }
      const auto seed = s.find("noise=poisson seed=");
      if (seed != std::string::npos) {
        try {
          ct.noise_seed = std::stoull(s.substr(seed + 19));
        } catch (const std::exception &) {
          throw InputError("counts line " + std::to_string(line) + ": bad noise seed");
        }
      }
      continue;
    }
    if (!header) {
      if (s != "input_index,projector_index,count") {
        throw InputError("counts: expected header 'input_index,projector_index,count'");
      }
      header = true;
      continue;
    }
    std::array<std::string, 3> fields;
    std::istringstream ls(s);
    int n = 0;
    for (std::string f; std::getline(ls, f, ',');) {
      if (n >= 3) throw InputError("counts line " + std::to_string(line) + ": too many fields");
      fields[static_cast<std::size_t>(n++)] = trim(f);
    }
    if (n != 3) throw InputError("counts line " + std::to_string(line) + ": expected 3 fields");
    const int in_idx = parse_index(fields[0], line);
    const int pr_idx = parse_index(fields[1], line);
    double count = 0.0;
    std::size_t used = 0;
    try {
      count = std::stod(fields[2], &used);
    } catch (const std::exception &) {
      used = 0;
    }
    if (used != fields[2].size() || !std::isfinite(count)) {
      throw InputError("counts line " + std::to_string(line) + ": bad count '" + fields[2] + "'");
    }
    if (count < 0.0) throw InputError("counts line " + std::to_string(line) + ": negative count");
    auto &flag = seen[static_cast<std::size_t>(16 * in_idx + pr_idx)];
    if (flag) {
      throw InputError("counts: duplicate pair (" + fields[0] + "," + fields[1] + ")");
    }
    flag = true;
    ct.counts(in_idx, pr_idx) = count;
    ++rows;
  }
  if (!header) throw InputError("counts: missing header");
  if (rows != 256) {
    throw InputError("counts: expected 256 rows, found " + std::to_string(rows));
  }
  return ct;
}

ParamsSpec parse_params(const std::string &text) {
  const json j = parse_json(text, "params file");
  if (!j.is_object()) throw InputError("params file: expected a JSON object");
  ParamsSpec spec;
  FilterParams &fp = spec.params;

  const bool has_t = j.contains("T");
  const bool has_r = j.contains("R");
  const bool has_ratio = j.contains("ratio_RT");
  if (has_ratio && (has_t || has_r)) {
    throw InputError("params file: give either T and R or ratio_RT, not both");
  }
  if (has_ratio) {
    const double ratio = number_at(j, "ratio_RT");
    if (ratio <= 0.0) throw InputError("params file: ratio_RT must be > 0");
    fp.T = 1.0 / (1.0 + ratio);
    fp.R = ratio / (1.0 + ratio);
    spec.derived.push_back("T=" + format_double(fp.T) + " R=" + format_double(fp.R) +
                           " from ratio_RT=" + format_double(ratio));
  } else if (has_t && has_r) {
    fp.T = number_at(j, "T");
    fp.R = number_at(j, "R");
  } else {
    throw InputError("params file: need T and R, or ratio_RT");
  }

  const auto th1 = optional_number(j, "theta1", "theta1_rad");
  const auto th2 = optional_number(j, "theta2", "theta2_rad");
  if (!th1 || !th2) throw InputError("params file: need theta1 and theta2 (radians)");
  fp.theta1 = *th1;
  fp.theta2 = *th2;

  const bool has_p = j.contains("p");
  const bool has_tau = j.contains("tau_fs") || j.contains("tau_c_fs") || j.contains("mu");
  if (has_p && has_tau) {
    throw InputError("params file: give either p or tau_fs + tau_c_fs + mu, not both");
  }
  if (has_p) {
    fp.p = number_at(j, "p");
  } else if (has_tau) {
    TemporalConfig tc{number_at(j, "tau_fs"), number_at(j, "tau_c_fs"), number_at(j, "mu")};
    try {
      fp.p = decoherence_from_delay(tc.tau_fs, tc.tau_c_fs, tc.mu).p;
    } catch (const std::invalid_argument &e) {
      throw InputError(std::string("params file: ") + e.what());
    }
    spec.temporal = tc;
    spec.derived.push_back("p=" + format_double(fp.p) + " from tau_fs=" + format_double(tc.tau_fs) +
                           " tau_c_fs=" + format_double(tc.tau_c_fs) + " mu=" + format_double(tc.mu));
  } else {
    throw InputError("params file: need p, or tau_fs + tau_c_fs + mu");
  }

  if (auto s = optional_number(j, "scale")) fp.scale = *s;
  try {
    fp.validate();
  } catch (const std::invalid_argument &e) {
    throw InputError(std::string("params file: ") + e.what());
  }
  return spec;
}

std::string format_params(const FilterParams &fp) {
  json j;
  j["T"] = fp.T;
  j["R"] = fp.R;
  j["theta1"] = fp.theta1;
  j["theta2"] = fp.theta2;
  j["p"] = fp.p;
  j["scale"] = fp.scale;
  return j.dump(1) + "\n";
}

}  // namespace bsqpt::io
