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

#ifndef BSQPT_IO_HPP
#define BSQPT_IO_HPP

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "bsqpt/bases.hpp"
#include "bsqpt/bsfilter.hpp"
#include "bsqpt/tomography.hpp"

namespace bsqpt::io {

/// Malformed or semantically invalid input (CLI exit code 2).
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Unreadable or unwritable file (CLI exit code 3).
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string &path);
void write_file(const std::string &path, const std::string &contents);

// Matrix files: {"dim": n, "basis": "S"|"B"|"C"|"F"|"state", "re": [[...]], "im": [[...]]}

struct MatrixFile {
  int dim = 0;
  std::string basis;
  CMat m;
};

std::string format_matrix(const MatrixFile &mf);
MatrixFile parse_matrix(const std::string &text);

std::string format_process_matrix(const ProcessMatrix &chi);
ProcessMatrix parse_process_matrix(const std::string &text);
std::string format_state(const DensityMatrix &rho);
DensityMatrix parse_state(const std::string &text);

// Count files: CSV "input_index,projector_index,count", 256 rows, '#' comments.

std::string format_counts(const CountTable &ct, const std::vector<std::string> &comments = {});
CountTable parse_counts(const std::string &text);

// Parameter files.

struct TemporalConfig {
  double tau_fs;
  double tau_c_fs;
  double mu;
};

struct ParamsSpec {
  FilterParams params;
  std::optional<TemporalConfig> temporal;
  /// Human-readable notes on derived quantities.
  std::vector<std::string> derived;
};

/// Accepts T and R, or ratio_RT; theta1/theta2 (or *_rad aliases); p, or
/// tau_fs + tau_c_fs + mu; optional scale (default 1). Unknown keys are
/// ignored. Throws InputError.
ParamsSpec parse_params(const std::string &text);
std::string format_params(const FilterParams &fp);

/// 17 significant digits; round-trips any finite double.
std::string format_double(double x);

}  // namespace bsqpt::io

#endif  // BSQPT_IO_HPP
