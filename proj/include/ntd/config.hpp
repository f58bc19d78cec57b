// Copyright 2026 The NTDescent Authors. All Rights Reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef NTD_CONFIG_HPP
#define NTD_CONFIG_HPP

#include <cstdint>
#include <iosfwd>
#include <limits>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>

namespace ntd {

// Bad command line or configuration (exit code 2).
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Unreadable input or unwritable output (exit code 3).
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Algorithm { Ntd, Polyak };
enum class StopKind { Budget, Gap, Rk };

const char *to_string(Algorithm a);
const char *to_string(StopKind s);

struct ExperimentConfig {
  // lb | mos | qs | eig | uv
  std::string problem = "lb";
  // lb and mos: dimension and number of pieces.
  long dim = 100;
  long m = 10;
  // qs: X is side x rank, planted rank r_star, n measurements (0 = 4 N r_star).
  // eig: side N, top K eigenvalues.
  // side = 0 selects the problem default (qs 60, eig 14).
  long side = 0;
  long rank = 5;
  long r_star = 3;
  long measurements = 0;
  long top = 7;
  std::string matrix_file;  // eig: external data matrix

  Algorithm algo = Algorithm::Ntd;
  std::uint64_t seed = 0;
  // Seed of the problem instance; defaults to `seed`.
  std::optional<std::uint64_t> problem_seed;
  std::int64_t budget = 100000;
  double c0 = 1e-6;
  bool adaptive = false;
  double adaptive_cap = std::numeric_limits<double>::infinity();
  std::optional<double> f_star;
  StopKind stop = StopKind::Budget;
  double stop_tol = 0.0;
  // x0 = init_scale * z with z uniform on the unit sphere.
  double init_scale = 1.0;
  std::string out;

  long side_length() const { return side > 0 ? side : (problem == "eig" ? 14 : 60); }
  std::uint64_t instance_seed() const { return problem_seed.value_or(seed); }
  // Throws UsageError.
  void validate() const;
};

// Sets one key (same names as the CLI flags, without dashes). Throws
// UsageError for unknown keys or unparsable values.
void apply_setting(ExperimentConfig &config, const std::string &key, const std::string &value);

// Flat "key = value" lines; '#' starts a comment. Throws IoError if the
// file cannot be read and UsageError on malformed lines.
std::map<std::string, std::string> read_kv(std::istream &is);
std::map<std::string, std::string> read_kv_file(const std::string &path);

// Default seed: NTD_SEED if set, else 0. Throws UsageError if NTD_SEED is
// not an unsigned integer.
std::uint64_t default_seed();

}  // namespace ntd

#endif  // NTD_CONFIG_HPP
