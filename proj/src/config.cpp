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

#include "ntd/config.hpp"

#include <charconv>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <istream>
#include <limits>
#include <type_traits>

namespace ntd {

namespace {

std::string trim(const std::string &s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

template <typename T>
T parse_number(const std::string &key, const std::string &value) {
  T out{};
  const char *first = value.data();
  const char *last = first + value.size();
  const auto [ptr, ec] = std::from_chars(first, last, out);
  if (ec == std::errc() && ptr == last) return out;
  if constexpr (std::is_integral_v<T>) {
    // Counts such as budgets may be written as 3e5.
    double d = 0.0;
    const auto [dp, dec] = std::from_chars(first, last, d);
    if (dec == std::errc() && dp == last && d == std::floor(d) &&
        d >= static_cast<double>(std::numeric_limits<T>::min()) &&
        d <= static_cast<double>(std::numeric_limits<T>::max()) / 2)
      return static_cast<T>(d);
  }
  throw UsageError("invalid value for " + key + ": '" + value + "'");
}

bool parse_bool(const std::string &key, const std::string &value) {
  if (value == "1" || value == "true" || value == "yes" || value == "on") return true;
  if (value == "0" || value == "false" || value == "no" || value == "off") return false;
  throw UsageError("invalid boolean for " + key + ": '" + value + "'");
}

}  // namespace

const char *to_string(Algorithm a) { return a == Algorithm::Ntd ? "ntd" : "polyak"; }

const char *to_string(StopKind s) {
  switch (s) {
    case StopKind::Budget:
      return "budget";
    case StopKind::Gap:
      return "gap";
    case StopKind::Rk:
      return "rk";
  }
  return "?";
}

void ExperimentConfig::validate() const {
  if (problem != "lb" && problem != "mos" && problem != "qs" && problem != "eig" &&
      problem != "uv")
    throw UsageError("unknown problem '" + problem + "' (expected lb, mos, qs, eig or uv)");
  if (budget < 1) throw UsageError("budget must be >= 1");
  if (!(c0 > 0.0)) throw UsageError("c0 must be positive");
  if (!(init_scale > 0.0)) throw UsageError("init-scale must be positive");
  if (!(adaptive_cap > 0.0)) throw UsageError("adaptive-cap must be positive");
  if ((problem == "lb" || problem == "mos") && (dim < 1 || m < 1))
    throw UsageError("dim and m must be >= 1");
  if (problem == "lb" && m > dim) throw UsageError("lb needs m <= dim");
  if (problem == "mos" && m > dim + 1) throw UsageError("mos needs m <= dim + 1");
  if (problem == "qs" && !(1 <= r_star && r_star <= rank && rank <= side_length()))
    throw UsageError("qs needs 1 <= r-star <= rank <= side");
  if (problem == "qs" && measurements < 0) throw UsageError("measurements must be >= 0");
  if (side < 0) throw UsageError("side must be >= 0");
  if (problem == "eig" && top < 1) throw UsageError("eig needs top >= 1");
  if (stop != StopKind::Budget && !(stop_tol > 0.0))
    throw UsageError("stop-tol must be positive for the gap and rk stop rules");
  if (stop == StopKind::Gap && !f_star && problem == "eig")
    throw UsageError("the gap stop rule on eig needs --fstar");
  if (algo == Algorithm::Polyak) {
    if (problem == "eig" && !f_star)
      throw UsageError(
          "polyak on eig needs --fstar: inf f is unknown, estimate it as the best value over "
          "several ntd runs and pass it explicitly");
    if (stop == StopKind::Rk) throw UsageError("the rk stop rule applies to ntd only");
  }
}

void apply_setting(ExperimentConfig &c, const std::string &key, const std::string &value) {
  if (key == "problem") {
    c.problem = value;
  } else if (key == "dim") {
    c.dim = parse_number<long>(key, value);
  } else if (key == "m") {
    c.m = parse_number<long>(key, value);
  } else if (key == "side" || key == "N") {
    c.side = parse_number<long>(key, value);
  } else if (key == "rank" || key == "r") {
    c.rank = parse_number<long>(key, value);
  } else if (key == "r-star") {
    c.r_star = parse_number<long>(key, value);
  } else if (key == "measurements") {
    c.measurements = parse_number<long>(key, value);
  } else if (key == "top" || key == "K") {
    c.top = parse_number<long>(key, value);
  } else if (key == "matrix") {
    c.matrix_file = value;
  } else if (key == "algo") {
    if (value == "ntd")
      c.algo = Algorithm::Ntd;
    else if (value == "polyak")
      c.algo = Algorithm::Polyak;
    else
      throw UsageError("unknown algorithm '" + value + "' (expected ntd or polyak)");
  } else if (key == "seed") {
    c.seed = parse_number<std::uint64_t>(key, value);
  } else if (key == "problem-seed") {
    c.problem_seed = parse_number<std::uint64_t>(key, value);
  } else if (key == "budget") {
    c.budget = parse_number<std::int64_t>(key, value);
  } else if (key == "c0") {
    c.c0 = parse_number<double>(key, value);
  } else if (key == "adaptive") {
    c.adaptive = parse_bool(key, value);
  } else if (key == "adaptive-cap") {
    c.adaptive_cap = parse_number<double>(key, value);
  } else if (key == "fstar") {
    c.f_star = parse_number<double>(key, value);
  } else if (key == "stop") {
    if (value == "budget")
      c.stop = StopKind::Budget;
    else if (value == "gap")
      c.stop = StopKind::Gap;
    else if (value == "rk")
      c.stop = StopKind::Rk;
    else
      throw UsageError("unknown stop rule '" + value + "' (expected budget, gap or rk)");
  } else if (key == "stop-tol") {
    c.stop_tol = parse_number<double>(key, value);
  } else if (key == "init-scale") {
    c.init_scale = parse_number<double>(key, value);
  } else if (key == "out") {
    c.out = value;
  } else {
    throw UsageError("unknown configuration key '" + key + "'");
  }
}

std::map<std::string, std::string> read_kv(std::istream &is) {
  std::map<std::string, std::string> out;
  std::string line;
  int lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw UsageError("config line " + std::to_string(lineno) + ": expected key = value");
    const std::string key = trim(line.substr(0, eq));
    if (key.empty())
      throw UsageError("config line " + std::to_string(lineno) + ": empty key");
    out[key] = trim(line.substr(eq + 1));
  }
  return out;
}

std::map<std::string, std::string> read_kv_file(const std::string &path) {
  std::ifstream is(path);
  if (!is) throw IoError("cannot read config file " + path);
  return read_kv(is);
}

std::uint64_t default_seed() {
  const char *env = std::getenv("NTD_SEED");
  if (env == nullptr || *env == '\0') return 0;
  return parse_number<std::uint64_t>("NTD_SEED", env);
}

}  // namespace ntd
