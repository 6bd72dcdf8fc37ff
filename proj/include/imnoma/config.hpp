// Copyright 2026 The imnoma Authors
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

#pragma once

#include <sstream>

#include "imnoma/harness.hpp"

namespace imnoma {

// ---------------------------------------------------------------------------
// Plain-text experiment configuration.
//
//   [system]  subcarriers, cp, taps, total_power, sigma2_nu_db, sigma2_fu_db
//   [nu]      n, k, mod_order
//   [fu]      n, k, mod_order
//   [run]     id, alpha, alpha_grid, alpha_search_snr_db, snr_db, max_blocks,
//             min_errors, seed, workers, theory_mode, interleaver_n
//
// '#' and ';' start comments. Lists are comma-separated; "a:step:b" expands
// to an inclusive range. Unknown sections or keys are rejected.
// ---------------------------------------------------------------------------

namespace detail {

inline std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

inline double parse_double(const std::string& v, const std::string& key) {
  try {
    std::size_t used = 0;
    const double d = std::stod(v, &used);
    if (used != v.size()) throw std::invalid_argument(v);
    return d;
  } catch (const std::exception&) {
    throw ConfigError("bad number for '" + key + "': " + v);
  }
}

inline std::int64_t parse_int(const std::string& v, const std::string& key) {
  try {
    std::size_t used = 0;
    const std::int64_t d = std::stoll(v, &used);
    if (used != v.size()) throw std::invalid_argument(v);
    return d;
  } catch (const std::exception&) {
    throw ConfigError("bad integer for '" + key + "': " + v);
  }
}

inline std::uint64_t parse_uint(const std::string& v, const std::string& key) {
  const std::int64_t d = parse_int(v, key);
  if (d < 0) throw ConfigError("'" + key + "' cannot be negative");
  return static_cast<std::uint64_t>(d);
}

/// "a,b,c" or "start:step:stop" (inclusive).
inline std::vector<double> parse_list(const std::string& v, const std::string& key) {
  std::vector<double> out;
  if (v.find(':') != std::string::npos) {
    std::stringstream ss(v);
    std::string part;
    std::vector<double> abc;
    while (std::getline(ss, part, ':')) abc.push_back(parse_double(trim(part), key));
    if (abc.size() != 3 || abc[1] <= 0.0)
      throw ConfigError("'" + key + "' range must be start:step:stop with step > 0");
    for (double x = abc[0]; x <= abc[2] + 1e-9; x += abc[1]) out.push_back(x);
    return out;
  }
  std::stringstream ss(v);
  std::string part;
  while (std::getline(ss, part, ',')) {
    const std::string p = trim(part);
    if (!p.empty()) out.push_back(parse_double(p, key));
  }
  if (out.empty()) throw ConfigError("'" + key + "' list is empty");
  return out;
}

}  // namespace detail

inline ExperimentConfig parse_config(std::istream& in, const std::string& origin = "<stream>") {
  ExperimentConfig cfg;
  cfg.snr_grid_db.clear();
  std::string line;
  std::string section;
  int lineno = 0;
  auto fail = [&](const std::string& msg) {
    throw ConfigError(origin + ":" + std::to_string(lineno) + ": " + msg);
  };
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find_first_of("#;");
    if (hash != std::string::npos) line.erase(hash);
    line = detail::trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') fail("unterminated section header");
      section = detail::trim(line.substr(1, line.size() - 2));
      if (section != "system" && section != "nu" && section != "fu" && section != "run")
        fail("unknown section [" + section + "]");
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) fail("expected key = value");
    const std::string key = detail::trim(line.substr(0, eq));
    const std::string val = detail::trim(line.substr(eq + 1));
    if (key.empty() || val.empty()) fail("empty key or value");

    if (section == "system") {
      if (key == "subcarriers") cfg.system.subcarriers = static_cast<int>(detail::parse_int(val, key));
      else if (key == "cp") cfg.system.cp = static_cast<int>(detail::parse_int(val, key));
      else if (key == "taps") cfg.system.channel_taps = static_cast<int>(detail::parse_int(val, key));
      else if (key == "total_power") cfg.system.total_power = detail::parse_double(val, key);
      else if (key == "sigma2_nu_db") cfg.system.sigma2_nu_db = detail::parse_double(val, key);
      else if (key == "sigma2_fu_db") cfg.system.sigma2_fu_db = detail::parse_double(val, key);
      else fail("unknown key '" + key + "' in [system]");
    } else if (section == "nu" || section == "fu") {
      UserConfig& u = section == "nu" ? cfg.nu : cfg.fu;
      if (key == "n") u.n = static_cast<int>(detail::parse_int(val, key));
      else if (key == "k") u.k = static_cast<int>(detail::parse_int(val, key));
      else if (key == "mod_order" || key == "m") u.mod_order = static_cast<int>(detail::parse_int(val, key));
      else fail("unknown key '" + key + "' in [" + section + "]");
    } else if (section == "run") {
      if (key == "id") cfg.id = val;
      else if (key == "alpha") cfg.alpha = detail::parse_double(val, key);
      else if (key == "alpha_grid") {
        const auto v = detail::parse_list(val, key);
        if (val.find(':') == std::string::npos || v.size() < 2)
          fail("alpha_grid must be start:step:stop");
        cfg.alpha_grid.start = v.front();
        cfg.alpha_grid.stop = v.back();
        cfg.alpha_grid.step = v[1] - v[0];
      } else if (key == "alpha_search_snr_db") cfg.alpha_search_snr_db = detail::parse_double(val, key);
      else if (key == "snr_db") cfg.snr_grid_db = detail::parse_list(val, key);
      else if (key == "max_blocks") cfg.stopping.max_blocks = detail::parse_uint(val, key);
      else if (key == "min_errors") cfg.stopping.min_bit_errors = detail::parse_uint(val, key);
      else if (key == "seed") cfg.seed = detail::parse_uint(val, key);
      else if (key == "workers") cfg.workers = static_cast<int>(detail::parse_int(val, key));
      else if (key == "interleaver_n") cfg.interleaver_n = static_cast<int>(detail::parse_int(val, key));
      else if (key == "theory_mode") {
        if (val == "folded") cfg.theory_mode = TheoryMode::kPowerFolded;
        else if (val == "literal") cfg.theory_mode = TheoryMode::kLiteral;
        else fail("theory_mode must be 'folded' or 'literal'");
      } else fail("unknown key '" + key + "' in [run]");
    } else {
      fail("key outside any section");
    }
  }
  cfg.validate();
  return cfg;
}

inline ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file: " + path);
  return parse_config(in, path);
}

inline ExperimentConfig parse_config_string(const std::string& text) {
  std::istringstream in(text);
  return parse_config(in, "<string>");
}

}  // namespace imnoma
