// Copyright 2026 The Beamsel Authors. All Rights Reserved.
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

#include "beamsel/spec_file.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <functional>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string_view>

namespace beamsel {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split_list(std::string_view s) {
  std::vector<std::string_view> out;
  while (true) {
    const auto comma = s.find(',');
    out.push_back(trim(s.substr(0, comma)));
    if (comma == std::string_view::npos) break;
    s.remove_prefix(comma + 1);
  }
  return out;
}

template <typename T>
T parse_number(std::string_view v) {
  T out{};
  const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc() || ptr != v.data() + v.size()) {
    throw std::invalid_argument("malformed number '" + std::string(v) + "'");
  }
  return out;
}

bool parse_bool(std::string_view v) {
  if (v == "true" || v == "1") return true;
  if (v == "false" || v == "0") return false;
  throw std::invalid_argument("malformed boolean '" + std::string(v) + "'");
}

std::vector<double> parse_doubles(std::string_view v) {
  std::vector<double> out;
  for (auto item : split_list(v)) out.push_back(parse_number<double>(item));
  return out;
}

}  // namespace

ExperimentSpec parse_spec_text(const std::string& text) {
  ExperimentSpec spec;
  SystemConfig& c = spec.cfg;
  using Setter = std::function<void(std::string_view)>;
  const std::map<std::string, Setter, std::less<>> setters{
      {"N", [&](auto v) { c.N = parse_number<int>(v); }},
      {"K", [&](auto v) { c.K = parse_number<int>(v); }},
      {"U", [&](auto v) { c.U = parse_number<int>(v); }},
      {"L", [&](auto v) { c.L = parse_number<int>(v); }},
      {"N_RF", [&](auto v) { c.N_RF = parse_number<int>(v); }},
      {"f_c", [&](auto v) { c.f_c = parse_number<double>(v); }},
      {"B", [&](auto v) { c.B = parse_number<double>(v); }},
      {"c", [&](auto v) { c.c = parse_number<double>(v); }},
      {"d", [&](auto v) { c.d = parse_number<double>(v); }},
      {"N_Q", [&](auto v) { c.N_Q = parse_number<int>(v); }},
      {"T_s", [&](auto v) { c.T_s = parse_number<double>(v); }},
      {"rolloff", [&](auto v) { c.rolloff = parse_number<double>(v); }},
      {"delta", [&](auto v) { c.delta = parse_number<double>(v); }},
      {"nlos_gain_var", [&](auto v) { c.nlos_gain_var = parse_number<double>(v); }},
      {"seed", [&](auto v) { c.seed = parse_number<std::uint64_t>(v); }},
      {"distinct_init", [&](auto v) { c.distinct_init = parse_bool(v); }},
      {"scenario", [&](auto v) { spec.scenario = parse_scenario(v); }},
      {"methods",
       [&](auto v) {
         spec.methods.clear();
         for (auto m : split_list(v)) spec.methods.push_back(parse_method(m));
       }},
      {"snr_grid_db", [&](auto v) { spec.snr_grid_db = parse_doubles(v); }},
      {"power_grid_dbm", [&](auto v) { spec.power_grid_dbm = parse_doubles(v); }},
      {"trials", [&](auto v) { spec.trials = parse_number<int>(v); }},
      {"out_path", [&](auto v) { spec.out_path = std::string(v); }},
      {"iabs_snr_db", [&](auto v) { spec.iabs_snr_db = parse_number<double>(v); }},
      {"sigma2_dbm", [&](auto v) { spec.sigma2_dbm = parse_number<double>(v); }},
      {"P_RF", [&](auto v) { spec.P_RF = parse_number<double>(v); }},
  };

  std::set<std::string, std::less<>> seen;
  std::istringstream in(text);
  std::string raw;
  int lineno = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    const std::string_view line = trim(raw);
    if (line.empty() || line.front() == '#') continue;
    const auto eq = line.find('=');
    const auto where = "line " + std::to_string(lineno) + ": ";
    if (eq == std::string_view::npos) throw std::invalid_argument(where + "expected key = value");
    const std::string_view key = trim(line.substr(0, eq));
    const std::string_view value = trim(line.substr(eq + 1));
    const auto it = setters.find(key);
    if (it == setters.end()) throw std::invalid_argument(where + "unknown key '" + std::string(key) + "'");
    if (!seen.insert(std::string(key)).second) {
      throw std::invalid_argument(where + "repeated key '" + std::string(key) + "'");
    }
    try {
      it->second(value);
    } catch (const std::invalid_argument& e) {
      throw std::invalid_argument(where + e.what());
    }
  }

  if (!seen.contains("d")) c.d = c.c / (2.0 * c.f_c);
  if (!seen.contains("N_Q")) c.N_Q = std::max(1, c.K / 4);
  if (!seen.contains("T_s")) c.T_s = 1.0 / c.B;
  spec.validate();
  return spec;
}

ExperimentSpec load_spec_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read spec file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_spec_text(buf.str());
}

}  // namespace beamsel
