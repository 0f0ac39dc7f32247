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

#include "beamsel/config.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <stdexcept>

namespace beamsel {

namespace {

void require(bool cond, const char* what) {
  if (!cond) throw std::invalid_argument(std::string("SystemConfig: ") + what);
}

std::string fmt_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace

void SystemConfig::validate() const {
  require(N >= 1, "N must be >= 1");
  require(K >= 1, "K must be >= 1");
  require(U >= 1, "U must be >= 1");
  require(L >= 1, "L must be >= 1");
  require(U <= N_RF, "N_RF must be >= U");
  require(N_RF <= N, "N_RF must be <= N");
  require(f_c > 0.0 && B > 0.0, "f_c and B must be positive");
  require(B < f_c, "B must be below f_c");
  require(c > 0.0 && d > 0.0, "c and d must be positive");
  require(N_Q >= 1 && N_Q <= K, "N_Q must lie in [1, K]");
  require(std::abs(T_s * B - 1.0) <= 1e-9, "T_s must equal 1/B");
  require(rolloff >= 0.0 && rolloff <= 1.0, "rolloff must lie in [0, 1]");
  require(delta > 0.0, "delta must be positive");
  require(nlos_gain_var >= 0.0, "nlos_gain_var must be nonnegative");
}

void SystemConfig::derive_defaults() {
  d = c / (2.0 * f_c);
  N_Q = std::max(1, K / 4);
  T_s = 1.0 / B;
}

std::string SystemConfig::canonical_text() const {
  std::ostringstream os;
  os << "N = " << N << "\n"
     << "K = " << K << "\n"
     << "U = " << U << "\n"
     << "L = " << L << "\n"
     << "N_RF = " << N_RF << "\n"
     << "f_c = " << fmt_double(f_c) << "\n"
     << "B = " << fmt_double(B) << "\n"
     << "c = " << fmt_double(c) << "\n"
     << "d = " << fmt_double(d) << "\n"
     << "N_Q = " << N_Q << "\n"
     << "T_s = " << fmt_double(T_s) << "\n"
     << "rolloff = " << fmt_double(rolloff) << "\n"
     << "delta = " << fmt_double(delta) << "\n"
     << "nlos_gain_var = " << fmt_double(nlos_gain_var) << "\n"
     << "seed = " << seed << "\n"
     << "distinct_init = " << (distinct_init ? "true" : "false") << "\n";
  return os.str();
}

std::string short_hash(const std::string& text) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : text) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace beamsel
