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

#pragma once

#include <complex>
#include <cstdint>
#include <string>

namespace beamsel {

using cplx = std::complex<double>;

inline constexpr double kSpeedOfLight = 299792458.0;
inline constexpr double kPi = 3.141592653589793238462643383279502884;

/// Scenario constants for one simulated downlink.
///
/// Defaults are the desk-scale reproduction of the reference setup: a 256-element
/// lens array serving 8 users over 128 subcarriers with 16 RF chains at 28 GHz.
/// `d` defaults to half a wavelength at the carrier, `N_Q` to K/4 and `T_s` to 1/B.
struct SystemConfig {
  int N = 256;    // antennas (= beams)
  int K = 128;    // subcarriers
  int U = 8;      // single-antenna users
  int L = 3;      // paths per user, path 0 is LOS
  int N_RF = 16;  // RF chains (beam budget)

  double f_c = 28e9;
  double B = 1.4e9;
  double c = kSpeedOfLight;
  double d = kSpeedOfLight / (2.0 * 28e9);
  int N_Q = 32;
  double T_s = 1.0 / 1.4e9;
  double rolloff = 1.0;

  // Relative regularizer for selection scoring. The absolute value used in
  // G = H_r^H H_r + delta I is delta * (1 + mean diagonal of H_r^H H_r).
  double delta = 1e-6;
  double nlos_gain_var = 0.1;
  std::uint64_t seed = 1;

  // When set, a user whose strongest beam is already taken in the energy stage
  // takes its next-best free beam instead of collapsing into the shared one.
  bool distinct_init = false;

  /// Throws std::invalid_argument naming the first violated invariant.
  void validate() const;

  /// Re-derives d, N_Q and T_s from f_c, K and B.
  void derive_defaults();

  /// Canonical `key = value` text, one key per line, fixed order.
  std::string canonical_text() const;
};

/// 16 hex digits of FNV-1a over `text`.
std::string short_hash(const std::string& text);

}  // namespace beamsel
