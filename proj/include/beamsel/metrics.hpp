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

#include <span>
#include <stdexcept>
#include <vector>

#include <Eigen/Dense>

#include "beamsel/beamspace.hpp"
#include "beamsel/channel.hpp"
#include "beamsel/exec.hpp"

namespace beamsel {

/// Raised when H_r^H H_r (+ delta I) is not positive definite, i.e. the selected
/// beams cannot separate the users.
class SingularChannelError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Zero-forcing precoder c (H_r^H)^+ for one subcarrier, scaled so that
/// tr(F F^H) = rho. `reduced_k` is |B| x U.
Eigen::MatrixXcd zf_precoder(const Eigen::MatrixXcd& reduced_k, double rho);

/// Sum-rate in the U * sum_k log2(1 + xi / tr(G^-1[k])) convention.
struct RatePoint {
  double xi = 0.0;
  double C_total = 0.0;  // bits per OFDM symbol use, summed over subcarriers
  double C_avg = 0.0;    // C_total / K, bits/s/Hz
};

/// tr((H_r^H H_r + delta I)^-1) for one subcarrier.
double inverse_gram_trace(const Eigen::MatrixXcd& reduced_k, double delta);

/// inverse_gram_trace for every subcarrier.
std::vector<double> inverse_gram_traces(const ChannelSet& reduced, double delta,
                                        Exec exec = Exec::serial);

/// U * sum_k log2(1 + xi / traces[k]), summed pairwise.
double rate_from_traces(std::span<const double> traces, int users, double xi);

RatePoint sum_rate(const ChannelSet& reduced, double xi, double delta = 0.0,
                   Exec exec = Exec::serial);

/// Gap between the fully digital array and a beam selection.
struct GapPoint {
  double xi = 0.0;
  double gap_exact = 0.0;      // closed form at finite SNR
  double gap_bound = 0.0;      // high-SNR limit of the closed form
  double gap_simulated = 0.0;  // C(all beams) - C(selection), both evaluated directly
};

/// Per-subcarrier traces behind GapPoint, reusable across SNR values.
struct GapTraces {
  int users = 0;
  std::vector<double> selected;  // tr(B^-1[k]), B = H_r^H H_r
  std::vector<double> leakage;   // tr(M[k]) from the unselected rows P[k]
  std::vector<double> full;      // tr((H~^H H~)^-1) over all N beams
};

/// Throws SingularChannelError if B[k] is singular for some k.
GapTraces gap_traces(const ChannelSet& beamspace, std::span<const int> beams,
                     Exec exec = Exec::serial);
GapPoint gap_at(const GapTraces& traces, double xi);

inline GapPoint sum_rate_gap(const ChannelSet& beamspace, const BeamSet& beams, double xi,
                             Exec exec = Exec::serial) {
  return gap_at(gap_traces(beamspace, beams.beams(), exec), xi);
}

struct EnergyConfig {
  double rho = 1.0;     // transmit power, W
  double sigma2 = 1.0;  // noise power, W
  double P_RF = 34.4e-3;

  double snr() const { return rho / sigma2; }
};

/// C_avg / (rho + N_RF P_RF), in bits/s/Hz/W.
double energy_efficiency(double C_avg, const EnergyConfig& ec, int N_RF);

double dbm_to_watts(double dbm);
double db_to_linear(double db);

}  // namespace beamsel
