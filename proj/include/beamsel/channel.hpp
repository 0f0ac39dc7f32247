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

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "beamsel/config.hpp"
#include "beamsel/exec.hpp"

namespace beamsel {

/// Physical parameters of one propagation path.
struct PathParams {
  double sin_theta = 0.0;  // in [-1/2, 1/2]
  double tau = 0.0;        // seconds
  cplx alpha{0.0, 0.0};
};

/// All paths of one user; paths[0] is the LOS path.
struct UserPathParams {
  std::vector<PathParams> paths;
};

/// Per-subcarrier channel tensor of shape rows x U x K, stored as K matrices.
///
/// The same container carries the spatial channel H[k] (rows = N antennas),
/// the beamspace channel (rows = N beams) and the reduced beamspace channel
/// (rows = selected beams). Subcarrier k = 1..K lives at index k - 1.
struct ChannelSet {
  std::vector<Eigen::MatrixXcd> H;
  std::int64_t realization_id = 0;

  int rows() const { return H.empty() ? 0 : static_cast<int>(H.front().rows()); }
  int users() const { return H.empty() ? 0 : static_cast<int>(H.front().cols()); }
  int subcarriers() const { return static_cast<int>(H.size()); }
};

/// f_k = f_c + (B/K)(k - 1 - (K-1)/2) for the 1-based subcarrier index k.
/// Throws std::domain_error when k is outside [1, K].
double subcarrier_frequency(const SystemConfig& cfg, int k);

/// ULA response (1/sqrt(N)) e^{j 2 pi phi n}, n = 0..N-1.
Eigen::VectorXcd steering_vector(int N, double phi);

/// Spatial angle of departure (f/c) d sin(theta). Linear in f, which is what
/// makes the beam squint across the band.
double spatial_aod(double f, double d, double c, double sin_theta);

/// Raised-cosine pulse with symbol period T_s, evaluated at t.
double raised_cosine(double t, double T_s, double rolloff);

/// Generator for one realization, derived from (seed, realization_id) only.
std::mt19937_64 realization_rng(std::uint64_t seed, std::int64_t realization_id);

/// Draws U users with L paths each: sin(theta) ~ U[-1/2, 1/2], LOS gain CN(0, 1),
/// NLOS gain CN(0, nlos_gain_var), tau ~ U[T_s, N_Q T_s], the span of the delay taps.
std::vector<UserPathParams> sample_user_params(const SystemConfig& cfg, std::mt19937_64& rng);

/// alpha * sum_{q=1}^{N_Q} p_rc(q T_s - tau) e^{-j 2 pi k q / K}, k 1-based.
cplx beta_gain(cplx alpha, double tau, int k, const SystemConfig& cfg);

/// h_u[k] = sum_l beta_{u,l}[k] a(phi_{u,l}^k), with the steering evaluated at f_k.
/// Throws std::domain_error when params does not hold U users of L paths.
ChannelSet frequency_channel(const std::vector<UserPathParams>& params, const SystemConfig& cfg,
                             std::int64_t realization_id = 0, Exec exec = Exec::parallel);

/// sample_user_params + frequency_channel for realization `realization_id`.
ChannelSet generate_channel(const SystemConfig& cfg, std::int64_t realization_id,
                            Exec exec = Exec::parallel);

/// Debug dump: four little-endian int64 (rows, U, K, realization_id) followed by
/// the tensor in row-major (row, user, subcarrier) order as interleaved re/im
/// little-endian float64.
void write_channel_dump(const std::string& path, const ChannelSet& channel);
ChannelSet read_channel_dump(const std::string& path);

}  // namespace beamsel
