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

// Brute-force reference computations used only by tests. Nothing here calls
// into the incremental or closed-form paths it is used to check.

#include <cmath>
#include <complex>
#include <numbers>
#include <random>
#include <vector>

#include <Eigen/Dense>

#include "beamsel/channel.hpp"
#include "beamsel/config.hpp"

namespace beamsel::oracle {

inline double log2p1(double x) { return std::log2(1.0 + x); }

/// Raised-cosine pulse as the inverse Fourier transform of its spectrum,
/// integrated with composite Simpson's rule.
inline double raised_cosine_quadrature(double t, double T_s, double rolloff, int panels = 20000) {
  const double f_flat = (1.0 - rolloff) / (2.0 * T_s);
  const double f_max = (1.0 + rolloff) / (2.0 * T_s);
  auto spectrum = [&](double f) {
    if (f <= f_flat) return T_s;
    if (f >= f_max) return 0.0;
    return T_s / 2.0 * (1.0 + std::cos(std::numbers::pi * T_s / rolloff * (f - f_flat)));
  };
  // p(t) = 2 int_0^f_max P(f) cos(2 pi f t) df, P real and even.
  const double h = f_max / panels;
  double acc = 0.0;
  for (int i = 0; i <= panels; ++i) {
    const double f = i * h;
    const double w = (i == 0 || i == panels) ? 1.0 : (i % 2 ? 4.0 : 2.0);
    acc += w * spectrum(f) * std::cos(2.0 * std::numbers::pi * f * t);
  }
  return 2.0 * acc * h / 3.0;
}

inline Eigen::VectorXcd array_response(int N, double phi) {
  Eigen::VectorXcd a(N);
  for (int n = 0; n < N; ++n) {
    a(n) = std::exp(std::complex<double>(0.0, 2.0 * std::numbers::pi * phi * n)) /
           std::sqrt(static_cast<double>(N));
  }
  return a;
}

/// Channel of user u at 1-based subcarrier k built from delay taps: form each
/// tap h_{u,q} with the steering frozen at f_k, then take the K-point DFT sum.
inline Eigen::VectorXcd tap_domain_channel(const UserPathParams& user, const SystemConfig& cfg,
                                           int k) {
  const double f_k = cfg.f_c + cfg.B / cfg.K * (k - 1 - (cfg.K - 1) / 2.0);
  Eigen::VectorXcd h = Eigen::VectorXcd::Zero(cfg.N);
  for (int q = 1; q <= cfg.N_Q; ++q) {
    Eigen::VectorXcd tap = Eigen::VectorXcd::Zero(cfg.N);
    for (const PathParams& p : user.paths) {
      const double phi = f_k / cfg.c * cfg.d * p.sin_theta;
      tap += raised_cosine_quadrature(q * cfg.T_s - p.tau, cfg.T_s, cfg.rolloff) * p.alpha *
             array_response(cfg.N, phi);
    }
    h += tap * std::exp(std::complex<double>(0.0, -2.0 * std::numbers::pi * k * q / cfg.K));
  }
  return h;
}

inline Eigen::MatrixXcd rows_of(const Eigen::MatrixXcd& H, const std::vector<int>& beams) {
  Eigen::MatrixXcd r(static_cast<Eigen::Index>(beams.size()), H.cols());
  for (std::size_t i = 0; i < beams.size(); ++i) r.row(i) = H.row(beams[i]);
  return r;
}

/// tr((H_r^H H_r + delta I)^-1) by explicit LU inversion.
inline double trace_inverse(const Eigen::MatrixXcd& Hr, double delta) {
  Eigen::MatrixXcd G = Hr.adjoint() * Hr;
  G += delta * Eigen::MatrixXcd::Identity(G.rows(), G.cols());
  return G.fullPivLu().inverse().trace().real();
}

/// U sum_k log2(1 + xi / tr(G^-1[k])) with G built from `beams`.
inline double sum_rate(const ChannelSet& beamspace, const std::vector<int>& beams, double delta,
                       double xi) {
  double c = 0.0;
  for (const auto& Hk : beamspace.H) c += log2p1(xi / trace_inverse(rows_of(Hk, beams), delta));
  return beamspace.users() * c;
}

/// Greedy selection that rescores every candidate from scratch by the exact
/// regularized sum-rate at xi = 1 (the scoring SNR of the selection rule).
inline std::vector<int> greedy_exact(const ChannelSet& beamspace, const SystemConfig& cfg) {
  const int N = beamspace.rows(), K = beamspace.subcarriers();
  std::vector<int> chosen;
  for (int u = 0; u < beamspace.users(); ++u) {
    int best = 0;
    double best_e = -1.0;
    for (int b = 0; b < N; ++b) {
      double e = 0.0;
      for (int k = 0; k < K; ++k) e += std::norm(beamspace.H[k](b, u));
      if (e > best_e) {
        best_e = e;
        best = b;
      }
    }
    if (std::find(chosen.begin(), chosen.end(), best) == chosen.end()) chosen.push_back(best);
  }
  double diag = 0.0;
  for (const auto& Hk : beamspace.H) diag += rows_of(Hk, chosen).squaredNorm();
  const double delta = cfg.delta * (1.0 + diag / (K * beamspace.users()));

  while (static_cast<int>(chosen.size()) < cfg.N_RF) {
    int best = -1;
    double best_c = -1.0;
    for (int b = 0; b < N; ++b) {
      if (std::find(chosen.begin(), chosen.end(), b) != chosen.end()) continue;
      auto trial = chosen;
      trial.push_back(b);
      const double c = sum_rate(beamspace, trial, delta, 1.0);
      if (c > best_c) {
        best_c = c;
        best = b;
      }
    }
    chosen.push_back(best);
  }
  return chosen;
}

/// Random complex matrix with i.i.d. CN(0, 1) entries.
inline Eigen::MatrixXcd random_complex(int rows, int cols, std::mt19937_64& rng) {
  std::normal_distribution<double> g(0.0, std::sqrt(0.5));
  Eigen::MatrixXcd m(rows, cols);
  for (int i = 0; i < rows; ++i) {
    for (int j = 0; j < cols; ++j) m(i, j) = {g(rng), g(rng)};
  }
  return m;
}

/// Beamspace tensor of i.i.d. CN(0, 1) entries.
inline ChannelSet random_beamspace(int N, int U, int K, std::mt19937_64& rng) {
  ChannelSet h;
  for (int k = 0; k < K; ++k) h.H.push_back(random_complex(N, U, rng));
  return h;
}

}  // namespace beamsel::oracle
