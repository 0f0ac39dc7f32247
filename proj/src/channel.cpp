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

#include "beamsel/channel.hpp"

#include <bit>
#include <cmath>
#include <fstream>
#include <stdexcept>

namespace beamsel {

double subcarrier_frequency(const SystemConfig& cfg, int k) {
  if (k < 1 || k > cfg.K) {
    throw std::domain_error("subcarrier_frequency: k must lie in [1, K]");
  }
  return cfg.f_c + (cfg.B / cfg.K) * (k - 1 - (cfg.K - 1) / 2.0);
}

Eigen::VectorXcd steering_vector(int N, double phi) {
  Eigen::VectorXcd a(N);
  const double scale = 1.0 / std::sqrt(static_cast<double>(N));
  for (int n = 0; n < N; ++n) {
    a(n) = std::polar(scale, 2.0 * kPi * phi * n);
  }
  return a;
}

double spatial_aod(double f, double d, double c, double sin_theta) {
  return f / c * d * sin_theta;
}

double raised_cosine(double t, double T_s, double rolloff) {
  const double x = t / T_s;
  auto sinc = [](double v) { return v == 0.0 ? 1.0 : std::sin(kPi * v) / (kPi * v); };
  if (rolloff > 0.0) {
    const double edge = 2.0 * rolloff * x;
    // Removable singularity at |t| = T_s / (2 rolloff).
    if (std::abs(1.0 - edge * edge) < 1e-12) {
      return kPi / 4.0 * sinc(1.0 / (2.0 * rolloff));
    }
    return sinc(x) * std::cos(kPi * rolloff * x) / (1.0 - edge * edge);
  }
  return sinc(x);
}

std::mt19937_64 realization_rng(std::uint64_t seed, std::int64_t realization_id) {
  const auto id = static_cast<std::uint64_t>(realization_id);
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(id), static_cast<std::uint32_t>(id >> 32)};
  return std::mt19937_64(seq);
}

std::vector<UserPathParams> sample_user_params(const SystemConfig& cfg, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> angle(-0.5, 0.5);
  std::uniform_real_distribution<double> delay(cfg.T_s, cfg.N_Q * cfg.T_s);
  std::normal_distribution<double> gauss(0.0, 1.0);

  std::vector<UserPathParams> users(cfg.U);
  for (auto& user : users) {
    user.paths.resize(cfg.L);
    for (int l = 0; l < cfg.L; ++l) {
      PathParams& p = user.paths[l];
      p.sin_theta = angle(rng);
      p.tau = delay(rng);
      const double var = (l == 0) ? 1.0 : cfg.nlos_gain_var;
      const double sd = std::sqrt(var / 2.0);
      const double re = gauss(rng);
      const double im = gauss(rng);
      p.alpha = cplx(sd * re, sd * im);
    }
  }
  return users;
}

cplx beta_gain(cplx alpha, double tau, int k, const SystemConfig& cfg) {
  cplx acc{0.0, 0.0};
  for (int q = 1; q <= cfg.N_Q; ++q) {
    const double pulse = raised_cosine(q * cfg.T_s - tau, cfg.T_s, cfg.rolloff);
    acc += pulse * std::polar(1.0, -2.0 * kPi * static_cast<double>(k) * q / cfg.K);
  }
  return alpha * acc;
}

ChannelSet frequency_channel(const std::vector<UserPathParams>& params, const SystemConfig& cfg,
                             std::int64_t realization_id, Exec exec) {
  if (static_cast<int>(params.size()) != cfg.U) {
    throw std::domain_error("frequency_channel: expected one parameter set per user");
  }
  for (const auto& user : params) {
    if (static_cast<int>(user.paths.size()) != cfg.L) {
      throw std::domain_error("frequency_channel: expected L paths per user");
    }
  }

  ChannelSet out;
  out.realization_id = realization_id;
  out.H.assign(cfg.K, Eigen::MatrixXcd::Zero(cfg.N, cfg.U));

  auto fill = [&](int idx) {
    const int k = idx + 1;
    const double f_k = subcarrier_frequency(cfg, k);
    Eigen::MatrixXcd& Hk = out.H[idx];
    for (int u = 0; u < cfg.U; ++u) {
      for (const PathParams& p : params[u].paths) {
        const cplx beta = beta_gain(p.alpha, p.tau, k, cfg);
        const double phi = spatial_aod(f_k, cfg.d, cfg.c, p.sin_theta);
        Hk.col(u) += beta * steering_vector(cfg.N, phi);
      }
    }
  };

  if (exec == Exec::parallel) {
#pragma omp parallel for schedule(static)
    for (int idx = 0; idx < cfg.K; ++idx) fill(idx);
  } else {
    for (int idx = 0; idx < cfg.K; ++idx) fill(idx);
  }
  return out;
}

ChannelSet generate_channel(const SystemConfig& cfg, std::int64_t realization_id, Exec exec) {
  auto rng = realization_rng(cfg.seed, realization_id);
  return frequency_channel(sample_user_params(cfg, rng), cfg, realization_id, exec);
}

namespace {

void put_u64(std::ostream& os, std::uint64_t v) {
  char bytes[8];
  for (int i = 0; i < 8; ++i) bytes[i] = static_cast<char>((v >> (8 * i)) & 0xff);
  os.write(bytes, 8);
}

std::uint64_t get_u64(std::istream& is) {
  unsigned char bytes[8];
  is.read(reinterpret_cast<char*>(bytes), 8);
  if (!is) throw std::runtime_error("channel dump: truncated file");
  std::uint64_t v = 0;
  for (int i = 0; i < 8; ++i) v |= static_cast<std::uint64_t>(bytes[i]) << (8 * i);
  return v;
}

}  // namespace

void write_channel_dump(const std::string& path, const ChannelSet& channel) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw std::runtime_error("channel dump: cannot open " + path);
  const int rows = channel.rows(), users = channel.users(), K = channel.subcarriers();
  put_u64(os, static_cast<std::uint64_t>(rows));
  put_u64(os, static_cast<std::uint64_t>(users));
  put_u64(os, static_cast<std::uint64_t>(K));
  put_u64(os, static_cast<std::uint64_t>(channel.realization_id));
  for (int n = 0; n < rows; ++n) {
    for (int u = 0; u < users; ++u) {
      for (int k = 0; k < K; ++k) {
        const cplx v = channel.H[k](n, u);
        put_u64(os, std::bit_cast<std::uint64_t>(v.real()));
        put_u64(os, std::bit_cast<std::uint64_t>(v.imag()));
      }
    }
  }
  if (!os) throw std::runtime_error("channel dump: write failed for " + path);
}

ChannelSet read_channel_dump(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw std::runtime_error("channel dump: cannot open " + path);
  const auto rows = static_cast<int>(get_u64(is));
  const auto users = static_cast<int>(get_u64(is));
  const auto K = static_cast<int>(get_u64(is));
  ChannelSet out;
  out.realization_id = static_cast<std::int64_t>(get_u64(is));
  out.H.assign(K, Eigen::MatrixXcd(rows, users));
  for (int n = 0; n < rows; ++n) {
    for (int u = 0; u < users; ++u) {
      for (int k = 0; k < K; ++k) {
        const double re = std::bit_cast<double>(get_u64(is));
        const double im = std::bit_cast<double>(get_u64(is));
        out.H[k](n, u) = cplx(re, im);
      }
    }
  }
  return out;
}

}  // namespace beamsel
