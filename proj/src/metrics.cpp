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

#include "beamsel/metrics.hpp"

#include <cmath>
#include <numbers>

namespace beamsel {

double pairwise_sum(std::span<const double> values) {
  if (values.size() <= 8) {
    double acc = 0.0;
    for (double v : values) acc += v;
    return acc;
  }
  const std::size_t half = values.size() / 2;
  return pairwise_sum(values.first(half)) + pairwise_sum(values.subspan(half));
}

namespace {

Eigen::MatrixXcd inverse_gram(const Eigen::MatrixXcd& reduced_k, double delta) {
  const Eigen::Index users = reduced_k.cols();
  Eigen::MatrixXcd gram = reduced_k.adjoint() * reduced_k;
  gram.diagonal().array() += delta;
  Eigen::LLT<Eigen::MatrixXcd> llt(gram);
  if (llt.info() != Eigen::Success) {
    throw SingularChannelError("Gram matrix of the selected beams is singular");
  }
  return llt.solve(Eigen::MatrixXcd::Identity(users, users));
}

}  // namespace

Eigen::MatrixXcd zf_precoder(const Eigen::MatrixXcd& reduced_k, double rho) {
  if (reduced_k.rows() < reduced_k.cols()) {
    throw SingularChannelError("zf_precoder: fewer beams than users");
  }
  const Eigen::MatrixXcd pinv = reduced_k * inverse_gram(reduced_k, 0.0);
  const double power = pinv.squaredNorm();
  return std::sqrt(rho / power) * pinv;
}

double inverse_gram_trace(const Eigen::MatrixXcd& reduced_k, double delta) {
  if (delta == 0.0 && reduced_k.rows() < reduced_k.cols()) {
    throw SingularChannelError("fewer beams than users");
  }
  return inverse_gram(reduced_k, delta).trace().real();
}

std::vector<double> inverse_gram_traces(const ChannelSet& reduced, double delta, Exec exec) {
  const int K = reduced.subcarriers();
  std::vector<double> traces(K);
  if (exec == Exec::parallel) {
    // Exceptions may not cross the parallel region; collect and rethrow.
    std::vector<char> singular(K, 0);
#pragma omp parallel for schedule(static)
    for (int k = 0; k < K; ++k) {
      try {
        traces[k] = inverse_gram_trace(reduced.H[k], delta);
      } catch (const SingularChannelError&) {
        singular[k] = 1;
      }
    }
    for (char s : singular) {
      if (s) throw SingularChannelError("Gram matrix of the selected beams is singular");
    }
  } else {
    for (int k = 0; k < K; ++k) traces[k] = inverse_gram_trace(reduced.H[k], delta);
  }
  return traces;
}

double rate_from_traces(std::span<const double> traces, int users, double xi) {
  std::vector<double> terms(traces.size());
  for (std::size_t k = 0; k < traces.size(); ++k) {
    terms[k] = std::log1p(xi / traces[k]) / std::numbers::ln2;
  }
  return users * pairwise_sum(terms);
}

RatePoint sum_rate(const ChannelSet& reduced, double xi, double delta, Exec exec) {
  const auto traces = inverse_gram_traces(reduced, delta, exec);
  RatePoint p;
  p.xi = xi;
  p.C_total = rate_from_traces(traces, reduced.users(), xi);
  p.C_avg = p.C_total / reduced.subcarriers();
  return p;
}

GapTraces gap_traces(const ChannelSet& beamspace, std::span<const int> beams, Exec exec) {
  const int N = beamspace.rows();
  const int K = beamspace.subcarriers();
  std::vector<char> chosen(N, 0);
  for (int b : beams) {
    if (b < 0 || b >= N) throw std::domain_error("gap_traces: beam index out of range");
    chosen[b] = 1;
  }
  std::vector<int> rest;
  for (int n = 0; n < N; ++n) {
    if (!chosen[n]) rest.push_back(n);
  }

  GapTraces out;
  out.users = beamspace.users();
  out.selected.resize(K);
  out.leakage.resize(K);
  out.full.resize(K);
  std::vector<char> singular(K, 0);

  auto one = [&](int k) {
    const Eigen::MatrixXcd& Hk = beamspace.H[k];
    Eigen::MatrixXcd Hr(static_cast<Eigen::Index>(beams.size()), Hk.cols());
    for (std::size_t i = 0; i < beams.size(); ++i) Hr.row(i) = Hk.row(beams[i]);
    if (Hr.rows() < Hr.cols()) throw SingularChannelError("fewer beams than users");
    const Eigen::MatrixXcd B_inv = inverse_gram(Hr, 0.0);
    out.selected[k] = B_inv.trace().real();

    if (rest.empty()) {
      out.leakage[k] = 0.0;
    } else {
      // M = P B^-1 B^-1 P^H (I + P B^-1 P^H)^-1; with X = P B^-1,
      // tr(M) = tr(X^H (I + X P^H)^-1 X).
      Eigen::MatrixXcd P(static_cast<Eigen::Index>(rest.size()), Hk.cols());
      for (std::size_t i = 0; i < rest.size(); ++i) P.row(i) = Hk.row(rest[i]);
      const Eigen::MatrixXcd X = P * B_inv;
      Eigen::MatrixXcd W = X * P.adjoint();
      W.diagonal().array() += 1.0;
      const Eigen::MatrixXcd Y = W.ldlt().solve(X);
      out.leakage[k] = (X.adjoint() * Y).trace().real();
    }
    out.full[k] = inverse_gram(Hk, 0.0).trace().real();
  };

  auto guarded = [&](int k) {
    try {
      one(k);
    } catch (const SingularChannelError&) {
      singular[k] = 1;
    }
  };
  if (exec == Exec::parallel) {
#pragma omp parallel for schedule(static)
    for (int k = 0; k < K; ++k) guarded(k);
  } else {
    for (int k = 0; k < K; ++k) guarded(k);
  }
  for (char s : singular) {
    if (s) throw SingularChannelError("gap_traces: selected Gram matrix is singular");
  }
  return out;
}

GapPoint gap_at(const GapTraces& traces, double xi) {
  const std::size_t K = traces.selected.size();
  std::vector<double> exact(K), bound(K);
  for (std::size_t k = 0; k < K; ++k) {
    const double tB = traces.selected[k];
    const double tM = traces.leakage[k];
    const double ratio = tM / (tB - tM);
    exact[k] = std::log1p(ratio * (xi / (tB + xi))) / std::numbers::ln2;
    bound[k] = std::log1p(ratio) / std::numbers::ln2;
  }
  GapPoint g;
  g.xi = xi;
  g.gap_exact = traces.users * pairwise_sum(exact);
  g.gap_bound = traces.users * pairwise_sum(bound);
  g.gap_simulated = rate_from_traces(traces.full, traces.users, xi) -
                    rate_from_traces(traces.selected, traces.users, xi);
  return g;
}

double energy_efficiency(double C_avg, const EnergyConfig& ec, int N_RF) {
  return C_avg / (ec.rho + N_RF * ec.P_RF);
}

double dbm_to_watts(double dbm) { return std::pow(10.0, (dbm - 30.0) / 10.0); }

double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }

}  // namespace beamsel
