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

#include "beamsel/selection.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numbers>
#include <stdexcept>

#include "beamsel/metrics.hpp"

namespace beamsel {

double kappa(const Eigen::MatrixXcd& G_inv, const Eigen::RowVectorXcd& g_b, double xi_inv) {
  const double t = G_inv.trace().real();
  const double quad = (g_b * G_inv * g_b.adjoint())(0, 0).real();
  const double quad2 = (g_b * G_inv * G_inv * g_b.adjoint())(0, 0).real();
  const double t_M = quad2 / (1.0 + quad);
  if (!(t > t_M)) throw std::domain_error("kappa: tr(G^-1) <= tr(M_b)");
  return t_M / ((xi_inv * t + 1.0) * (t - t_M));
}

double regularizer(const ChannelSet& reduced, double rel_delta) {
  double energy = 0.0;
  for (const auto& Hk : reduced.H) energy += Hk.squaredNorm();
  const double mean_diag = energy / (static_cast<double>(reduced.subcarriers()) * reduced.users());
  return rel_delta * (1.0 + mean_diag);
}

std::vector<Eigen::MatrixXcd> regularized_inverses(const ChannelSet& beamspace,
                                                   std::span<const int> beams, double delta) {
  const int users = beamspace.users();
  std::vector<Eigen::MatrixXcd> out;
  out.reserve(beamspace.H.size());
  for (const auto& Hk : beamspace.H) {
    Eigen::MatrixXcd G = Eigen::MatrixXcd::Zero(users, users);
    for (int b : beams) G += Hk.row(b).adjoint() * Hk.row(b);
    G.diagonal().array() += delta;
    out.push_back(G.llt().solve(Eigen::MatrixXcd::Identity(users, users)));
  }
  return out;
}

std::vector<double> score_candidates(const ChannelSet& beamspace,
                                     const std::vector<Eigen::MatrixXcd>& G_inv,
                                     std::span<const int> candidates, Exec exec) {
  const int K = beamspace.subcarriers();
  std::vector<double> traces(K);
  for (int k = 0; k < K; ++k) traces[k] = G_inv[k].trace().real();

  const int count = static_cast<int>(candidates.size());
  std::vector<double> scores(count, 0.0);
  std::vector<char> inconsistent(count, 0);

  auto score_one = [&](int i) {
    const int b = candidates[i];
    double acc = 0.0;
    for (int k = 0; k < K; ++k) {
      // G^-1 is Hermitian, so g G^-1 G^-1 g^H = |G^-1 g^H|^2.
      const Eigen::VectorXcd v = G_inv[k] * beamspace.H[k].row(b).adjoint();
      const double quad = (beamspace.H[k].row(b) * v)(0, 0).real();
      const double t_M = v.squaredNorm() / (1.0 + quad);
      const double t = traces[k];
      if (!(t > t_M)) {
        inconsistent[i] = 1;
        return;
      }
      acc += std::log1p(t_M / ((t + 1.0) * (t - t_M))) / std::numbers::ln2;
    }
    scores[i] = acc;
  };

  if (exec == Exec::parallel) {
#pragma omp parallel for schedule(static)
    for (int i = 0; i < count; ++i) score_one(i);
  } else {
    for (int i = 0; i < count; ++i) score_one(i);
  }
  for (char bad : inconsistent) {
    if (bad) throw std::domain_error("score_candidates: tr(G^-1) <= tr(M_b)");
  }
  return scores;
}

namespace {

int argmax_lowest(const Eigen::VectorXd& values) {
  int best = 0;
  for (int i = 1; i < values.size(); ++i) {
    if (values(i) > values(best)) best = i;
  }
  return best;
}

std::vector<Eigen::VectorXd> user_profiles(const ChannelSet& beamspace) {
  std::vector<Eigen::VectorXd> profiles;
  profiles.reserve(beamspace.users());
  for (int u = 0; u < beamspace.users(); ++u) profiles.push_back(beam_energy_profile(beamspace, u));
  return profiles;
}

void fill_by_energy(BeamSet& set, const ChannelSet& beamspace) {
  for (int b : rank_descending(total_energy_profile(beamspace))) {
    if (set.full()) break;
    if (!set.contains(b)) set.add(b);
  }
}

// ZF sum-rate on a single subcarrier; -inf when the beams cannot separate users.
double center_rate(const Eigen::MatrixXcd& Hk, std::span<const int> beams, double xi) {
  Eigen::MatrixXcd Hr(static_cast<Eigen::Index>(beams.size()), Hk.cols());
  for (std::size_t i = 0; i < beams.size(); ++i) Hr.row(i) = Hk.row(beams[i]);
  try {
    const double t = inverse_gram_trace(Hr, 0.0);
    return Hk.cols() * std::log1p(xi / t) / std::numbers::ln2;
  } catch (const SingularChannelError&) {
    return -std::numeric_limits<double>::infinity();
  }
}

}  // namespace

WidebandSelection select_wideband(const ChannelSet& beamspace, const SystemConfig& cfg,
                                  Exec exec, InverseUpdate update) {
  const int N = beamspace.rows();
  if (cfg.N_RF > N) throw std::domain_error("select_wideband: N_RF exceeds the beam count");

  WidebandSelection result{BeamSet(cfg.N_RF), {}};
  BeamSet& set = result.beams;
  SelectionDiagnostics& diag = result.diagnostics;

  for (const Eigen::VectorXd& profile : user_profiles(beamspace)) {
    int b = argmax_lowest(profile);
    if (cfg.distinct_init && set.contains(b)) {
      for (int cand : rank_descending(profile)) {
        if (!set.contains(cand)) {
          b = cand;
          break;
        }
      }
    }
    diag.init_beams.push_back(b);
    if (!set.contains(b) && !set.full()) set.add(b);
  }

  diag.iterations = cfg.N_RF - set.size();
  diag.delta = regularizer(reduce(beamspace, set), cfg.delta);
  auto G_inv = regularized_inverses(beamspace, set.beams(), diag.delta);

  std::vector<int> candidates;
  for (int step = 0; step < diag.iterations; ++step) {
    candidates.clear();
    for (int b = 0; b < N; ++b) {
      if (!set.contains(b)) candidates.push_back(b);
    }
    const auto scores = score_candidates(beamspace, G_inv, candidates, exec);
    std::size_t best = 0;
    for (std::size_t i = 1; i < scores.size(); ++i) {
      if (scores[i] > scores[best]) best = i;
    }
    const int chosen = candidates[best];
    set.add(chosen);
    diag.scores.push_back(scores[best]);

    if (update == InverseUpdate::reinvert) {
      G_inv = regularized_inverses(beamspace, set.beams(), diag.delta);
      continue;
    }
    for (int k = 0; k < beamspace.subcarriers(); ++k) {
      // Sherman-Morrison for G + g^H g.
      const Eigen::RowVectorXcd g = beamspace.H[k].row(chosen);
      const Eigen::VectorXcd v = G_inv[k] * g.adjoint();
      const cplx denom = 1.0 + (g * v)(0, 0);
      G_inv[k] -= (v * v.adjoint()) / denom.real();
      G_inv[k] = 0.5 * (G_inv[k] + G_inv[k].adjoint()).eval();
    }
  }
  return result;
}

BeamSet select_mm(const ChannelSet& beamspace, const SystemConfig& cfg) {
  if (cfg.N_RF > beamspace.rows()) throw std::domain_error("select_mm: N_RF exceeds the beam count");
  BeamSet set(cfg.N_RF);
  fill_by_energy(set, beamspace);
  return set;
}

BeamSet select_iabs(const ChannelSet& beamspace, const SystemConfig& cfg, double xi) {
  const int users = beamspace.users();
  if (cfg.N_RF < users) throw std::domain_error("select_iabs: N_RF below the user count");
  if (cfg.N_RF > beamspace.rows()) throw std::domain_error("select_iabs: N_RF exceeds the beam count");

  const auto profiles = user_profiles(beamspace);
  std::vector<int> strongest(users);
  std::map<int, int> claims;
  for (int u = 0; u < users; ++u) {
    strongest[u] = argmax_lowest(profiles[u]);
    ++claims[strongest[u]];
  }

  BeamSet set(cfg.N_RF);
  std::vector<int> interfering;
  for (int u = 0; u < users; ++u) {
    if (claims[strongest[u]] == 1) {
      set.add(strongest[u]);
    } else {
      interfering.push_back(u);
    }
  }

  if (!interfering.empty()) {
    const int m = static_cast<int>(interfering.size());
    const Eigen::MatrixXcd& Hc = beamspace.H[(beamspace.subcarriers() + 1) / 2 - 1];

    std::vector<std::vector<int>> lists(m);
    double combos = 1.0;
    for (int i = 0; i < m; ++i) {
      for (int b : rank_descending(profiles[interfering[i]])) {
        if (static_cast<int>(lists[i].size()) == m) break;
        if (!set.contains(b)) lists[i].push_back(b);
      }
      combos *= static_cast<double>(lists[i].size());
    }
    std::vector<int> contested;
    for (int u : interfering) {
      if (std::find(contested.begin(), contested.end(), strongest[u]) == contested.end()) {
        contested.push_back(strongest[u]);
      }
    }

    std::vector<int> base = set.beams();
    std::vector<int> pick;
    std::vector<int> best_keep, best_any;
    double rate_keep = -std::numeric_limits<double>::infinity();
    double rate_any = rate_keep;

    // Depth-first over one candidate per interfering user, beams distinct.
    auto search = [&](auto&& self, int depth) -> void {
      if (depth == m) {
        std::vector<int> beams = base;
        beams.insert(beams.end(), pick.begin(), pick.end());
        const double r = center_rate(Hc, beams, xi);
        const bool keeps = std::all_of(contested.begin(), contested.end(), [&](int c) {
          return std::find(pick.begin(), pick.end(), c) != pick.end();
        });
        if (keeps && r > rate_keep) {
          rate_keep = r;
          best_keep = pick;
        }
        if (r > rate_any) {
          rate_any = r;
          best_any = pick;
        }
        return;
      }
      for (int b : lists[depth]) {
        if (std::find(pick.begin(), pick.end(), b) != pick.end()) continue;
        pick.push_back(b);
        self(self, depth + 1);
        pick.pop_back();
      }
    };

    std::vector<int> chosen;
    if (combos <= 1e5) {
      search(search, 0);
      chosen = !best_keep.empty() ? best_keep : best_any;
    }
    if (chosen.empty()) {
      // Too many assignments (or none feasible): settle users one at a time,
      // scoring partial sets with the regularized rate.
      const double reg = cfg.delta * (1.0 + Hc.squaredNorm() / users);
      std::vector<int> beams = base;
      for (int i = 0; i < m; ++i) {
        int best = -1;
        double best_rate = -std::numeric_limits<double>::infinity();
        for (int b : lists[i]) {
          if (std::find(beams.begin(), beams.end(), b) != beams.end()) continue;
          beams.push_back(b);
          Eigen::MatrixXcd Hr(static_cast<Eigen::Index>(beams.size()), Hc.cols());
          for (std::size_t j = 0; j < beams.size(); ++j) Hr.row(j) = Hc.row(beams[j]);
          const double t = inverse_gram_trace(Hr, reg);
          const double r = std::log1p(xi / t);
          beams.pop_back();
          if (r > best_rate) {
            best_rate = r;
            best = b;
          }
        }
        if (best >= 0) {
          beams.push_back(best);
          chosen.push_back(best);
        }
      }
    }
    for (int b : chosen) {
      if (!set.contains(b) && !set.full()) set.add(b);
    }
  }

  fill_by_energy(set, beamspace);
  return set;
}

BeamSet full_digital_set(int N) {
  BeamSet set(N);
  for (int n = 0; n < N; ++n) set.add(n);
  return set;
}

BeamSet select_exhaustive(const ChannelSet& beamspace, const SystemConfig& cfg, double xi) {
  const int N = beamspace.rows();
  const int r = cfg.N_RF;
  if (r < 1 || r > N) throw std::domain_error("select_exhaustive: N_RF out of range");
  double subsets = 1.0;
  for (int i = 0; i < r; ++i) subsets = subsets * (N - i) / (i + 1);
  if (subsets > 1e5 + 0.5) throw std::domain_error("select_exhaustive: instance too large");

  std::vector<int> idx(r);
  for (int i = 0; i < r; ++i) idx[i] = i;
  std::vector<int> best;
  double best_rate = -std::numeric_limits<double>::infinity();
  while (true) {
    double rate = -std::numeric_limits<double>::infinity();
    try {
      rate = sum_rate(reduce(beamspace, std::span<const int>(idx)), xi, 0.0).C_total;
    } catch (const SingularChannelError&) {
    }
    if (rate > best_rate) {
      best_rate = rate;
      best = idx;
    }
    int pos = r - 1;
    while (pos >= 0 && idx[pos] == N - r + pos) --pos;
    if (pos < 0) break;
    ++idx[pos];
    for (int j = pos + 1; j < r; ++j) idx[j] = idx[j - 1] + 1;
  }
  if (best.empty()) throw SingularChannelError("select_exhaustive: every subset is singular");
  BeamSet set(r);
  for (int b : best) set.add(b);
  return set;
}

}  // namespace beamsel
