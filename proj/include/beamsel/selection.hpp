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
#include <vector>

#include <Eigen/Dense>

#include "beamsel/beamspace.hpp"
#include "beamsel/channel.hpp"
#include "beamsel/config.hpp"
#include "beamsel/exec.hpp"

namespace beamsel {

/// Per-subcarrier gain of adding beam row g_b to the current selection:
///
///   kappa = t_M / ((xi_inv tr(G^-1) + 1)(tr(G^-1) - t_M)),
///   t_M   = g_b G^-1 G^-1 g_b^H / (1 + g_b G^-1 g_b^H).
///
/// With xi_inv = 1 this is the selection score; with xi_inv = 1/xi,
/// log2(1 + kappa) is the exact per-user, per-subcarrier sum-rate increment.
/// Throws std::domain_error when tr(G^-1) <= t_M.
double kappa(const Eigen::MatrixXcd& G_inv, const Eigen::RowVectorXcd& g_b, double xi_inv);

struct SelectionDiagnostics {
  std::vector<int> init_beams;  // energy-stage choice of each user, in user order
  std::vector<double> scores;   // winning sum_k log2(1 + kappa) per greedy step
  int iterations = 0;
  double delta = 0.0;           // absolute regularizer used in G
};

struct WidebandSelection {
  BeamSet beams;
  SelectionDiagnostics diagnostics;
};

/// How G^-1 follows the selection during the greedy stage.
enum class InverseUpdate { rank_one, reinvert };

/// Absolute regularizer rel_delta * (1 + mean diagonal of H_r^H H_r over k).
double regularizer(const ChannelSet& reduced, double rel_delta);

/// (H_r^H H_r + delta I)^-1 on every subcarrier for the rows in `beams`.
std::vector<Eigen::MatrixXcd> regularized_inverses(const ChannelSet& beamspace,
                                                   std::span<const int> beams, double delta);

/// sum_k log2(1 + kappa_b[k]) with xi_inv = 1 for each candidate beam b.
/// The serial and OpenMP paths return identical values.
std::vector<double> score_candidates(const ChannelSet& beamspace,
                                     const std::vector<Eigen::MatrixXcd>& G_inv,
                                     std::span<const int> candidates, Exec exec);

/// Wideband selection: one band-averaged strongest beam per user, then greedy
/// additions maximizing sum_k log2(1 + kappa_b[k]) until N_RF beams.
/// Throws std::domain_error when N_RF > N.
WidebandSelection select_wideband(const ChannelSet& beamspace, const SystemConfig& cfg,
                                  Exec exec = Exec::parallel,
                                  InverseUpdate update = InverseUpdate::rank_one);

/// Magnitude maximization: top N_RF beams by band-averaged energy summed over users.
BeamSet select_mm(const ChannelSet& beamspace, const SystemConfig& cfg);

/// Interference-aware selection at the center subcarrier, padded with MM ranking.
BeamSet select_iabs(const ChannelSet& beamspace, const SystemConfig& cfg, double xi);

/// All N beams.
BeamSet full_digital_set(int N);

/// Best N_RF-subset by exact ZF sum-rate at xi. Refuses (std::domain_error)
/// instances with more than 1e5 subsets.
BeamSet select_exhaustive(const ChannelSet& beamspace, const SystemConfig& cfg, double xi);

}  // namespace beamsel
