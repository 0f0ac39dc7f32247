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

#include "beamsel/channel.hpp"
#include "beamsel/exec.hpp"

namespace beamsel {

/// Lens array modeled as a spatial DFT. Row n (0-based) is a(phi_n)^H on the
/// symmetric grid phi_n = (n - (N-1)/2) / N, i.e. beams cover [-1/2, 1/2).
struct LensMatrix {
  Eigen::MatrixXcd U;

  int size() const { return static_cast<int>(U.rows()); }
};

LensMatrix lens_dft_matrix(int N);

/// Grid spatial frequency of beam n (0-based).
double beam_grid_frequency(int N, int n);

/// Ordered set of distinct 0-based beam indices with a fixed capacity.
/// Insertion order is kept: beams()[i] was chosen at step i.
class BeamSet {
 public:
  explicit BeamSet(int capacity) : capacity_(capacity) {}

  /// Throws std::domain_error on a duplicate or when full.
  void add(int beam);
  bool contains(int beam) const;

  const std::vector<int>& beams() const { return beams_; }
  int size() const { return static_cast<int>(beams_.size()); }
  int capacity() const { return capacity_; }
  bool full() const { return size() >= capacity_; }

  friend bool operator==(const BeamSet&, const BeamSet&) = default;

 private:
  std::vector<int> beams_;
  int capacity_;
};

/// H~[k] = U H[k] for every subcarrier.
ChannelSet to_beamspace(const ChannelSet& spatial, const LensMatrix& lens,
                        Exec exec = Exec::parallel);

/// Rows of every H~[k] indexed by `beams`, in the given order.
/// Throws std::domain_error on an empty list or an index outside [0, N).
ChannelSet reduce(const ChannelSet& beamspace, std::span<const int> beams);
inline ChannelSet reduce(const ChannelSet& beamspace, const BeamSet& set) {
  return reduce(beamspace, std::span<const int>(set.beams()));
}

/// Band-averaged per-beam energy of user u: entry b = (1/K) sum_k |H~(b, u, k)|^2.
Eigen::VectorXd beam_energy_profile(const ChannelSet& beamspace, int u);

/// Sum of beam_energy_profile over all users.
Eigen::VectorXd total_energy_profile(const ChannelSet& beamspace);

/// Beam indices sorted by descending value, ties to the lower index.
std::vector<int> rank_descending(const Eigen::VectorXd& values);

}  // namespace beamsel
