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

#include "beamsel/beamspace.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace beamsel {

double beam_grid_frequency(int N, int n) { return (n - (N - 1) / 2.0) / N; }

LensMatrix lens_dft_matrix(int N) {
  LensMatrix lens;
  lens.U.resize(N, N);
  for (int n = 0; n < N; ++n) {
    lens.U.row(n) = steering_vector(N, beam_grid_frequency(N, n)).adjoint();
  }
  return lens;
}

void BeamSet::add(int beam) {
  if (contains(beam)) throw std::domain_error("BeamSet: duplicate beam");
  if (full()) throw std::domain_error("BeamSet: capacity exceeded");
  beams_.push_back(beam);
}

bool BeamSet::contains(int beam) const {
  return std::find(beams_.begin(), beams_.end(), beam) != beams_.end();
}

ChannelSet to_beamspace(const ChannelSet& spatial, const LensMatrix& lens, Exec exec) {
  if (spatial.rows() != lens.size()) {
    throw std::domain_error("to_beamspace: lens size does not match antenna count");
  }
  ChannelSet out;
  out.realization_id = spatial.realization_id;
  out.H.resize(spatial.H.size());
  const int K = spatial.subcarriers();
  if (exec == Exec::parallel) {
#pragma omp parallel for schedule(static)
    for (int k = 0; k < K; ++k) out.H[k].noalias() = lens.U * spatial.H[k];
  } else {
    for (int k = 0; k < K; ++k) out.H[k].noalias() = lens.U * spatial.H[k];
  }
  return out;
}

ChannelSet reduce(const ChannelSet& beamspace, std::span<const int> beams) {
  if (beams.empty()) throw std::domain_error("reduce: empty beam set");
  const int N = beamspace.rows();
  for (int b : beams) {
    if (b < 0 || b >= N) throw std::domain_error("reduce: beam index out of range");
  }
  ChannelSet out;
  out.realization_id = beamspace.realization_id;
  out.H.reserve(beamspace.H.size());
  for (const auto& Hk : beamspace.H) {
    Eigen::MatrixXcd r(static_cast<Eigen::Index>(beams.size()), Hk.cols());
    for (std::size_t i = 0; i < beams.size(); ++i) r.row(i) = Hk.row(beams[i]);
    out.H.push_back(std::move(r));
  }
  return out;
}

Eigen::VectorXd beam_energy_profile(const ChannelSet& beamspace, int u) {
  if (u < 0 || u >= beamspace.users()) {
    throw std::domain_error("beam_energy_profile: user index out of range");
  }
  Eigen::VectorXd energy = Eigen::VectorXd::Zero(beamspace.rows());
  for (const auto& Hk : beamspace.H) energy += Hk.col(u).cwiseAbs2();
  return energy / static_cast<double>(beamspace.subcarriers());
}

Eigen::VectorXd total_energy_profile(const ChannelSet& beamspace) {
  Eigen::VectorXd total = Eigen::VectorXd::Zero(beamspace.rows());
  for (int u = 0; u < beamspace.users(); ++u) total += beam_energy_profile(beamspace, u);
  return total;
}

std::vector<int> rank_descending(const Eigen::VectorXd& values) {
  std::vector<int> order(values.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b) { return values(a) > values(b); });
  return order;
}

}  // namespace beamsel
