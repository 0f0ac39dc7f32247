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

// Serial reference versus OpenMP kernels at the full-size default configuration.
// Run with OMP_NUM_THREADS set to compare scaling.

#include <benchmark/benchmark.h>

#include <numeric>

#include "beamsel/beamspace.hpp"
#include "beamsel/channel.hpp"
#include "beamsel/metrics.hpp"
#include "beamsel/selection.hpp"

namespace {

using namespace beamsel;

Exec exec_of(const benchmark::State& state) {
  return state.range(0) == 0 ? Exec::serial : Exec::parallel;
}

struct Fixture {
  SystemConfig cfg;
  LensMatrix lens = lens_dft_matrix(cfg.N);
  ChannelSet spatial = generate_channel(cfg, 0);
  ChannelSet beamspace = to_beamspace(spatial, lens);
  BeamSet selected = select_wideband(beamspace, cfg).beams;
};

const Fixture& fixture() {
  static const Fixture f;
  return f;
}

void BM_GenerateChannel(benchmark::State& state) {
  const auto& f = fixture();
  for (auto _ : state) benchmark::DoNotOptimize(generate_channel(f.cfg, 1, exec_of(state)));
}

void BM_ToBeamspace(benchmark::State& state) {
  const auto& f = fixture();
  for (auto _ : state) benchmark::DoNotOptimize(to_beamspace(f.spatial, f.lens, exec_of(state)));
}

void BM_ScoreCandidates(benchmark::State& state) {
  const auto& f = fixture();
  const std::vector<int> init(f.selected.beams().begin(), f.selected.beams().begin() + f.cfg.U);
  const auto G_inv = regularized_inverses(f.beamspace, init, 1e-6);
  std::vector<int> candidates(f.cfg.N);
  std::iota(candidates.begin(), candidates.end(), 0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(score_candidates(f.beamspace, G_inv, candidates, exec_of(state)));
  }
}

void BM_SelectWideband(benchmark::State& state) {
  const auto& f = fixture();
  for (auto _ : state) benchmark::DoNotOptimize(select_wideband(f.beamspace, f.cfg, exec_of(state)));
}

void BM_GapTraces(benchmark::State& state) {
  const auto& f = fixture();
  for (auto _ : state) {
    benchmark::DoNotOptimize(gap_traces(f.beamspace, f.selected.beams(), exec_of(state)));
  }
}

}  // namespace

// Arg 0 = serial reference, 1 = OpenMP.
BENCHMARK(BM_GenerateChannel)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ToBeamspace)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ScoreCandidates)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SelectWideband)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_GapTraces)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
