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

// Command-line front end: preset and spec-file sweeps, the gap table, a quick
// self-test and a channel dump for debugging.

#include <omp.h>

#include <cmath>
#include <cstdio>
#include <iostream>
#include <random>
#include <string>

#include "CLI11.hpp"
#include "beamsel/beamspace.hpp"
#include "beamsel/channel.hpp"
#include "beamsel/harness.hpp"
#include "beamsel/metrics.hpp"
#include "beamsel/selection.hpp"
#include "beamsel/spec_file.hpp"

namespace {

using namespace beamsel;

struct CommonFlags {
  std::optional<std::uint64_t> seed;
  std::optional<int> trials;
  std::string out;
  int threads = 0;
};

void add_common(CLI::App* cmd, CommonFlags& f) {
  cmd->add_option("--seed", f.seed, "RNG seed");
  cmd->add_option("--trials", f.trials, "Monte Carlo trials")->check(CLI::PositiveNumber);
  cmd->add_option("--out", f.out, "output CSV path");
  cmd->add_option("--threads", f.threads, "worker threads (0 = OpenMP default)")
      ->check(CLI::NonNegativeNumber);
}

void apply(ExperimentSpec& spec, const CommonFlags& f) {
  if (f.seed) spec.cfg.seed = *f.seed;
  if (f.trials) spec.trials = *f.trials;
  if (!f.out.empty()) spec.out_path = f.out;
}

SweepResult run_and_write(const ExperimentSpec& spec, int threads) {
  SweepResult result = run_experiment(spec, threads);
  write_csv(result, spec.out_path);
  std::cerr << "wrote " << result.rows.size() << " rows to " << spec.out_path << "\n";
  if (result.singular_events > 0) {
    std::cerr << "warning: " << result.singular_events
              << " selections could not separate all users (counted as zero rate)\n";
  }
  return result;
}

int check(bool ok, const std::string& name) {
  std::printf("[%s] %s\n", ok ? "PASS" : "FAIL", name.c_str());
  return ok ? 0 : 1;
}

int selftest() {
  int failures = 0;

  const LensMatrix lens = lens_dft_matrix(256);
  const double unitary_err =
      (lens.U * lens.U.adjoint() - Eigen::MatrixXcd::Identity(256, 256)).norm();
  failures += check(unitary_err < 1e-10, "lens DFT matrix is unitary at N=256");
  failures += check(std::abs(steering_vector(256, 0.1234).norm() - 1.0) < 1e-12,
                    "steering vector has unit norm");

  SystemConfig cfg;
  cfg.N = 16;
  cfg.K = 8;
  cfg.U = 3;
  cfg.N_RF = 6;
  cfg.derive_defaults();
  const ChannelSet spatial = generate_channel(cfg, 0);
  const ChannelSet beamspace = to_beamspace(spatial, lens_dft_matrix(cfg.N));
  double energy_err = 0.0;
  for (int k = 0; k < cfg.K; ++k) {
    energy_err = std::max(energy_err, std::abs(beamspace.H[k].norm() - spatial.H[k].norm()));
  }
  failures += check(energy_err < 1e-10, "beamspace transform preserves energy");

  // Incremental gain versus the difference of two directly computed sum-rates.
  const std::vector<int> beams{0, 3, 5, 9};
  const double delta = 1e-6, xi = 10.0;
  const auto G_inv = regularized_inverses(beamspace, beams, delta);
  std::vector<int> grown = beams;
  grown.push_back(12);
  const auto G2_inv = regularized_inverses(beamspace, grown, delta);
  double incremental = 0.0, direct = 0.0;
  for (int k = 0; k < cfg.K; ++k) {
    const double t1 = G_inv[k].trace().real(), t2 = G2_inv[k].trace().real();
    incremental += cfg.U * std::log2(1.0 + kappa(G_inv[k], beamspace.H[k].row(12), 1.0 / xi));
    direct += cfg.U * (std::log2(1.0 + xi / t2) - std::log2(1.0 + xi / t1));
  }
  failures += check(std::abs(incremental - direct) <= 1e-8 * std::abs(direct),
                    "incremental beam gain matches direct sum-rate difference");

  const auto sel = select_wideband(beamspace, cfg);
  const GapPoint gp = sum_rate_gap(beamspace, sel.beams, 100.0);
  failures += check(std::abs(gp.gap_exact - gp.gap_simulated) <= 1e-8 * gp.gap_simulated,
                    "closed-form gap matches simulated gap");
  failures += check(gp.gap_bound >= gp.gap_exact, "high-SNR bound dominates the gap");

  ExperimentSpec spec = preset("fig3");
  spec.cfg = cfg;
  spec.trials = 4;
  const std::string a = format_csv(run_experiment(spec, 1));
  const std::string b = format_csv(run_experiment(spec, 2));
  failures += check(a == b, "sweep output independent of thread count");

  std::printf("%s\n", failures == 0 ? "selftest passed" : "selftest FAILED");
  return failures == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Wideband beam selection for lens-array mmWave MIMO"};
  app.require_subcommand(1);

  CommonFlags run_flags;
  std::string preset_name, spec_path;
  auto* run = app.add_subcommand("run", "run a preset or a spec-file sweep and write CSV");
  auto* preset_opt = run->add_option("--preset", preset_name, "fig3 | fig4 | fig5")
                         ->check(CLI::IsMember({"fig3", "fig4", "fig5"}));
  auto* spec_opt = run->add_option("--spec", spec_path, "key = value experiment file");
  preset_opt->excludes(spec_opt);
  add_common(run, run_flags);

  CommonFlags gap_flags;
  auto* gap = app.add_subcommand("gap", "sum-rate gap against the fully digital array");
  add_common(gap, gap_flags);

  auto* self = app.add_subcommand("selftest", "quick numerical consistency checks");

  std::string dump_path;
  std::uint64_t dump_seed = 1;
  std::int64_t dump_realization = 0;
  auto* dump = app.add_subcommand("dump-channel", "write one spatial channel realization");
  dump->add_option("--out", dump_path, "binary output path")->required();
  dump->add_option("--seed", dump_seed, "RNG seed");
  dump->add_option("--realization", dump_realization, "realization id");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*run) {
      if (preset_name.empty() && spec_path.empty()) {
        std::cerr << "run: one of --preset or --spec is required\n";
        return 2;
      }
      ExperimentSpec spec = preset_name.empty() ? load_spec_file(spec_path) : preset(preset_name);
      apply(spec, run_flags);
      if (spec.out_path.empty()) spec.out_path = "sweep.csv";
      run_and_write(spec, run_flags.threads);
      return 0;
    }
    if (*gap) {
      ExperimentSpec spec = preset("fig5");
      apply(spec, gap_flags);
      const SweepResult result = run_and_write(spec, gap_flags.threads);
      std::printf("%10s %16s %16s %16s\n", "snr_db", "gap_simulated", "gap_exact", "gap_bound");
      for (const SweepRow& row : result.rows) {
        if (row.method != Method::proposed) continue;
        std::printf("%10.2f %16.8g %16.8g %16.8g\n", row.x_value, row.extras[1], row.extras[2],
                    row.extras[3]);
      }
      return 0;
    }
    if (*self) return selftest();
    if (*dump) {
      SystemConfig cfg;
      cfg.seed = dump_seed;
      write_channel_dump(dump_path, generate_channel(cfg, dump_realization));
      return 0;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
