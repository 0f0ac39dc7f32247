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

#include <cstdio>
#include <sstream>
#include <string>

#include "beamsel/beamspace.hpp"
#include "beamsel/harness.hpp"
#include "beamsel/metrics.hpp"
#include "beamsel/spec_file.hpp"
#include "doctest.h"

using namespace beamsel;

namespace {

ExperimentSpec small_spec(Scenario scenario) {
  ExperimentSpec spec;
  spec.scenario = scenario;
  spec.cfg.N = 32;
  spec.cfg.K = 8;
  spec.cfg.U = 3;
  spec.cfg.N_RF = 6;
  spec.cfg.derive_defaults();
  spec.snr_grid_db = {-10.0, 0.0, 10.0, 20.0};
  spec.power_grid_dbm = {0.0, 10.0, 20.0};
  spec.trials = 6;
  return spec;
}

std::vector<std::string> lines_of(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) out.push_back(line);
  return out;
}

}  // namespace

TEST_SUITE("harness") {
  TEST_CASE("presets") {
    const ExperimentSpec fig3 = preset("fig3");
    CHECK(fig3.cfg.N == 256);
    CHECK(fig3.cfg.K == 128);
    CHECK(fig3.cfg.N_RF == 16);
    CHECK(fig3.methods.size() == 4);
    CHECK(fig3.grid().front() == -10.0);
    CHECK(fig3.grid().back() == 30.0);

    const ExperimentSpec fig4 = preset("fig4");
    CHECK(fig4.scenario == Scenario::ee_vs_power);
    CHECK(fig4.grid().front() == 0.0);
    CHECK(fig4.grid().back() == 30.0);
    CHECK(fig4.x_name() == "power_dbm");
    CHECK(fig4.snr_at(0.0) == doctest::Approx(dbm_to_watts(0.0) / dbm_to_watts(-75.0)));

    const ExperimentSpec fig5 = preset("fig5");
    CHECK(fig5.scenario == Scenario::gap_vs_snr);
    CHECK(fig5.methods == std::vector<Method>{Method::proposed, Method::full_digital});

    CHECK_THROWS_AS(preset("fig9"), std::invalid_argument);
    CHECK_THROWS_AS(parse_method("greedy"), std::invalid_argument);
    CHECK(parse_method("iabs") == Method::iabs);
  }

  TEST_CASE("single fully digital trial equals the direct rate") {
    ExperimentSpec spec = small_spec(Scenario::sumrate_vs_snr);
    spec.trials = 1;
    spec.methods = {Method::full_digital};
    const SweepResult r = run_experiment(spec, 1);
    REQUIRE(r.rows.size() == spec.snr_grid_db.size());
    const ChannelSet h = to_beamspace(generate_channel(spec.cfg, 0), lens_dft_matrix(spec.cfg.N));
    for (const SweepRow& row : r.rows) {
      CHECK(row.mean == doctest::Approx(sum_rate(h, db_to_linear(row.x_value)).C_avg).epsilon(1e-12));
      CHECK(row.stderr_ == 0.0);
      CHECK(row.trials == 1);
    }
  }

  TEST_CASE("CSV is reproducible across runs and thread counts") {
    for (Scenario s : {Scenario::sumrate_vs_snr, Scenario::ee_vs_power, Scenario::gap_vs_snr}) {
      const ExperimentSpec spec = small_spec(s);
      const std::string one = format_csv(run_experiment(spec, 1));
      CHECK(one == format_csv(run_experiment(spec, 1)));
      CHECK(one == format_csv(run_experiment(spec, 4)));
    }
  }

  TEST_CASE("CSV layout") {
    const ExperimentSpec spec = small_spec(Scenario::gap_vs_snr);
    const SweepResult r = run_experiment(spec, 2);
    const auto lines = lines_of(format_csv(r));
    REQUIRE(lines.size() == 1 + spec.methods.size() * spec.snr_grid_db.size());
    CHECK(lines[0] ==
          "scenario,method,x_name,x_value,metric,mean,stderr,trials,seed,config_hash,"
          "c_total_mean,gap_simulated,gap_exact,gap_bound");
    CHECK(lines[1].rfind("gap_vs_snr,proposed,snr_db,-10,sum_rate,", 0) == 0);
    CHECK(lines[1].find("," + spec.config_hash() + ",") != std::string::npos);
    for (const SweepRow& row : r.rows) {
      REQUIRE(row.extras.size() == 4);
      CHECK(row.extras[3] >= row.extras[2] - 1e-12);
      CHECK(std::abs(row.extras[2] - row.extras[1]) <= 1e-8 * (1.0 + row.extras[1]));
    }

    SweepResult fake;
    fake.spec = small_spec(Scenario::sumrate_vs_snr);
    fake.rows.push_back({Scenario::sumrate_vs_snr, Method::mm, 1.0, "sum_rate", 1.0 / 3.0, 0.0, 1, {2.0 / 3.0}});
    CHECK(lines_of(format_csv(fake))[1].find(",0.333333333333,") != std::string::npos);

    const auto ee = lines_of(format_csv(run_experiment(small_spec(Scenario::ee_vs_power), 2)));
    CHECK(ee[0].ends_with("config_hash,c_avg_mean,c_total_mean"));
    CHECK(ee[1].find(",power_dbm,") != std::string::npos);
    CHECK(ee[1].find(",energy_efficiency,") != std::string::npos);
  }

  TEST_CASE("sum-rate grows with SNR") {
    const SweepResult r = run_experiment(small_spec(Scenario::sumrate_vs_snr), 2);
    for (std::size_t i = 1; i < r.rows.size(); ++i) {
      if (r.rows[i].method == r.rows[i - 1].method) CHECK(r.rows[i].mean >= r.rows[i - 1].mean);
    }
  }

  TEST_CASE("output path and config hash") {
    ExperimentSpec spec = small_spec(Scenario::sumrate_vs_snr);
    spec.trials = 1;
    const SweepResult r = run_experiment(spec, 1);
    CHECK_THROWS_AS(write_csv(r, "/nonexistent-dir/out.csv"), std::runtime_error);

    const std::string path = "harness_test_out.csv";
    write_csv(r, path);
    std::FILE* f = std::fopen(path.c_str(), "rb");
    REQUIRE(f != nullptr);
    std::string text;
    for (int ch; (ch = std::fgetc(f)) != EOF;) text.push_back(static_cast<char>(ch));
    std::fclose(f);
    std::remove(path.c_str());
    CHECK(text == format_csv(r));

    ExperimentSpec other = spec;
    CHECK(other.config_hash() == spec.config_hash());
    other.cfg.N_RF = 5;
    CHECK(other.config_hash() != spec.config_hash());
    CHECK(spec.config_hash().size() == 16);
  }

  TEST_CASE("spec validation") {
    ExperimentSpec spec = small_spec(Scenario::sumrate_vs_snr);
    CHECK_NOTHROW(spec.validate());
    spec.trials = 0;
    CHECK_THROWS_AS(spec.validate(), std::invalid_argument);
    spec = small_spec(Scenario::sumrate_vs_snr);
    spec.snr_grid_db = {10.0, 0.0};
    CHECK_THROWS_AS(spec.validate(), std::invalid_argument);
    spec = small_spec(Scenario::sumrate_vs_snr);
    spec.cfg.N_RF = 2;
    CHECK_THROWS_AS(spec.validate(), std::invalid_argument);
  }

  TEST_CASE("spec file parsing") {
    const ExperimentSpec spec = parse_spec_text(
        "# small sweep\n"
        "scenario = gap_vs_snr\n"
        "\n"
        "N = 32\n"
        "K = 16\n"
        "U = 2\n"
        "N_RF = 4\n"
        "f_c = 60e9\n"
        "methods = proposed, mm\n"
        "snr_grid_db = 0, 5, 10\n"
        "trials = 7\n"
        "distinct_init = true\n");
    CHECK(spec.scenario == Scenario::gap_vs_snr);
    CHECK(spec.cfg.N == 32);
    CHECK(spec.cfg.N_Q == 4);
    CHECK(spec.cfg.d == doctest::Approx(spec.cfg.c / 120e9));
    CHECK(spec.cfg.T_s == doctest::Approx(1.0 / spec.cfg.B));
    CHECK(spec.cfg.distinct_init);
    CHECK(spec.methods == std::vector<Method>{Method::proposed, Method::mm});
    CHECK(spec.snr_grid_db == std::vector<double>{0.0, 5.0, 10.0});
    CHECK(spec.trials == 7);

    CHECK(parse_spec_text("N_Q = 3\nsnr_grid_db = 0\n").cfg.N_Q == 3);

    auto message = [](const std::string& text) {
      try {
        parse_spec_text(text);
      } catch (const std::invalid_argument& e) {
        return std::string(e.what());
      }
      return std::string();
    };
    CHECK(message("snr_grid_db = 0\nfoo = 1\n").starts_with("line 2: "));
    CHECK(message("N = 16\nN = 32\n").starts_with("line 2: "));
    CHECK(message("N = sixteen\n").starts_with("line 1: "));
    CHECK(message("just words\n").starts_with("line 1: "));
    CHECK_FALSE(message("snr_grid_db = 0\nN_RF = 300\n").empty());
    CHECK_THROWS_AS(load_spec_file("/nonexistent/spec.txt"), std::runtime_error);
  }
}
