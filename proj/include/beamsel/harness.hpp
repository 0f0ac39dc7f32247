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

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "beamsel/config.hpp"

namespace beamsel {

enum class Scenario { sumrate_vs_snr, ee_vs_power, gap_vs_snr, custom };
enum class Method { proposed, mm, iabs, full_digital };

std::string_view to_string(Scenario s);
std::string_view to_string(Method m);
Scenario parse_scenario(std::string_view name);
Method parse_method(std::string_view name);

/// One Monte Carlo sweep. ee_vs_power sweeps transmit power in dBm with a fixed
/// noise floor; the other scenarios sweep SNR xi = rho / sigma^2 in dB.
struct ExperimentSpec {
  Scenario scenario = Scenario::sumrate_vs_snr;
  SystemConfig cfg;
  std::vector<Method> methods{Method::proposed, Method::mm, Method::iabs, Method::full_digital};
  std::vector<double> snr_grid_db;
  std::vector<double> power_grid_dbm;
  int trials = 100;
  std::string out_path;

  // SNR handed to IA-BS at selection time; defaults to the grid midpoint.
  std::optional<double> iabs_snr_db;
  double sigma2_dbm = -75.0;
  double P_RF = 34.4e-3;

  const std::vector<double>& grid() const {
    return scenario == Scenario::ee_vs_power ? power_grid_dbm : snr_grid_db;
  }
  std::string_view x_name() const {
    return scenario == Scenario::ee_vs_power ? "power_dbm" : "snr_db";
  }
  /// Linear SNR for a grid value.
  double snr_at(double x) const;
  double iabs_snr() const;

  /// Throws std::invalid_argument on an empty or unsorted grid, trials < 1,
  /// duplicate methods or an invalid SystemConfig.
  void validate() const;

  /// Hash of the canonical config and sweep definition (16 hex digits).
  std::string config_hash() const;
};

/// One long-format CSV row; `extras` follow the fixed columns in the order
/// given by extra_columns(scenario).
struct SweepRow {
  Scenario scenario;
  Method method;
  double x_value = 0.0;
  std::string metric;
  double mean = 0.0;
  double stderr_ = 0.0;
  int trials = 0;
  std::vector<double> extras;
};

struct SweepResult {
  ExperimentSpec spec;
  std::vector<SweepRow> rows;
  int singular_events = 0;  // trials where a method's selection could not separate the users
};

/// Extra CSV columns appended after config_hash for a scenario.
std::vector<std::string> extra_columns(Scenario s);

/// Runs the sweep. Trials are spread over `threads` OpenMP threads (0 = runtime
/// default); output does not depend on the thread count.
SweepResult run_experiment(const ExperimentSpec& spec, int threads = 0);

/// CSV text with `scenario,method,x_name,x_value,metric,mean,stderr,trials,seed,config_hash`
/// plus the scenario's extra columns; floats use 12 significant digits.
std::string format_csv(const SweepResult& result);

/// Writes format_csv to `path`; throws std::runtime_error if it cannot.
void write_csv(const SweepResult& result, const std::string& path);

/// fig3 (sum-rate vs SNR), fig4 (energy efficiency vs power), fig5 (gap vs SNR).
/// Throws std::invalid_argument for other names.
ExperimentSpec preset(std::string_view name);

}  // namespace beamsel
