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

#include "beamsel/harness.hpp"

#include <omp.h>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <exception>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "beamsel/beamspace.hpp"
#include "beamsel/channel.hpp"
#include "beamsel/metrics.hpp"
#include "beamsel/selection.hpp"

namespace beamsel {

std::string_view to_string(Scenario s) {
  switch (s) {
    case Scenario::sumrate_vs_snr: return "sumrate_vs_snr";
    case Scenario::ee_vs_power: return "ee_vs_power";
    case Scenario::gap_vs_snr: return "gap_vs_snr";
    case Scenario::custom: return "custom";
  }
  return "?";
}

std::string_view to_string(Method m) {
  switch (m) {
    case Method::proposed: return "proposed";
    case Method::mm: return "mm";
    case Method::iabs: return "iabs";
    case Method::full_digital: return "full_digital";
  }
  return "?";
}

Scenario parse_scenario(std::string_view name) {
  for (Scenario s : {Scenario::sumrate_vs_snr, Scenario::ee_vs_power, Scenario::gap_vs_snr,
                     Scenario::custom}) {
    if (to_string(s) == name) return s;
  }
  throw std::invalid_argument("unknown scenario: " + std::string(name));
}

Method parse_method(std::string_view name) {
  for (Method m : {Method::proposed, Method::mm, Method::iabs, Method::full_digital}) {
    if (to_string(m) == name) return m;
  }
  throw std::invalid_argument("unknown method: " + std::string(name));
}

double ExperimentSpec::snr_at(double x) const {
  if (scenario == Scenario::ee_vs_power) return dbm_to_watts(x) / dbm_to_watts(sigma2_dbm);
  return db_to_linear(x);
}

double ExperimentSpec::iabs_snr() const {
  if (iabs_snr_db) return db_to_linear(*iabs_snr_db);
  const auto& g = grid();
  return snr_at(0.5 * (g.front() + g.back()));
}

void ExperimentSpec::validate() const {
  cfg.validate();
  const auto& g = grid();
  if (g.empty()) throw std::invalid_argument("ExperimentSpec: empty grid");
  if (!std::is_sorted(g.begin(), g.end())) {
    throw std::invalid_argument("ExperimentSpec: grid must be sorted");
  }
  if (trials < 1) throw std::invalid_argument("ExperimentSpec: trials must be >= 1");
  if (methods.empty()) throw std::invalid_argument("ExperimentSpec: no methods");
  for (std::size_t i = 0; i < methods.size(); ++i) {
    for (std::size_t j = i + 1; j < methods.size(); ++j) {
      if (methods[i] == methods[j]) throw std::invalid_argument("ExperimentSpec: duplicate method");
    }
  }
  if (P_RF <= 0.0) throw std::invalid_argument("ExperimentSpec: P_RF must be positive");
}

std::string ExperimentSpec::config_hash() const {
  std::ostringstream os;
  os << cfg.canonical_text() << "scenario = " << to_string(scenario) << "\nmethods =";
  for (Method m : methods) os << ' ' << to_string(m);
  char buf[64];
  os << "\ngrid =";
  for (double x : grid()) {
    std::snprintf(buf, sizeof(buf), " %.17g", x);
    os << buf;
  }
  std::snprintf(buf, sizeof(buf), "%.17g", iabs_snr());
  os << "\ntrials = " << trials << "\niabs_snr = " << buf;
  std::snprintf(buf, sizeof(buf), "%.17g %.17g", sigma2_dbm, P_RF);
  os << "\nenergy = " << buf << "\n";
  return short_hash(os.str());
}

std::vector<std::string> extra_columns(Scenario s) {
  switch (s) {
    case Scenario::ee_vs_power: return {"c_avg_mean", "c_total_mean"};
    case Scenario::gap_vs_snr:
      return {"c_total_mean", "gap_simulated", "gap_exact", "gap_bound"};
    default: return {"c_total_mean"};
  }
}

namespace {

// Per-trial values for one (method, grid point).
struct Sample {
  double metric = 0.0;
  double c_avg = 0.0;
  double c_total = 0.0;
  double gap_simulated = 0.0;
  double gap_exact = 0.0;
  double gap_bound = 0.0;
};

BeamSet select(Method m, const ChannelSet& beamspace, const ExperimentSpec& spec) {
  switch (m) {
    case Method::proposed: return select_wideband(beamspace, spec.cfg, Exec::serial).beams;
    case Method::mm: return select_mm(beamspace, spec.cfg);
    case Method::iabs: return select_iabs(beamspace, spec.cfg, spec.iabs_snr());
    case Method::full_digital: return full_digital_set(beamspace.rows());
  }
  throw std::logic_error("unhandled method");
}

// Fills samples[method * G + point]; returns the number of singular selections.
int run_trial(const ExperimentSpec& spec, const LensMatrix& lens, int trial,
              std::vector<Sample>& samples) {
  const ChannelSet beamspace =
      to_beamspace(generate_channel(spec.cfg, trial, Exec::serial), lens, Exec::serial);
  const auto& grid = spec.grid();
  const int G = static_cast<int>(grid.size());
  const int K = beamspace.subcarriers();
  const int users = beamspace.users();
  int singular = 0;

  for (std::size_t mi = 0; mi < spec.methods.size(); ++mi) {
    Sample* out = &samples[mi * G];
    try {
      const BeamSet set = select(spec.methods[mi], beamspace, spec);
      if (spec.scenario == Scenario::gap_vs_snr) {
        const GapTraces traces = gap_traces(beamspace, set.beams());
        for (int j = 0; j < G; ++j) {
          const double xi = spec.snr_at(grid[j]);
          const GapPoint gp = gap_at(traces, xi);
          Sample& s = out[j];
          s.c_total = rate_from_traces(traces.selected, users, xi);
          s.c_avg = s.c_total / K;
          s.metric = s.c_avg;
          s.gap_simulated = gp.gap_simulated / K;
          s.gap_exact = gp.gap_exact / K;
          s.gap_bound = gp.gap_bound / K;
        }
        continue;
      }
      const auto traces = inverse_gram_traces(reduce(beamspace, set), 0.0);
      for (int j = 0; j < G; ++j) {
        Sample& s = out[j];
        s.c_total = rate_from_traces(traces, users, spec.snr_at(grid[j]));
        s.c_avg = s.c_total / K;
        if (spec.scenario == Scenario::ee_vs_power) {
          const EnergyConfig ec{dbm_to_watts(grid[j]), dbm_to_watts(spec.sigma2_dbm), spec.P_RF};
          s.metric = energy_efficiency(s.c_avg, ec, set.size());
        } else {
          s.metric = s.c_avg;
        }
      }
    } catch (const SingularChannelError&) {
      // ZF cannot serve every user with this selection: zero throughput.
      for (int j = 0; j < G; ++j) out[j] = Sample{};
      ++singular;
    }
  }
  return singular;
}

struct Moments {
  double mean = 0.0;
  double stderr_ = 0.0;
};

template <typename Get>
Moments moments(const std::vector<std::vector<Sample>>& per_trial, std::size_t slot, Get get) {
  const std::size_t n = per_trial.size();
  double sum = 0.0;
  for (const auto& t : per_trial) sum += get(t[slot]);
  Moments m;
  m.mean = sum / n;
  if (n > 1) {
    double ss = 0.0;
    for (const auto& t : per_trial) {
      const double d = get(t[slot]) - m.mean;
      ss += d * d;
    }
    m.stderr_ = std::sqrt(ss / (n - 1) / n);
  }
  return m;
}

}  // namespace

SweepResult run_experiment(const ExperimentSpec& spec, int threads) {
  spec.validate();
  const LensMatrix lens = lens_dft_matrix(spec.cfg.N);
  const int G = static_cast<int>(spec.grid().size());
  const std::size_t slots = spec.methods.size() * G;

  std::vector<std::vector<Sample>> per_trial(spec.trials, std::vector<Sample>(slots));
  std::vector<int> singular(spec.trials, 0);
  std::vector<std::exception_ptr> errors(spec.trials);
  const int nthreads = threads > 0 ? threads : omp_get_max_threads();

#pragma omp parallel for schedule(dynamic) num_threads(nthreads)
  for (int t = 0; t < spec.trials; ++t) {
    try {
      singular[t] = run_trial(spec, lens, t, per_trial[t]);
    } catch (...) {
      errors[t] = std::current_exception();
    }
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }

  SweepResult result;
  result.spec = spec;
  for (int s : singular) result.singular_events += s;

  const auto& grid = spec.grid();
  const std::string metric =
      spec.scenario == Scenario::ee_vs_power ? "energy_efficiency" : "sum_rate";
  for (std::size_t mi = 0; mi < spec.methods.size(); ++mi) {
    for (int j = 0; j < G; ++j) {
      const std::size_t slot = mi * G + j;
      const Moments head = moments(per_trial, slot, [](const Sample& s) { return s.metric; });
      SweepRow row{spec.scenario, spec.methods[mi], grid[j], metric, head.mean, head.stderr_,
                   spec.trials, {}};
      auto mean_of = [&](auto get) { return moments(per_trial, slot, get).mean; };
      const double c_total = mean_of([](const Sample& s) { return s.c_total; });
      switch (spec.scenario) {
        case Scenario::ee_vs_power:
          row.extras = {mean_of([](const Sample& s) { return s.c_avg; }), c_total};
          break;
        case Scenario::gap_vs_snr:
          row.extras = {c_total, mean_of([](const Sample& s) { return s.gap_simulated; }),
                        mean_of([](const Sample& s) { return s.gap_exact; }),
                        mean_of([](const Sample& s) { return s.gap_bound; })};
          break;
        default:
          row.extras = {c_total};
      }
      result.rows.push_back(std::move(row));
    }
  }
  return result;
}

namespace {

std::string fmt12(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

}  // namespace

std::string format_csv(const SweepResult& result) {
  const ExperimentSpec& spec = result.spec;
  std::ostringstream os;
  os << "scenario,method,x_name,x_value,metric,mean,stderr,trials,seed,config_hash";
  for (const auto& col : extra_columns(spec.scenario)) os << ',' << col;
  os << '\n';
  const std::string hash = spec.config_hash();
  for (const SweepRow& row : result.rows) {
    os << to_string(row.scenario) << ',' << to_string(row.method) << ',' << spec.x_name() << ','
       << fmt12(row.x_value) << ',' << row.metric << ',' << fmt12(row.mean) << ','
       << fmt12(row.stderr_) << ',' << row.trials << ',' << spec.cfg.seed << ',' << hash;
    for (double v : row.extras) os << ',' << fmt12(v);
    os << '\n';
  }
  return os.str();
}

void write_csv(const SweepResult& result, const std::string& path) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw std::runtime_error("cannot open output file: " + path);
  os << format_csv(result);
  if (!os) throw std::runtime_error("write failed: " + path);
}

namespace {

std::vector<double> arange(double lo, double hi, double step) {
  std::vector<double> v;
  for (int i = 0;; ++i) {
    const double x = lo + i * step;
    if (x > hi + 1e-9) break;
    v.push_back(x);
  }
  return v;
}

}  // namespace

ExperimentSpec preset(std::string_view name) {
  ExperimentSpec spec;
  if (name == "fig3") {
    spec.scenario = Scenario::sumrate_vs_snr;
    spec.snr_grid_db = arange(-10.0, 30.0, 5.0);
  } else if (name == "fig4") {
    spec.scenario = Scenario::ee_vs_power;
    spec.power_grid_dbm = arange(0.0, 30.0, 2.0);
  } else if (name == "fig5") {
    spec.scenario = Scenario::gap_vs_snr;
    spec.methods = {Method::proposed, Method::full_digital};
    spec.snr_grid_db = arange(-10.0, 60.0, 5.0);
  } else {
    throw std::invalid_argument("unknown preset: " + std::string(name));
  }
  spec.out_path = std::string(name) + ".csv";
  return spec;
}

}  // namespace beamsel
