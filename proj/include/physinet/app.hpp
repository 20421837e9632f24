#pragma once

#include <algorithm>
#include <charconv>
#include <cstdint>
#include <exception>
#include <filesystem>
#include <fstream>
#include <future>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <system_error>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "physinet/csv.hpp"
#include "physinet/datagen.hpp"
#include "physinet/gradcheck.hpp"
#include "physinet/serialize.hpp"
#include "physinet/svg.hpp"
#include "physinet/trainer.hpp"

namespace physinet::app {

enum class CaseId { Case1, Case2 };

inline std::string case_name(CaseId c) { return c == CaseId::Case1 ? "case1" : "case2"; }

struct RunSpec {
  CaseId case_id = CaseId::Case1;
  std::vector<std::uint64_t> seeds{1};
  TrainerConfig trainer;
  Case1Config case1;
  Case2Config case2;
  std::filesystem::path output_dir = ".";
};

inline const std::vector<std::string>& override_keys() {
  static const std::vector<std::string> keys = {
      "case",          "seeds",         "steps",          "points-per-step", "epochs",         "minibatch",
      "lr",            "test-size",     "out",            "case1.a",         "case1.b",        "case1.noise-std",
      "case1.x-low",   "case1.x-high",  "case2.a0-true",  "case2.a0-model",  "case2.omega-low", "case2.omega-high",
      "case2.noise-std"};
  return keys;
}

inline std::string valid_keys_message() {
  std::string msg = "valid keys:";
  for (const auto& k : override_keys()) msg += " " + k;
  return msg;
}

namespace detail {

inline double to_double(const std::string& key, const std::string& text) {
  const auto v = parse_number(text);
  if (!v) throw ConfigError("'" + key + "' expects a number, got '" + text + "'");
  return *v;
}

inline std::uint64_t to_unsigned(const std::string& key, const std::string& text) {
  std::uint64_t v = 0;
  const auto res = std::from_chars(text.data(), text.data() + text.size(), v);
  if (res.ec != std::errc{} || res.ptr != text.data() + text.size()) {
    throw ConfigError("'" + key + "' expects a non-negative integer, got '" + text + "'");
  }
  return v;
}

}  // namespace detail

inline std::vector<std::uint64_t> parse_seed_list(const std::string& text) {
  std::vector<std::uint64_t> seeds;
  for (auto field : split_fields(text)) seeds.push_back(detail::to_unsigned("seeds", std::string(field)));
  if (seeds.empty()) throw ConfigError("'seeds' needs at least one seed");
  return seeds;
}

/// Applies one key=value override; unknown keys raise ConfigError listing the valid ones.
inline void apply_override(RunSpec& spec, const std::string& key, const std::string& value) {
  using detail::to_double;
  using detail::to_unsigned;
  if (key == "case") {
    if (value == "case1") spec.case_id = CaseId::Case1;
    else if (value == "case2") spec.case_id = CaseId::Case2;
    else throw ConfigError("'case' must be case1 or case2, got '" + value + "'");
  } else if (key == "seeds") {
    spec.seeds = parse_seed_list(value);
  } else if (key == "steps") {
    spec.trainer.steps = to_unsigned(key, value);
  } else if (key == "points-per-step") {
    spec.trainer.points_per_step = to_unsigned(key, value);
  } else if (key == "epochs") {
    spec.trainer.epochs_per_step = to_unsigned(key, value);
  } else if (key == "minibatch") {
    spec.trainer.minibatch_size = to_unsigned(key, value);
  } else if (key == "lr") {
    spec.trainer.learning_rate = to_double(key, value);
  } else if (key == "test-size") {
    spec.trainer.test_set_size = to_unsigned(key, value);
  } else if (key == "out") {
    spec.output_dir = value;
  } else if (key == "case1.a") {
    spec.case1.a = to_double(key, value);
  } else if (key == "case1.b") {
    spec.case1.b = to_double(key, value);
  } else if (key == "case1.noise-std") {
    spec.case1.noise_std = to_double(key, value);
  } else if (key == "case1.x-low") {
    spec.case1.x_low = to_double(key, value);
  } else if (key == "case1.x-high") {
    spec.case1.x_high = to_double(key, value);
  } else if (key == "case2.a0-true") {
    spec.case2.a0_true = to_double(key, value);
  } else if (key == "case2.a0-model") {
    spec.case2.a0_model = to_double(key, value);
  } else if (key == "case2.omega-low") {
    spec.case2.omega_low = to_double(key, value);
  } else if (key == "case2.omega-high") {
    spec.case2.omega_high = to_double(key, value);
  } else if (key == "case2.noise-std") {
    spec.case2.noise_std = to_double(key, value);
  } else {
    throw ConfigError("unknown key '" + key + "'; " + valid_keys_message());
  }
}

/// Flat JSON object whose keys mirror the CLI flag names.
inline void apply_config_json(RunSpec& spec, const nlohmann::json& config) {
  if (!config.is_object()) throw ConfigError("config file must hold a flat JSON object");
  for (const auto& [key, value] : config.items()) {
    std::string text;
    if (value.is_string()) {
      text = value.get<std::string>();
    } else if (value.is_array()) {
      for (const auto& v : value) text += (text.empty() ? "" : ",") + (v.is_string() ? v.get<std::string>() : v.dump());
    } else if (value.is_number_float()) {
      text = format_number(value.get<double>());
    } else {
      text = value.dump();
    }
    apply_override(spec, key, text);
  }
}

inline void apply_config_file(RunSpec& spec, const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file " + path.string());
  nlohmann::json config;
  try {
    in >> config;
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError("config file " + path.string() + ": " + e.what());
  }
  apply_config_json(spec, config);
}

inline Scenario make_scenario(const RunSpec& spec) {
  return spec.case_id == CaseId::Case1 ? make_case1_scenario(spec.case1) : make_case2_scenario(spec.case2);
}

namespace detail {

inline void write_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << content;
  if (!out) throw std::runtime_error("failed writing " + path.string());
}

}  // namespace detail

// Runs every seed (concurrently; runs share nothing) and writes
// steps_<case>_<seed>.csv, snapshots_<case>_<seed>.csv, model_<case>_<seed>.json
// and summary_<case>.csv into spec.output_dir.
inline int cmd_run(const RunSpec& spec, std::ostream& log, std::ostream& err) {
  try {
    if (spec.seeds.empty()) throw ConfigError("at least one seed is required");
    spec.trainer.validate();
    const Scenario scenario = make_scenario(spec);
    std::error_code ec;
    std::filesystem::create_directories(spec.output_dir, ec);
    if (ec) throw std::runtime_error("cannot create output directory " + spec.output_dir.string() + ": " + ec.message());

    std::vector<std::future<LifecycleResult>> runs;
    for (const auto seed : spec.seeds) {
      TrainerConfig config = spec.trainer;
      config.seed = seed;
      runs.push_back(std::async(std::launch::async, [&scenario, config] { return run_lifecycle(scenario, config); }));
    }

    const std::string name = case_name(spec.case_id);
    std::vector<std::pair<std::uint64_t, std::vector<StepRecord>>> summary;
    for (std::size_t i = 0; i < runs.size(); ++i) {
      const auto result = runs[i].get();
      const auto seed = spec.seeds[i];
      const auto stem = name + "_" + std::to_string(seed);
      std::ostringstream steps, snapshots;
      write_steps_csv(steps, result.records);
      write_snapshots_csv(snapshots, result.snapshots);
      detail::write_file(spec.output_dir / ("steps_" + stem + ".csv"), steps.str());
      detail::write_file(spec.output_dir / ("snapshots_" + stem + ".csv"), snapshots.str());
      detail::write_file(spec.output_dir / ("model_" + stem + ".json"), to_json(result.physinet).dump(2) + "\n");
      const auto& last = result.records.back();
      log << name << " seed " << seed << ": step " << last.step << " mse physinet " << format_number(last.mse_physinet)
          << " nn_only " << format_number(last.mse_nn_only) << " physics_only "
          << format_number(last.mse_physics_only) << '\n';
      summary.emplace_back(seed, result.records);
    }
    std::ostringstream table;
    write_summary_csv(table, summary);
    detail::write_file(spec.output_dir / ("summary_" + name + ".csv"), table.str());
    return 0;
  } catch (const std::exception& e) {
    err << "run: " << e.what() << '\n';
    return 1;
  }
}

inline int cmd_plot(const std::filesystem::path& input, PlotKind kind, const std::filesystem::path& output,
                    std::ostream& err) {
  try {
    std::ifstream in(input);
    if (!in) throw std::runtime_error("cannot read " + input.string());
    const auto records = read_steps_csv(in);
    detail::write_file(output, render_svg(chart_from_steps(records, kind)));
    return 0;
  } catch (const std::exception& e) {
    err << "plot: " << input.string() << ": " << e.what() << '\n';
    return 1;
  }
}

inline int cmd_gradcheck(std::uint64_t seed, bool corrupt_derivative, std::ostream& out, std::ostream& err) {
  const auto report = run_gradient_check(seed, 50, corrupt_derivative);
  out << "max relative error " << format_number(report.worst.relative_error) << " (tolerance "
      << format_number(report.tolerance) << ")\n";
  if (report.passed()) return 0;
  const auto& w = report.worst;
  err << "gradcheck failed: architecture [";
  for (std::size_t i = 0; i < report.worst_architecture.size(); ++i) {
    err << (i ? "," : "") << report.worst_architecture[i];
  }
  err << "] layer " << w.layer << (w.is_bias ? " bias " : " weight ") << w.row;
  if (!w.is_bias) err << "," << w.col;
  err << '\n';
  return 1;
}

inline int cmd_sample(CaseId case_id, std::size_t n, std::uint64_t seed, const std::filesystem::path& output,
                      const RunSpec& spec, std::ostream& err) {
  try {
    Rng rng(seed);
    std::ostringstream csv;
    if (case_id == CaseId::Case1) {
      write_dataset_csv(csv, sample_case1(spec.case1, n, rng), "x,y");
    } else {
      write_dataset_csv(csv, sample_case2(spec.case2, n, rng), "omega,magnitude");
    }
    detail::write_file(output, csv.str());
    return 0;
  } catch (const std::exception& e) {
    err << "sample: " << e.what() << '\n';
    return 1;
  }
}

}  // namespace physinet::app
