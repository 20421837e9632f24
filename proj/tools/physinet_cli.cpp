#include <cstdint>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "physinet/app.hpp"

namespace {

using physinet::app::RunSpec;

// Defaults < --config file < individual flags < --set key=value.
struct RunFlags {
  std::string config;
  std::vector<std::pair<std::string, CLI::Option*>> flags;
  std::vector<std::string> values;
  std::vector<std::string> sets;
};

void add_run_flags(CLI::App& cmd, RunFlags& f) {
  static const std::vector<std::pair<std::string, std::string>> kFlags = {
      {"case", "case1 or case2"},
      {"seeds", "comma-separated seed list"},
      {"steps", "lifecycle steps"},
      {"points-per-step", "training points drawn per step"},
      {"epochs", "epochs per step"},
      {"minibatch", "minibatch size"},
      {"lr", "Adam learning rate"},
      {"test-size", "held-out test points"},
      {"out", "output directory"}};
  f.values.resize(kFlags.size());
  for (std::size_t i = 0; i < kFlags.size(); ++i) {
    f.flags.emplace_back(kFlags[i].first, cmd.add_option("--" + kFlags[i].first, f.values[i], kFlags[i].second));
  }
  cmd.add_option("--config", f.config, "flat JSON config; keys mirror flag names");
  cmd.add_option("--set", f.sets, "extra override key=value (e.g. case1.noise-std=0.3)");
}

RunSpec build_spec(const RunFlags& f) {
  RunSpec spec;
  if (!f.config.empty()) physinet::app::apply_config_file(spec, f.config);
  for (std::size_t i = 0; i < f.flags.size(); ++i) {
    if (f.flags[i].second->count() > 0) physinet::app::apply_override(spec, f.flags[i].first, f.values[i]);
  }
  for (const auto& kv : f.sets) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos) throw physinet::ConfigError("--set expects key=value, got '" + kv + "'");
    physinet::app::apply_override(spec, kv.substr(0, eq), kv.substr(eq + 1));
  }
  return spec;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App cli{"PhysiNet hybrid physics + neural network lifecycle experiments"};
  cli.require_subcommand(1);

  RunFlags run_flags;
  auto* run = cli.add_subcommand("run", "run the lifecycle experiment for each seed and write CSVs");
  add_run_flags(*run, run_flags);

  std::string plot_input, plot_output, plot_kind = "mse";
  auto* plot = cli.add_subcommand("plot", "render a steps CSV as an SVG line chart");
  plot->add_option("--input", plot_input, "steps CSV written by run")->required();
  plot->add_option("--kind", plot_kind, "mse or weight_ratio")->check(CLI::IsMember({"mse", "weight_ratio"}));
  plot->add_option("--output", plot_output, "SVG path")->required();

  std::uint64_t grad_seed = 1;
  bool corrupt = false;
  auto* gradcheck = cli.add_subcommand("gradcheck", "compare backprop with central finite differences");
  gradcheck->add_option("--seed", grad_seed, "seed for the random networks");
  gradcheck->add_flag("--corrupt-derivative", corrupt, "perturb one analytic derivative (negative control)");

  RunFlags sample_flags;
  std::string sample_case = "case1";
  std::size_t sample_n = 80;
  std::uint64_t sample_seed = 1;
  std::string sample_output;
  auto* sample = cli.add_subcommand("sample", "export one generated measurement batch as CSV");
  sample->add_option("--case", sample_case, "case1 or case2");
  sample->add_option("-n,--count", sample_n, "number of points");
  sample->add_option("--seed", sample_seed, "generator seed");
  sample->add_option("--output", sample_output, "CSV path")->required();
  sample->add_option("--config", sample_flags.config, "flat JSON config");
  sample->add_option("--set", sample_flags.sets, "override key=value");

  CLI11_PARSE(cli, argc, argv);

  try {
    if (run->parsed()) {
      return physinet::app::cmd_run(build_spec(run_flags), std::cout, std::cerr);
    }
    if (plot->parsed()) {
      const auto kind = plot_kind == "mse" ? physinet::PlotKind::Mse : physinet::PlotKind::WeightRatio;
      return physinet::app::cmd_plot(plot_input, kind, plot_output, std::cerr);
    }
    if (gradcheck->parsed()) {
      return physinet::app::cmd_gradcheck(grad_seed, corrupt, std::cout, std::cerr);
    }
    if (sample->parsed()) {
      auto spec = build_spec(sample_flags);
      physinet::app::apply_override(spec, "case", sample_case);
      return physinet::app::cmd_sample(spec.case_id, sample_n, sample_seed, sample_output, spec, std::cerr);
    }
  } catch (const std::exception& e) {
    std::cerr << e.what() << '\n';
    return 2;
  }
  return 0;
}
