// Acceptance suite: reruns both case studies over seeds 1..10 and checks
// every exit criterion at its pinned tolerance, one PASS/FAIL line each.
//
// usage: acceptance <path-to-physinet-cli> <scratch-dir>

#include <sys/wait.h>

#include <algorithm>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "physinet/physinet.hpp"

namespace fs = std::filesystem;
using namespace physinet;

namespace {

constexpr std::uint64_t kFirstSeed = 1;
constexpr std::uint64_t kSeedCount = 10;

struct Outcome {
  bool pass;
  std::string detail;
};

double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const auto n = v.size();
  return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4g", v);
  return buf;
}

std::vector<LifecycleResult> run_seeds(const Scenario& scenario) {
  std::vector<LifecycleResult> runs;
  for (std::uint64_t seed = kFirstSeed; seed < kFirstSeed + kSeedCount; ++seed) {
    TrainerConfig cfg;
    cfg.seed = seed;
    runs.push_back(run_lifecycle(scenario, cfg));
  }
  return runs;
}

template <class Pred>
int count_runs(const std::vector<LifecycleResult>& runs, Pred pred) {
  return static_cast<int>(std::count_if(runs.begin(), runs.end(), pred));
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

}  // namespace

int main(int argc, char** argv) {
  if (argc != 3) {
    std::cerr << "usage: acceptance <physinet-cli> <scratch-dir>\n";
    return 2;
  }
  const std::string cli = argv[1];
  const fs::path scratch = argv[2];

  const auto case1 = make_case1_scenario();
  const auto case2 = make_case2_scenario();
  const std::string physics1_before = physics_to_json(case1.physics).dump();
  const std::string physics2_before = physics_to_json(case2.physics).dump();
  const auto runs1 = run_seeds(case1);
  const auto runs2 = run_seeds(case2);

  std::vector<std::pair<std::string, std::function<Outcome()>>> criteria;

  criteria.emplace_back("AC1 case1 physics-only MSE = 11.92 +/- 0.6 (analytic 11.9167) on every seed", [&] {
    double lo = 1e300, hi = -1e300;
    for (const auto& r : runs1) {
      lo = std::min(lo, r.records.front().mse_physics_only);
      hi = std::max(hi, r.records.front().mse_physics_only);
    }
    return Outcome{lo >= 11.92 - 0.6 && hi <= 11.92 + 0.6, "range [" + num(lo) + ", " + num(hi) + "]"};
  });

  criteria.emplace_back("AC2 case1 step 9: physinet < physics in >=9/10, < 2.0 in >=8/10", [&] {
    const int below_physics =
        count_runs(runs1, [](const auto& r) { return r.records[9].mse_physinet < r.records[9].mse_physics_only; });
    const int below_two = count_runs(runs1, [](const auto& r) { return r.records[9].mse_physinet < 2.0; });
    return Outcome{below_physics >= 9 && below_two >= 8,
                   std::to_string(below_physics) + "/10 below physics, " + std::to_string(below_two) + "/10 below 2"};
  });

  criteria.emplace_back("AC3 case1 median physinet MSE at step 99 in [0.25, 0.5]", [&] {
    std::vector<double> final_mse;
    for (const auto& r : runs1) final_mse.push_back(r.records[99].mse_physinet);
    const double m = median(final_mse);
    return Outcome{m >= 0.25 && m <= 0.5, "median " + num(m)};
  });

  criteria.emplace_back("AC4 case1 step 99: physinet <= nn_only in >=7/10", [&] {
    const int wins =
        count_runs(runs1, [](const auto& r) { return r.records[99].mse_physinet <= r.records[99].mse_nn_only; });
    return Outcome{wins >= 7, std::to_string(wins) + "/10"};
  });

  criteria.emplace_back("AC5 weight ratio: starts at 99, < 2 by step 20 in >=8/10, final in [0.3, 3]", [&] {
    const bool starts = weight_ratio(case1.initial_weights) == 99.0;
    const int early = count_runs(runs1, [](const auto& r) {
      for (std::size_t s = 0; s <= 20; ++s) {
        if (r.records[s].weight_ratio && *r.records[s].weight_ratio < 2.0) return true;
      }
      return false;
    });
    const int final_ok = count_runs(runs1, [](const auto& r) {
      const auto ratio = r.records[99].weight_ratio;
      return ratio && *ratio >= 0.3 && *ratio <= 3.0;
    });
    return Outcome{starts && early >= 8 && final_ok == 10,
                   std::string("initial ") + (starts ? "99" : "not 99") + ", " + std::to_string(early) +
                       "/10 below 2 by step 20, " + std::to_string(final_ok) + "/10 final in range"};
  });

  criteria.emplace_back("AC6 case2: physics constant; physinet < physics for steps >= 9 in >=9/10; "
                        "physinet <= nn_only at 99 in >=7/10", [&] {
    const bool constant = std::all_of(runs2.begin(), runs2.end(), [](const auto& r) {
      return std::all_of(r.records.begin(), r.records.end(),
                         [&](const auto& s) { return s.mse_physics_only == r.records.front().mse_physics_only; });
    });
    const int below = count_runs(runs2, [](const auto& r) {
      for (std::size_t s = 9; s < r.records.size(); ++s) {
        if (!(r.records[s].mse_physinet < r.records[s].mse_physics_only)) return false;
      }
      return true;
    });
    const int wins =
        count_runs(runs2, [](const auto& r) { return r.records[99].mse_physinet <= r.records[99].mse_nn_only; });
    return Outcome{constant && below >= 9 && wins >= 7,
                   std::string(constant ? "constant" : "NOT constant") + ", " + std::to_string(below) +
                       "/10 below physics, " + std::to_string(wins) + "/10 beat nn_only"};
  });

  criteria.emplace_back("AC7 backward vs central differences < 1e-5 over 50 nets x {[1,10,10,1],[1,4,1]}", [&] {
    const auto report = run_gradient_check(1, 50);
    return Outcome{report.passed(), "max relative error " + num(report.worst.relative_error)};
  });

  criteria.emplace_back("AC8 physics parameters bit-identical after full runs, both cases", [&] {
    bool same = true;
    for (const auto& r : runs1) same &= physics_to_json(r.physinet.physics).dump() == physics1_before;
    for (const auto& r : runs2) same &= physics_to_json(r.physinet.physics).dump() == physics2_before;
    return Outcome{same, physics1_before + " / " + physics2_before};
  });

  criteria.emplace_back("AC9 `run --case case1 --seeds 7` twice gives byte-identical CSVs", [&] {
    fs::remove_all(scratch);
    for (const auto* sub : {"a", "b"}) {
      const auto cmd = cli + " run --case case1 --seeds 7 --out " + (scratch / sub).string() + " > /dev/null";
      const int raw = std::system(cmd.c_str());
      if (!WIFEXITED(raw) || WEXITSTATUS(raw) != 0) return Outcome{false, std::string("cli failed for ") + sub};
    }
    std::size_t compared = 0;
    for (const auto& entry : fs::directory_iterator(scratch / "a")) {
      if (entry.path().extension() != ".csv") continue;
      const auto other = scratch / "b" / entry.path().filename();
      if (slurp(entry.path()) != slurp(other)) return Outcome{false, entry.path().filename().string() + " differs"};
      ++compared;
    }
    return Outcome{compared == 3, std::to_string(compared) + " CSVs identical"};
  });

  criteria.emplace_back("AC10 frozen (w_physi, w_nn) = (1, 0): physinet MSE == physics-only MSE bitwise", [&] {
    auto scenario = make_case1_scenario();
    scenario.initial_weights = {1.0, 0.0};
    scenario.freeze_combiner = true;
    TrainerConfig cfg;
    cfg.seed = 1;
    const auto result = run_lifecycle(scenario, cfg);
    const bool equal = std::all_of(result.records.begin(), result.records.end(),
                                   [](const auto& r) { return r.mse_physinet == r.mse_physics_only; });
    return Outcome{equal, "physics-only " + format_number(result.records.front().mse_physics_only)};
  });

  int failures = 0;
  for (const auto& [name, check] : criteria) {
    const auto outcome = check();
    failures += !outcome.pass;
    std::cout << (outcome.pass ? "[PASS] " : "[FAIL] ") << name << " -- " << outcome.detail << '\n';
  }
  std::cout << (criteria.size() - failures) << "/" << criteria.size() << " criteria passed\n";
  return failures == 0 ? 0 : 1;
}
