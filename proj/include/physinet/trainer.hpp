#pragma once

#include <algorithm>
#include <concepts>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <numeric>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "physinet/adam.hpp"
#include "physinet/combiner.hpp"
#include "physinet/datagen.hpp"
#include "physinet/errors.hpp"
#include "physinet/neural_model.hpp"
#include "physinet/physics.hpp"
#include "physinet/rng.hpp"

namespace physinet {

struct TrainerConfig {
  std::size_t steps = 100;
  std::size_t points_per_step = 80;
  std::size_t epochs_per_step = 40;
  std::size_t minibatch_size = 16;
  std::size_t test_set_size = 2000;
  double learning_rate = 0.0015;  // Adam step size for both trainable variants
  std::uint64_t seed = 0;

  void validate() const {
    if (steps == 0 || points_per_step == 0 || minibatch_size == 0 || test_set_size == 0) {
      throw ConfigError("TrainerConfig: steps, points_per_step, minibatch_size and test_set_size must be positive");
    }
    if (minibatch_size > points_per_step) throw ConfigError("TrainerConfig: minibatch_size exceeds points_per_step");
    if (!(learning_rate > 0.0)) throw ConfigError("TrainerConfig: learning_rate must be positive");
  }

  AdamHyperparameters adam() const {
    AdamHyperparameters h;
    h.learning_rate = learning_rate;
    return h;
  }
};

struct StepRecord {
  std::size_t step = 0;
  double mse_physinet = 0.0;
  double mse_nn_only = 0.0;
  double mse_physics_only = 0.0;
  std::optional<double> weight_ratio;
  double w_physi = 0.0;
  double w_nn = 0.0;

  friend bool operator==(const StepRecord&, const StepRecord&) = default;
};

struct PredictionSnapshot {
  std::size_t step = 0;
  std::string variant;  // "physinet", "nn_only" or "physics_only"
  std::vector<std::pair<double, double>> points;  // (input, y_hat), inputs strictly increasing

  friend bool operator==(const PredictionSnapshot&, const PredictionSnapshot&) = default;
};

template <class M>
concept TrainableModel = requires(const M& cm, M& m, std::span<const double> x, double target,
                                  typename M::gradient_type& g, typename M::optimizer_type& opt) {
  { cm.output(x) } -> std::convertible_to<double>;
  { cm.zero_gradient() } -> std::same_as<typename M::gradient_type>;
  { cm.accumulate_gradient(x, target, 1.0, g) } -> std::convertible_to<double>;
  { cm.make_optimizer(AdamHyperparameters{}) } -> std::same_as<typename M::optimizer_type>;
  m.apply_gradient(g, opt);
};

inline double mse(std::span<const double> predictions, std::span<const double> targets) {
  if (predictions.empty() || predictions.size() != targets.size()) {
    throw UsageError("mse: need equal, non-zero lengths");
  }
  double sum = 0.0;
  for (std::size_t i = 0; i < predictions.size(); ++i) {
    const double e = predictions[i] - targets[i];
    sum += e * e;
  }
  return sum / static_cast<double>(predictions.size());
}

template <class Predict>
  requires std::invocable<const Predict&, std::span<const double>>
std::vector<double> predict_batch(const Predict& predict, const DataBatch& batch) {
  std::vector<double> out(batch.size());
  for (std::size_t i = 0; i < batch.size(); ++i) out[i] = predict(batch.input(i));
  return out;
}

template <TrainableModel M>
double evaluate_mse(const M& model, const DataBatch& batch) {
  return mse(predict_batch([&](std::span<const double> x) { return model.output(x); }, batch), batch.targets);
}

// One lifecycle step: epochs_per_step shuffled passes over `batch`, one Adam
// update per minibatch on the mean squared error. The last minibatch of an
// epoch may be smaller than minibatch_size.
template <TrainableModel M>
void train_one_step(M& model, typename M::optimizer_type& optimizer, const DataBatch& batch,
                    const TrainerConfig& config, Rng& shuffle_rng) {
  if (batch.empty()) throw UsageError("train_one_step: empty batch");
  if (batch.size() != config.points_per_step) {
    throw UsageError("train_one_step: batch has " + std::to_string(batch.size()) + " points, expected " +
                     std::to_string(config.points_per_step));
  }
  std::vector<std::size_t> order(batch.size());
  for (std::size_t epoch = 0; epoch < config.epochs_per_step; ++epoch) {
    std::iota(order.begin(), order.end(), std::size_t{0});
    for (std::size_t i = order.size(); i > 1; --i) {
      std::swap(order[i - 1], order[shuffle_rng.below(i)]);
    }
    for (std::size_t start = 0; start < order.size(); start += config.minibatch_size) {
      const std::size_t stop = std::min(order.size(), start + config.minibatch_size);
      const double weight = 1.0 / static_cast<double>(stop - start);
      auto grads = model.zero_gradient();
      for (std::size_t k = start; k < stop; ++k) {
        model.accumulate_gradient(batch.input(order[k]), batch.targets[order[k]], weight, grads);
      }
      model.apply_gradient(grads, optimizer);
    }
  }
}

// Everything a lifecycle run needs besides the trainer settings.
struct Scenario {
  std::string name;
  PhysicsModel physics;
  std::function<DataBatch(std::size_t, Rng&)> sample;
  std::vector<std::size_t> physinet_layers{1, 10, 10, 1};
  std::vector<std::size_t> nn_only_layers{1, 4, 1};
  CombinerWeights initial_weights = kInitialCombinerWeights;
  bool freeze_combiner = false;
  std::vector<std::size_t> snapshot_steps;
  double grid_low = 0.0;
  double grid_high = 1.0;
  std::size_t grid_points = 101;
};

inline Scenario make_case1_scenario(const Case1Config& cfg = {}) {
  cfg.validate();
  Scenario s;
  s.name = "case1";
  s.physics = LinearPhysics(1.0, 10.0);
  s.sample = [cfg](std::size_t n, Rng& rng) { return sample_case1(cfg, n, rng); };
  s.snapshot_steps = {0, 9, 19, 29, 39, 49};
  s.grid_low = cfg.x_low;
  s.grid_high = cfg.x_high;
  return s;
}

inline Scenario make_case2_scenario(const Case2Config& cfg = {}) {
  cfg.validate();
  Scenario s;
  s.name = "case2";
  s.physics = SecondOrderFrf(cfg.a0_model);
  s.sample = [cfg](std::size_t n, Rng& rng) { return sample_case2(cfg, n, rng); };
  s.snapshot_steps = {0, 9, 19, 29};
  s.grid_low = cfg.omega_low;
  s.grid_high = cfg.omega_high;
  return s;
}

struct LifecycleResult {
  std::vector<StepRecord> records;
  std::vector<PredictionSnapshot> snapshots;
  DataBatch test_set;
  PhysiNetModel physinet;
  NeuralModel nn_only;
};

/// Raised when the data generator fails; carries the step being prepared.
class LifecycleError : public std::runtime_error {
 public:
  LifecycleError(std::size_t step, const std::string& what)
      : std::runtime_error("lifecycle aborted at step " + std::to_string(step) + ": " + what), step_(step) {}

  std::size_t step() const noexcept { return step_; }

 private:
  std::size_t step_;
};

namespace detail {

// Independent random streams of one run.
enum Stream : std::uint64_t { kData = 0, kPhysiNetInit = 1, kNeuralInit = 2, kPhysiNetShuffle = 3, kNeuralShuffle = 4 };

inline std::vector<double> snapshot_grid(const Scenario& s) {
  std::vector<double> grid(s.grid_points);
  const double span = s.grid_high - s.grid_low;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    grid[i] = s.grid_points == 1 ? s.grid_low
                                 : s.grid_low + span * static_cast<double>(i) / static_cast<double>(s.grid_points - 1);
  }
  return grid;
}

template <class Predict>
PredictionSnapshot take_snapshot(std::size_t step, std::string variant, const std::vector<double>& grid,
                                 const Predict& predict) {
  PredictionSnapshot snap{step, std::move(variant), {}};
  snap.points.reserve(grid.size());
  for (double x : grid) snap.points.emplace_back(x, predict(std::span<const double>(&x, 1)));
  return snap;
}

}  // namespace detail

// Streaming protocol: a fixed test set is drawn first, then each step draws a
// fresh batch, trains PhysiNet and the network-only baseline on it, and
// evaluates all three variants (the physics-only one never trains) on the test set.
inline LifecycleResult run_lifecycle(const Scenario& scenario, const TrainerConfig& config) {
  config.validate();
  Rng data_rng(Rng::derive(config.seed, detail::kData));
  Rng physinet_shuffle(Rng::derive(config.seed, detail::kPhysiNetShuffle));
  Rng neural_shuffle(Rng::derive(config.seed, detail::kNeuralShuffle));

  const auto draw = [&](std::size_t step, std::size_t n) {
    DataBatch batch;
    try {
      batch = scenario.sample(n, data_rng);
      batch.validate();
    } catch (const std::exception& e) {
      throw LifecycleError(step, e.what());
    }
    if (batch.size() != n) throw LifecycleError(step, "generator returned the wrong number of points");
    return batch;
  };

  LifecycleResult result;
  result.test_set = draw(0, config.test_set_size);

  auto& physinet = result.physinet;
  physinet.physics = scenario.physics;
  physinet.net = init_network({scenario.physinet_layers, Rng::derive(config.seed, detail::kPhysiNetInit)});
  physinet.weights = scenario.initial_weights;
  auto& neural = result.nn_only;
  neural.net = init_network({scenario.nn_only_layers, Rng::derive(config.seed, detail::kNeuralInit)});

  auto physinet_opt = physinet.make_optimizer(config.adam());
  physinet_opt.freeze_combiner = scenario.freeze_combiner;
  auto neural_opt = neural.make_optimizer(config.adam());

  const auto physics_only = [&](std::span<const double> x) { return physics_predict(scenario.physics, x); };
  const double mse_physics = mse(predict_batch(physics_only, result.test_set), result.test_set.targets);
  const auto grid = detail::snapshot_grid(scenario);

  result.records.reserve(config.steps);
  for (std::size_t step = 0; step < config.steps; ++step) {
    const DataBatch batch = draw(step, config.points_per_step);
    if (step == 0) {
      physinet.scaler = FeatureScaler::fit(batch.inputs, batch.feature_count);
      neural.scaler = physinet.scaler;
    }
    train_one_step(physinet, physinet_opt, batch, config, physinet_shuffle);
    train_one_step(neural, neural_opt, batch, config, neural_shuffle);

    StepRecord rec;
    rec.step = step;
    rec.mse_physinet = evaluate_mse(physinet, result.test_set);
    rec.mse_nn_only = evaluate_mse(neural, result.test_set);
    rec.mse_physics_only = mse_physics;
    rec.weight_ratio = weight_ratio(physinet.weights);
    rec.w_physi = physinet.weights.w_physi;
    rec.w_nn = physinet.weights.w_nn;
    result.records.push_back(rec);

    if (std::ranges::find(scenario.snapshot_steps, step) != scenario.snapshot_steps.end()) {
      result.snapshots.push_back(
          detail::take_snapshot(step, "physinet", grid, [&](auto x) { return physinet.output(x); }));
      result.snapshots.push_back(
          detail::take_snapshot(step, "nn_only", grid, [&](auto x) { return neural.output(x); }));
      result.snapshots.push_back(detail::take_snapshot(step, "physics_only", grid, physics_only));
    }
  }
  return result;
}

}  // namespace physinet
