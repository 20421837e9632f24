#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "physinet/combiner.hpp"
#include "physinet/gradcheck.hpp"
#include "physinet/rng.hpp"

using namespace physinet;

namespace {

PhysiNetModel case1_model(std::uint64_t seed, CombinerWeights w = kInitialCombinerWeights) {
  PhysiNetModel m;
  m.physics = LinearPhysics(1.0, 10.0);
  m.net = init_network({{1, 10, 10, 1}, seed});
  m.weights = w;
  return m;
}

}  // namespace

TEST(Predict, PhysicsOnlyWeightsReturnPhysicsExactly) {
  const auto m = case1_model(3, {1.0, 0.0});
  for (double x : {0.0, 2.5, 9.75}) {
    const double in[] = {x};
    EXPECT_EQ(m.predict(in).y_hat, x + 10.0);
  }
}

TEST(Predict, InitialWeightsWithZeroNetwork) {
  PhysiNetModel m;
  m.physics = LinearPhysics(1.0, 10.0);
  m.net = Network({1, 10, 10, 1});
  const double x[] = {0.0};
  const auto p = m.predict(x);
  EXPECT_EQ(p.q_physi, 10.0);
  EXPECT_EQ(p.q_nn, 0.0);
  EXPECT_NEAR(p.y_hat, 9.9, 1e-15);
  // Physics dominance at init holds exactly for every input.
  Rng rng(1);
  for (int i = 0; i < 100; ++i) {
    const double in[] = {rng.uniform(0, 10)};
    EXPECT_EQ(m.predict(in).y_hat, 0.99 * physics_predict(m.physics, in));
  }
}

TEST(Predict, MidpointWeights) {
  // q_physi = 4 from a flat law, q_nn = 2 from the output bias.
  PhysiNetModel m;
  m.physics = LinearPhysics(0.0, 4.0);
  m.net = Network({1, 1, 1});
  m.net.layer(1).biases[0] = 2.0;
  m.weights = {0.5, 0.5};
  const double x[] = {123.0};
  EXPECT_EQ(m.predict(x).y_hat, 3.0);
}

TEST(Predict, ShapeMismatchThrows) {
  const auto m = case1_model(1);
  const double x[] = {1.0, 2.0};
  EXPECT_THROW(m.predict(x), ShapeError);
}

TEST(Predict, BilinearInWeights) {
  Rng rng(8);
  for (int i = 0; i < 20; ++i) {
    const CombinerWeights w{rng.uniform(-2, 2), rng.uniform(-2, 2)};
    const double alpha = rng.uniform(-3, 3);
    const auto base = case1_model(i, w);
    const auto scaled = case1_model(i, {alpha * w.w_physi, alpha * w.w_nn});
    const double x[] = {rng.uniform(0, 10)};
    EXPECT_NEAR(scaled.predict(x).y_hat, alpha * base.predict(x).y_hat, 1e-12);
  }
}

TEST(CombinerGradients, HandValues) {
  const auto zero = combiner_gradients(10.0, 3.0, {0.99, 0.01}, 0.0);
  EXPECT_EQ(zero.d_w_physi, 0.0);
  EXPECT_EQ(zero.d_w_nn, 0.0);
  EXPECT_EQ(zero.d_q_nn, 0.0);
  const auto g = combiner_gradients(10.0, 3.0, {0.99, 0.01}, 2.0);
  EXPECT_EQ(g.d_w_physi, 20.0);
  EXPECT_EQ(g.d_w_nn, 6.0);
  EXPECT_NEAR(g.d_q_nn, 0.02, 1e-17);
}

// Squared-error loss is quadratic in each mixing weight, so central
// differences are exact up to rounding.
TEST(CombinerGradients, MatchFiniteDifferencesOverWeights) {
  Rng rng(21);
  for (int i = 0; i < 20; ++i) {
    auto m = case1_model(100 + i, {rng.uniform(-1, 2), rng.uniform(-1, 2)});
    const double x[] = {rng.uniform(0, 10)};
    const double target = rng.uniform(5, 30);
    auto grads = m.zero_gradient();
    m.accumulate_gradient(x, target, 1.0, grads);

    const auto loss = [&](CombinerWeights w) {
      auto probe = m;
      probe.weights = w;
      const double e = probe.predict(x).y_hat - target;
      return e * e;
    };
    const double h = 1e-4;
    const auto& w = m.weights;
    const double fd_physi = (loss({w.w_physi + h, w.w_nn}) - loss({w.w_physi - h, w.w_nn})) / (2 * h);
    const double fd_nn = (loss({w.w_physi, w.w_nn + h}) - loss({w.w_physi, w.w_nn - h})) / (2 * h);
    EXPECT_LT(relative_error(grads.w_physi, fd_physi), 1e-8);
    EXPECT_LT(relative_error(grads.w_nn, fd_nn), 1e-8);
  }
}

TEST(CombinerGradients, NetworkBranchMatchesFiniteDifferencesThroughFullLoss) {
  auto m = case1_model(77, {0.8, 0.6});
  const double x[] = {0.4};
  const double target = 12.0;
  auto grads = m.zero_gradient();
  m.accumulate_gradient(x, target, 1.0, grads);
  const auto numeric = finite_diff_grad(m.net, [&](const Network& n) {
    auto probe = m;
    probe.net = n;
    const double e = probe.predict(x).y_hat - target;
    return e * e;
  });
  const auto a = grads.network.values();
  const auto f = numeric.values();
  for (std::size_t i = 0; i < a.size(); ++i) EXPECT_NEAR(a[i], f[i], 1e-6);
}

TEST(WeightRatio, Values) {
  EXPECT_EQ(weight_ratio({0.99, 0.01}), 99.0);
  EXPECT_EQ(weight_ratio({0.5, 0.5}), 1.0);
  EXPECT_FALSE(weight_ratio({1.0, 0.0}).has_value());
}

TEST(PhysiNetModel, FrozenCombinerKeepsWeights) {
  auto m = case1_model(4, {1.0, 0.0});
  auto opt = m.make_optimizer({});
  opt.freeze_combiner = true;
  const double x[] = {3.0};
  for (int i = 0; i < 10; ++i) {
    auto g = m.zero_gradient();
    m.accumulate_gradient(x, 50.0, 1.0, g);
    m.apply_gradient(g, opt);
  }
  EXPECT_EQ(m.weights, (CombinerWeights{1.0, 0.0}));
  EXPECT_EQ(opt.combiner.timestep, 0u);
}
