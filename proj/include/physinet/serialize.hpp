#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "physinet/combiner.hpp"
#include "physinet/errors.hpp"
#include "physinet/network.hpp"
#include "physinet/physics.hpp"

// JSON model snapshots:
// {
//   "physics": {"kind": "linear", "slope": 1, "offset": 10} | {"kind": "second_order_frf", "a0": 4.4},
//   "layer_sizes": [1, 10, 10, 1],
//   "layers": [{"weights": [[...], ...], "biases": [...]}, ...],
//   "scaler": {"mean": [...], "scale": [...]},
//   "w_physi": 0.99, "w_nn": 0.01
// }
// Doubles are written by nlohmann's shortest round-trip formatter.

namespace physinet {

inline nlohmann::json physics_to_json(const PhysicsModel& physics) {
  if (const auto* lin = std::get_if<LinearPhysics>(&physics)) {
    return {{"kind", "linear"}, {"slope", lin->slope()}, {"offset", lin->offset()}};
  }
  return {{"kind", "second_order_frf"}, {"a0", std::get<SecondOrderFrf>(physics).a0()}};
}

inline PhysicsModel physics_from_json(const nlohmann::json& j) {
  const auto kind = j.at("kind").get<std::string>();
  if (kind == "linear") return LinearPhysics(j.at("slope").get<double>(), j.at("offset").get<double>());
  if (kind == "second_order_frf") return SecondOrderFrf(j.at("a0").get<double>());
  throw FormatError("unknown physics kind '" + kind + "'");
}

inline nlohmann::json network_to_json(const Network& net) {
  nlohmann::json layers = nlohmann::json::array();
  for (std::size_t j = 0; j < net.layer_count(); ++j) {
    const auto layer = net.layer(j);
    nlohmann::json rows = nlohmann::json::array();
    for (std::size_t r = 0; r < layer.rows; ++r) {
      rows.push_back(std::vector<double>(layer.weights.begin() + r * layer.cols,
                                         layer.weights.begin() + (r + 1) * layer.cols));
    }
    layers.push_back({{"weights", rows}, {"biases", std::vector<double>(layer.biases.begin(), layer.biases.end())}});
  }
  const auto sizes = net.layer_sizes();
  return {{"layer_sizes", std::vector<std::size_t>(sizes.begin(), sizes.end())}, {"layers", layers}};
}

inline Network network_from_json(const nlohmann::json& j) {
  Network net(j.at("layer_sizes").get<std::vector<std::size_t>>());
  const auto& layers = j.at("layers");
  if (layers.size() != net.layer_count()) throw FormatError("model JSON: layer count disagrees with layer_sizes");
  for (std::size_t l = 0; l < net.layer_count(); ++l) {
    auto layer = net.layer(l);
    const auto weights = layers[l].at("weights").get<std::vector<std::vector<double>>>();
    const auto biases = layers[l].at("biases").get<std::vector<double>>();
    if (weights.size() != layer.rows || biases.size() != layer.rows) throw FormatError("model JSON: layer rows");
    for (std::size_t r = 0; r < layer.rows; ++r) {
      if (weights[r].size() != layer.cols) throw FormatError("model JSON: layer cols");
      for (std::size_t c = 0; c < layer.cols; ++c) layer.weight(r, c) = weights[r][c];
      layer.biases[r] = biases[r];
    }
  }
  return net;
}

inline nlohmann::json to_json(const PhysiNetModel& model) {
  auto j = network_to_json(model.net);
  j["physics"] = physics_to_json(model.physics);
  j["scaler"] = {{"mean", model.scaler.mean}, {"scale", model.scaler.scale}};
  j["w_physi"] = model.weights.w_physi;
  j["w_nn"] = model.weights.w_nn;
  return j;
}

inline PhysiNetModel physinet_model_from_json(const nlohmann::json& j) {
  try {
    PhysiNetModel model;
    model.physics = physics_from_json(j.at("physics"));
    model.net = network_from_json(j);
    model.scaler.mean = j.at("scaler").at("mean").get<std::vector<double>>();
    model.scaler.scale = j.at("scaler").at("scale").get<std::vector<double>>();
    model.weights = {j.at("w_physi").get<double>(), j.at("w_nn").get<double>()};
    return model;
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(std::string("model JSON: ") + e.what());
  }
}

}  // namespace physinet
