#pragma once

#include "physinet/adam.hpp"
#include "physinet/combiner.hpp"
#include "physinet/csv.hpp"
#include "physinet/datagen.hpp"
#include "physinet/errors.hpp"
#include "physinet/gradcheck.hpp"
#include "physinet/network.hpp"
#include "physinet/neural_model.hpp"
#include "physinet/physics.hpp"
#include "physinet/rng.hpp"
#include "physinet/scaler.hpp"
#include "physinet/serialize.hpp"
#include "physinet/svg.hpp"
#include "physinet/trainer.hpp"
