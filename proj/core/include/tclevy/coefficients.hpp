#pragma once

#include <functional>

#include "tclevy/linalg.hpp"

namespace tclevy {

// Coefficient evaluators of dY = f dt + g dW + \int h dÑ. They must be pure.
using DriftFn = std::function<State(double t, const State& x)>;
using DiffusionFn = std::function<Matrix(double t, const State& x)>;
using JumpFn = std::function<State(double t, const State& x, double z)>;
using CompensatorFn = std::function<State(double t, const State& x)>;
using JacobianFn = std::function<Matrix(double t, const State& x)>;

}  // namespace tclevy
