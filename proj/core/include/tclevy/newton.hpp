#pragma once

#include <functional>

#include "tclevy/linalg.hpp"

namespace tclevy {

using ResidualFn = std::function<State(const State& x)>;
using ResidualJacobianFn = std::function<Matrix(const State& x)>;

struct NewtonResult {
    State x;
    int iterations = 0;
    double residual_norm = 0.0;
};

inline constexpr double kMaxJacobianCondition = 1e12;

/// Newton's method for residual(x) = 0, stopping once |residual(x)| <= tol.
/// An empty jacobian falls back to forward differences with step
/// sqrt(eps)(1 + |x_j|). Throws ConvergenceError on a singular Jacobian
/// (condition estimate above 1e12) or when max_iter is reached.
NewtonResult newton_solve(const ResidualFn& residual, const ResidualJacobianFn& jacobian,
                          const State& x0, double tol, int max_iter);

Matrix finite_difference_jacobian(const ResidualFn& residual, const State& x, const State& fx);

}  // namespace tclevy
