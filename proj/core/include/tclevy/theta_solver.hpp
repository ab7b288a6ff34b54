#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "tclevy/linalg.hpp"
#include "tclevy/samplers.hpp"
#include "tclevy/sde_problem.hpp"
#include "tclevy/time_change.hpp"

namespace tclevy {

struct SolverConfig {
    double theta = 0.0;
    double delta = 0.0;
    double newton_tolerance = 1e-5;
    int newton_max_iterations = 50;
};

/// ΔW_n and the jumps of N on [t_n, t_{n+1}).
struct StepIncrements {
    State brownian;
    JumpBatch jumps;
};

/// Checks 0 <= θ <= 1, 0 < Δ < 1 and the solvability guard θ√C*Δ < 1.
/// Returns whether the stronger error-bound condition θ(1+√C*)Δ < 1/2 holds.
bool check_solver_config(const SdeProblem& problem, const SolverConfig& config);

/// Stochastic θ-method on the original clock:
///
///   Y_{n+1} = Y_n + θ f(t_{n+1}, Y_{n+1})Δ + (1-θ) f(t_n, Y_n)Δ + g(t_n, Y_n)ΔW_n
///             + Σ_i h(t_n, Y_n, z_i) - Δ \int h(t_n, Y_n, z) ν(dz).
///
/// θ = 0 is explicit Euler-Maruyama; θ > 0 is resolved by Newton's method
/// started from the Euler predictor, with the analytic drift Jacobian when the
/// problem supplies one.
class ThetaMethod {
public:
    /// Validates the config and, unless told otherwise, warns when
    /// θ(1+√C*)Δ < 1/2 fails.
    ThetaMethod(const SdeProblem& problem, SolverConfig config, bool warn_on_weak_bound = true);

    const SolverConfig& config() const noexcept { return config_; }
    const SdeProblem& problem() const noexcept { return *problem_; }

    State step(double t_n, const State& y_n, const StepIncrements& inc) const;

    /// values[0] = x0, values[n+1] = step(nΔ, values[n], increments[n]).
    DiscretePath simulate(std::span<const StepIncrements> increments, std::size_t n_steps) const;

private:
    const SdeProblem* problem_;
    SolverConfig config_;
};

State theta_step(const SdeProblem& problem, const SolverConfig& config, double t_n,
                 const State& y_n, const StepIncrements& inc);

DiscretePath simulate_original_path(const SdeProblem& problem, const SolverConfig& config,
                                    std::span<const StepIncrements> increments, std::size_t n_steps);

/// Y_Δ(t) = values[n] for t ∈ [nΔ, (n+1)Δ).
const State& eval_piecewise(const DiscretePath& path, double t);

/// X_Δ(t) = Y_Δ(E_Δ(t)); E_Δ(t) is a grid point, so this is values[E_Δ(t)/Δ].
const State& compose_time_changed(const DiscretePath& path, const InverseTimeChange& itc, double t);

}  // namespace tclevy
