#include "tclevy/theta_solver.hpp"

#include <cmath>
#include <string>

#include "tclevy/error.hpp"
#include "tclevy/log.hpp"
#include "tclevy/newton.hpp"

namespace tclevy {
namespace {

const char* const kModule = "theta-solver";

State jump_term(const SdeProblem& problem, double delta, double t_n, const State& y_n,
                const JumpBatch& jumps) {
    State sum = State::Zero(y_n.size());
    for (const JumpEvent& e : jumps.events) sum += problem.jump(t_n, y_n, e.mark);
    if (problem.measure.total_mass() > 0.0) sum -= delta * problem.compensator_at(t_n, y_n);
    return sum;
}

}  // namespace

bool check_solver_config(const SdeProblem& problem, const SolverConfig& config) {
    if (!(config.theta >= 0.0 && config.theta <= 1.0)) throw DomainError(kModule, "theta must lie in [0,1]");
    if (!(config.delta > 0.0 && config.delta < 1.0)) throw DomainError(kModule, "delta must lie in (0,1)");
    if (!(config.newton_tolerance > 0.0)) throw DomainError(kModule, "Newton tolerance must be positive");
    if (config.newton_max_iterations < 1) throw DomainError(kModule, "Newton iteration cap must be at least 1");
    const double root_c = std::sqrt(problem.lipschitz_constant);
    if (!(config.theta * root_c * config.delta < 1.0)) {
        throw DomainError(kModule, "theta*sqrt(Cstar)*delta must be < 1");
    }
    return config.theta * (1.0 + root_c) * config.delta < 0.5;
}

ThetaMethod::ThetaMethod(const SdeProblem& problem, SolverConfig config, bool warn_on_weak_bound)
    : problem_(&problem), config_(config) {
    problem.validate();
    if (!check_solver_config(problem, config_) && warn_on_weak_bound) {
        warn("theta*(1+sqrt(Cstar))*delta >= 1/2: the strong error bound does not cover this stepsize");
    }
}

State ThetaMethod::step(double t_n, const State& y_n, const StepIncrements& inc) const {
    const SdeProblem& p = *problem_;
    const double theta = config_.theta;
    const double delta = config_.delta;
    const State drift_n = p.drift(t_n, y_n);
    const State explicit_part = y_n + ((1.0 - theta) * delta) * drift_n +
                                p.diffusion(t_n, y_n) * inc.brownian +
                                jump_term(p, delta, t_n, y_n, inc.jumps);
    if (theta == 0.0) return explicit_part;

    const double t_next = t_n + delta;
    const double weight = theta * delta;
    const ResidualFn residual = [&](const State& y) -> State {
        return y - weight * p.drift(t_next, y) - explicit_part;
    };
    ResidualJacobianFn jacobian;
    if (p.drift_jacobian) {
        jacobian = [&](const State& y) -> Matrix {
            return Matrix::Identity(y.size(), y.size()) - weight * p.drift_jacobian(t_next, y);
        };
    }
    const State predictor = explicit_part + weight * drift_n;
    return newton_solve(residual, jacobian, predictor, config_.newton_tolerance,
                        config_.newton_max_iterations)
        .x;
}

DiscretePath ThetaMethod::simulate(std::span<const StepIncrements> increments, std::size_t n_steps) const {
    if (increments.size() < n_steps) throw DomainError(kModule, "fewer increments than requested steps");
    DiscretePath path{config_.delta, {}};
    path.values.reserve(n_steps + 1);
    path.values.push_back(problem_->x0);
    for (std::size_t n = 0; n < n_steps; ++n) {
        const double t_n = static_cast<double>(n) * config_.delta;
        try {
            path.values.push_back(step(t_n, path.values.back(), increments[n]));
        } catch (const ConvergenceError& e) {
            throw ConvergenceError(kModule, "step " + std::to_string(n) + ": " + e.what());
        }
    }
    return path;
}

State theta_step(const SdeProblem& problem, const SolverConfig& config, double t_n,
                 const State& y_n, const StepIncrements& inc) {
    return ThetaMethod(problem, config, false).step(t_n, y_n, inc);
}

DiscretePath simulate_original_path(const SdeProblem& problem, const SolverConfig& config,
                                    std::span<const StepIncrements> increments, std::size_t n_steps) {
    return ThetaMethod(problem, config).simulate(increments, n_steps);
}

const State& eval_piecewise(const DiscretePath& path, double t) {
    if (!(t >= 0.0)) throw DomainError(kModule, "piecewise evaluation needs t >= 0");
    const double index = std::floor(t / path.delta);
    if (!(index < static_cast<double>(path.values.size()))) {
        throw DomainError(kModule, "t lies beyond the last grid point of the path");
    }
    return path.values[static_cast<std::size_t>(index)];
}

const State& compose_time_changed(const DiscretePath& path, const InverseTimeChange& itc, double t) {
    if (path.delta != itc.delta()) throw DomainError(kModule, "grid mismatch between path and time change");
    if (path.values.size() < itc.terminal_index() + 1) {
        throw DomainError(kModule, "path is shorter than the time change's terminal index N");
    }
    return path.values[itc.index_at(t)];
}

}  // namespace tclevy
