#include "tclevy/sde_problem.hpp"

#include <algorithm>
#include <cmath>

#include "tclevy/error.hpp"
#include "tclevy/samplers.hpp"

namespace tclevy {
namespace {

const char* const kModule = "sde-core";

// Standard-normal marks with total mass 2.
LevyMeasure paper_measure() { return LevyMeasure::gaussian(2.0, 1.0); }

}  // namespace

void SdeProblem::validate() const {
    if (state_dim < 1 || state_dim > kMaxDim) throw DomainError(kModule, "state dimension d must lie in [1, 8]");
    if (noise_dim < 1 || noise_dim > kMaxDim) throw DomainError(kModule, "Brownian dimension m must lie in [1, 8]");
    if (x0.size() != state_dim) throw DomainError(kModule, "initial state has the wrong dimension");
    if (!drift || !diffusion || !jump) throw DomainError(kModule, "drift, diffusion and jump evaluators are required");
    if (!(lipschitz_constant > 0.0)) throw DomainError(kModule, "Lipschitz constant C* must be positive");
    if (!(hoelder_exponent > 0.0)) throw DomainError(kModule, "Hoelder exponent gamma must be positive");
}

State SdeProblem::compensator_at(double t, const State& x) const {
    if (compensator) return compensator(t, x);
    return compensator_value(measure, jump, t, x);
}

SdeProblem builtin_paper_example() {
    SdeProblem p;
    p.name = "paper-example";
    p.x0 = State::Constant(1, 1.0);
    p.drift = [](double t, const State& x) -> State { return State::Constant(1, std::sin(t) + x[0]); };
    p.diffusion = [](double t, const State& x) -> Matrix { return Matrix::Constant(1, 1, t + std::sin(x[0])); };
    p.jump = [](double, const State& x, double z) -> State { return x * z; };
    p.compensator = [](double, const State& x) -> State { return State::Zero(x.size()); };
    p.drift_jacobian = [](double, const State&) -> Matrix { return Matrix::Identity(1, 1); };
    p.measure = paper_measure();
    // 1 (drift) + 1 (diffusion) + ∫z²ν = 2 (jumps).
    p.lipschitz_constant = 4.0;
    p.hoelder_exponent = 2.0;
    p.moment_bounds_asserted = true;
    return p;
}

SdeProblem builtin_linear_problem(double a, double b, double jump_scale, double x0) {
    SdeProblem p;
    p.name = "linear";
    p.x0 = State::Constant(1, x0);
    p.drift = [a](double, const State& x) -> State { return a * x; };
    p.diffusion = [b](double, const State& x) -> Matrix { return Matrix::Constant(1, 1, b * x[0]); };
    p.jump = [jump_scale](double, const State& x, double z) -> State { return jump_scale * z * x; };
    p.compensator = [](double, const State& x) -> State { return State::Zero(x.size()); };
    p.drift_jacobian = [a](double, const State&) -> Matrix { return Matrix::Constant(1, 1, a); };
    p.measure = paper_measure();
    const double cstar = a * a + b * b + jump_scale * jump_scale * p.measure.second_moment();
    p.lipschitz_constant = cstar > 0.0 ? cstar : 1.0;
    p.hoelder_exponent = 1.0;
    p.moment_bounds_asserted = true;
    p.linear = LinearCoefficients{a, b, jump_scale};
    return p;
}

double linear_second_moment(const SdeProblem& problem, double t) {
    if (!problem.linear) throw DomainError(kModule, "linear_second_moment needs a problem built by builtin_linear_problem");
    const auto& c = *problem.linear;
    const double rate =
        2.0 * c.a + c.b * c.b + c.jump_scale * c.jump_scale * problem.measure.second_moment();
    const double x0 = problem.x0[0];
    return x0 * x0 * std::exp(rate * t);
}

double lipschitz_spot_check(const SdeProblem& problem, std::uint64_t seed, int samples) {
    problem.validate();
    RandomStream stream(seed, 0);
    const int d = problem.state_dim;
    const bool with_jumps = problem.measure.total_mass() > 0.0 && problem.measure.has_density();
    double worst = 0.0;
    for (int k = 0; k < samples; ++k) {
        State x(d), y(d);
        for (int i = 0; i < d; ++i) x[i] = -5.0 + 10.0 * stream.next_uniform();
        for (int i = 0; i < d; ++i) y[i] = -5.0 + 10.0 * stream.next_uniform();
        const double t = 5.0 * stream.next_uniform();
        const double dist2 = (x - y).squaredNorm();
        if (dist2 == 0.0) continue;
        double lhs = (problem.drift(t, x) - problem.drift(t, y)).squaredNorm() +
                     (problem.diffusion(t, x) - problem.diffusion(t, y)).squaredNorm();
        if (with_jumps) {
            const JumpFn gap = [&problem, &y](double s, const State& xs, double z) -> State {
                const State diff = problem.jump(s, xs, z) - problem.jump(s, y, z);
                return State::Constant(1, diff.squaredNorm());
            };
            lhs += compensator_value(problem.measure, gap, t, x)[0];
        }
        worst = std::max(worst, lhs / (problem.lipschitz_constant * dist2));
    }
    return worst;
}

}  // namespace tclevy
