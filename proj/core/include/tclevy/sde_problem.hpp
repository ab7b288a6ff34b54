#pragma once

#include <optional>
#include <string>
#include <vector>

#include "tclevy/coefficients.hpp"
#include "tclevy/levy_measure.hpp"
#include "tclevy/linalg.hpp"

namespace tclevy {

/// Parameters of dY = aY dt + bY dW + \int sYz Ñ(dz, dt); kept so the exact
/// second moment can serve as an oracle.
struct LinearCoefficients {
    double a = 0.0;
    double b = 0.0;
    double jump_scale = 0.0;
};

/// An original-clock SDE  dY = f(t,Y)dt + g(t,Y)dW + \int h(t,Y,z) Ñ(dz,dt).
///
/// Immutable once built; share it freely across path simulations.
struct SdeProblem {
    std::string name;
    int state_dim = 1;
    int noise_dim = 1;
    State x0;
    DriftFn drift;
    DiffusionFn diffusion;
    JumpFn jump;
    CompensatorFn compensator;   // empty: integrate h against ν by quadrature
    JacobianFn drift_jacobian;   // empty: forward finite differences
    LevyMeasure measure = LevyMeasure::none();
    double lipschitz_constant = 1.0;  // C* of the global Lipschitz condition
    double hoelder_exponent = 1.0;    // γ of the time-Hölder condition
    bool moment_bounds_asserted = false;
    std::optional<LinearCoefficients> linear;

    /// Throws DomainError when a structural invariant fails.
    void validate() const;

    /// ∫ h(t,x,z) ν(dz): the analytic compensator when supplied, quadrature otherwise.
    State compensator_at(double t, const State& x) const;
};

/// dX = (sin E + X)dE + (E + sin X)dW(E) + \int X z Ñ(dz, dE) with X(0)=1 and
/// ν(dz) = 2 φ(z) dz (φ the standard normal density), in original time.
SdeProblem builtin_paper_example();

/// dY = aY dt + bY dW + \int sYz Ñ(dz, dt) with the same ν as builtin_paper_example().
SdeProblem builtin_linear_problem(double a, double b, double jump_scale, double x0 = 1.0);

/// E[Y(t)²] = x0² exp((2a + b² + s² ∫z²ν) t) for a problem from builtin_linear_problem.
double linear_second_moment(const SdeProblem& problem, double t);

/// Piecewise-constant numerical path: values[n] approximates Y(nΔ).
struct DiscretePath {
    double delta = 0.0;
    std::vector<State> values;
};

/// Largest observed ratio
///   (|f(t,x)-f(t,y)|² + |g(t,x)-g(t,y)|² + ∫|h(t,x,z)-h(t,y,z)|²ν(dz)) / (C*|x-y|²)
/// over `samples` random pairs x, y ∈ [-5,5]^d, t ∈ [0,5]. The jump term uses
/// quadrature against the measure density and is skipped when there is none.
double lipschitz_spot_check(const SdeProblem& problem, std::uint64_t seed, int samples = 1000);

}  // namespace tclevy
