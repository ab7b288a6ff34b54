#pragma once

#include <vector>

#include "tclevy/coefficients.hpp"
#include "tclevy/levy_measure.hpp"
#include "tclevy/linalg.hpp"
#include "tclevy/random_stream.hpp"

namespace tclevy {

struct JumpEvent {
    double offset;  // arrival time relative to the window start, in [0, dt)
    double mark;
};

/// Jumps of N(dz, dt) falling in one time window, sorted by offset.
struct JumpBatch {
    std::vector<JumpEvent> events;

    bool empty() const noexcept { return events.empty(); }
    std::size_t size() const noexcept { return events.size(); }
};

/// ΔW over a step of length dt: m independent N(0, dt) components.
State sample_gaussian_increment(RandomStream& stream, double dt, int m);

/// One-sided α-stable increment with E[exp(-λ X)] = exp(-dt λ^α),
/// drawn exactly by Chambers-Mallows-Stuck (totally skewed, 0 < α < 1).
double sample_stable_increment(RandomStream& stream, double alpha, double dt);

/// Compound Poisson jumps on [0, dt): exponential inter-arrival times with
/// rate ν({|z|<c}), so the count is Poisson(λ_c dt) and offsets are sorted
/// uniform order statistics.
JumpBatch sample_jump_batch(RandomStream& stream, const LevyMeasure& measure, double dt);

/// ∫_{|z|<c} h(t, x, z) ν(dz) by Gauss-Legendre quadrature with node doubling
/// (64 → 128 → 256) until the relative change is at most 1e-8. The real line
/// is mapped through z = tan(πu/2) when c is infinite.
State compensator_value(const LevyMeasure& measure, const JumpFn& h, double t, const State& x);

/// Gauss-Legendre rule on [-1, 1].
struct QuadratureRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};
QuadratureRule gauss_legendre(int n);

}  // namespace tclevy
