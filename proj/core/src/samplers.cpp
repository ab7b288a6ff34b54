#include "tclevy/samplers.hpp"

#include <array>
#include <cmath>
#include <numbers>

#include "tclevy/error.hpp"

namespace tclevy {
namespace {

const char* const kModule = "stochastic-kernels";
constexpr double kQuadratureTolerance = 1e-8;
constexpr std::array<int, 3> kQuadratureLadder = {64, 128, 256};

const QuadratureRule& cached_rule(std::size_t ladder_index) {
    static const std::array<QuadratureRule, 3> rules = {
        gauss_legendre(kQuadratureLadder[0]), gauss_legendre(kQuadratureLadder[1]),
        gauss_legendre(kQuadratureLadder[2])};
    return rules[ladder_index];
}

struct QuadratureEstimate {
    State value;
    double magnitude;  // ∫ |h| ν(dz), summed over components
};

QuadratureEstimate integrate(const LevyMeasure& measure, const JumpFn& h, double t,
                             const State& x, const QuadratureRule& rule) {
    const double c = measure.truncation_radius();
    QuadratureEstimate out{State::Zero(x.size()), 0.0};
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
        const double u = rule.nodes[i];
        double z, jacobian;
        if (std::isinf(c)) {
            const double half_angle = 0.5 * std::numbers::pi * u;
            z = std::tan(half_angle);
            jacobian = 0.5 * std::numbers::pi * (1.0 + z * z);
        } else {
            z = c * u;
            jacobian = c;
        }
        const double weight = rule.weights[i] * jacobian * measure.density(z);
        if (weight == 0.0 || !std::isfinite(weight)) continue;
        const State hz = h(t, x, z);
        out.value += weight * hz;
        out.magnitude += weight * hz.cwiseAbs().sum();
    }
    return out;
}

}  // namespace

State sample_gaussian_increment(RandomStream& stream, double dt, int m) {
    if (!(dt > 0.0)) throw DomainError(kModule, "Brownian increment needs dt > 0");
    if (m < 1 || m > kMaxDim) throw DomainError(kModule, "Brownian dimension out of range");
    const double scale = std::sqrt(dt);
    State out(m);
    for (int j = 0; j < m; ++j) out[j] = scale * stream.next_gaussian();
    return out;
}

double sample_stable_increment(RandomStream& stream, double alpha, double dt) {
    if (!(alpha > 0.0 && alpha < 1.0)) throw DomainError(kModule, "stable index alpha must lie in (0,1)");
    if (!(dt > 0.0)) throw DomainError(kModule, "stable increment needs dt > 0");
    constexpr double half_pi = 0.5 * std::numbers::pi;
    const double u = std::numbers::pi * (stream.next_uniform() - 0.5);
    const double e = stream.next_exponential();
    const double shifted = alpha * (u + half_pi);
    const double value = std::sin(shifted) / std::pow(std::cos(u), 1.0 / alpha) *
                         std::pow(std::cos(u - shifted) / e, (1.0 - alpha) / alpha);
    return std::pow(dt, 1.0 / alpha) * value;
}

JumpBatch sample_jump_batch(RandomStream& stream, const LevyMeasure& measure, double dt) {
    if (!(dt > 0.0)) throw DomainError(kModule, "jump batch needs dt > 0");
    JumpBatch batch;
    const double rate = measure.total_mass();
    if (rate == 0.0) return batch;
    const double c = measure.truncation_radius();
    double clock = stream.next_exponential() / rate;
    while (clock < dt) {
        const double z = measure.sample_mark(stream);
        if (!(std::abs(z) < c)) throw DomainError(kModule, "mark sampler produced |z| >= c");
        batch.events.push_back({clock, z});
        clock += stream.next_exponential() / rate;
    }
    return batch;
}

State compensator_value(const LevyMeasure& measure, const JumpFn& h, double t, const State& x) {
    if (measure.total_mass() == 0.0) return State::Zero(x.size());
    if (!measure.has_density()) {
        throw DomainError(kModule, "quadrature compensator needs a measure density");
    }
    QuadratureEstimate previous = integrate(measure, h, t, x, cached_rule(0));
    for (std::size_t k = 1; k < kQuadratureLadder.size(); ++k) {
        QuadratureEstimate current = integrate(measure, h, t, x, cached_rule(k));
        const double change = (current.value - previous.value).cwiseAbs().sum();
        if (change <= kQuadratureTolerance * current.magnitude) return current.value;
        previous = std::move(current);
    }
    throw ConvergenceError(kModule, "compensator quadrature did not converge at 256 nodes");
}

QuadratureRule gauss_legendre(int n) {
    if (n < 1) throw DomainError(kModule, "quadrature needs at least one node");
    QuadratureRule rule{std::vector<double>(n), std::vector<double>(n)};
    const int half = (n + 1) / 2;
    for (int i = 0; i < half; ++i) {
        double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
        double derivative = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p0 = 1.0, p1 = 0.0;
            for (int k = 1; k <= n; ++k) {
                const double p2 = p1;
                p1 = p0;
                p0 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p2) / k;
            }
            derivative = n * (x * p0 - p1) / (x * x - 1.0);
            const double step = p0 / derivative;
            x -= step;
            if (std::abs(step) < 1e-15) break;
        }
        const double w = 2.0 / ((1.0 - x * x) * derivative * derivative);
        rule.nodes[i] = -x;
        rule.nodes[n - 1 - i] = x;
        rule.weights[i] = w;
        rule.weights[n - 1 - i] = w;
    }
    return rule;
}

}  // namespace tclevy
