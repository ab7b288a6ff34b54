#include "tclevy/noise.hpp"

#include <cmath>

#include "tclevy/error.hpp"

namespace tclevy {
namespace {

const char* const kModule = "experiment-harness";

}  // namespace

std::size_t refinement_ratio(double coarse, double fine) {
    if (!(fine > 0.0) || !(coarse > 0.0)) throw DomainError(kModule, "stepsizes must be positive");
    const double ratio = coarse / fine;
    const double rounded = std::round(ratio);
    if (rounded < 1.0 || std::abs(ratio - rounded) > 1e-9 * rounded) {
        throw DomainError(kModule, "stepsize is not an integer multiple of the finer stepsize");
    }
    return static_cast<std::size_t>(rounded);
}

NoiseGrid generate_coupled_noise(RandomStream& stream, double fine_delta, double horizon,
                                 const LevyMeasure& measure, int m) {
    if (!(horizon > 0.0) || std::isinf(horizon)) throw DomainError(kModule, "noise horizon must be positive and finite");
    if (m < 1 || m > kMaxDim) throw DomainError(kModule, "Brownian dimension out of range");
    const double steps = horizon / fine_delta;
    if (steps > static_cast<double>(kMaxFineSteps)) {
        throw ResourceError(kModule, "noise grid exceeds 1e8 fine steps");
    }
    const std::size_t n = refinement_ratio(horizon, fine_delta);

    NoiseGrid grid;
    grid.fine_delta = fine_delta;
    grid.horizon = horizon;
    grid.noise_dim = m;
    grid.brownian.resize(m, static_cast<Eigen::Index>(n));
    const double scale = std::sqrt(fine_delta);
    for (Eigen::Index j = 0; j < grid.brownian.cols(); ++j) {
        for (int i = 0; i < m; ++i) grid.brownian(i, j) = scale * stream.next_gaussian();
    }
    const double rate = measure.total_mass();
    if (rate > 0.0) {
        const double c = measure.truncation_radius();
        double clock = stream.next_exponential() / rate;
        while (clock < horizon) {
            const double z = measure.sample_mark(stream);
            if (!(std::abs(z) < c)) throw DomainError(kModule, "mark sampler produced |z| >= c");
            grid.jumps.push_back({clock, z});
            clock += stream.next_exponential() / rate;
        }
    }
    return grid;
}

std::vector<StepIncrements> aggregate_noise(const NoiseGrid& noise, double coarse_delta) {
    const std::size_t k = refinement_ratio(coarse_delta, noise.fine_delta);
    const std::size_t fine = noise.fine_steps();
    if (fine % k != 0) throw DomainError(kModule, "coarse stepsize does not divide the noise horizon");
    const std::size_t coarse = fine / k;
    const int m = noise.noise_dim;

    std::vector<StepIncrements> out(coarse);
    for (std::size_t n = 0; n < coarse; ++n) {
        State sum = noise.brownian.col(static_cast<Eigen::Index>(n * k)).head(m);
        for (std::size_t j = 1; j < k; ++j) sum += noise.brownian.col(static_cast<Eigen::Index>(n * k + j));
        out[n].brownian = sum;
    }
    for (const TimedJump& jump : noise.jumps) {
        const auto n = static_cast<std::size_t>(std::floor(jump.time / coarse_delta));
        if (n >= coarse) continue;
        out[n].jumps.events.push_back({jump.time - static_cast<double>(n) * coarse_delta, jump.mark});
    }
    return out;
}

}  // namespace tclevy
