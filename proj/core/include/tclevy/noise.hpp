#pragma once

#include <cstddef>
#include <vector>

#include <Eigen/Core>

#include "tclevy/levy_measure.hpp"
#include "tclevy/random_stream.hpp"
#include "tclevy/theta_solver.hpp"

namespace tclevy {

struct TimedJump {
    double time;  // absolute original-clock time
    double mark;
};

/// Finest-resolution driving noise on [0, horizon): one Brownian increment per
/// fine step and a single sorted compound-Poisson event list. Every coarser
/// grid is obtained by aggregation, so all stepsizes see the same randomness.
struct NoiseGrid {
    double fine_delta = 0.0;
    double horizon = 0.0;
    int noise_dim = 1;
    Eigen::MatrixXd brownian;  // noise_dim x fine_steps
    std::vector<TimedJump> jumps;

    std::size_t fine_steps() const noexcept { return static_cast<std::size_t>(brownian.cols()); }
};

inline constexpr std::size_t kMaxFineSteps = 100'000'000;

/// Draws all Brownian increments first, then the jump events, from `stream`.
NoiseGrid generate_coupled_noise(RandomStream& stream, double fine_delta, double horizon,
                                 const LevyMeasure& measure, int m);

/// Coarse increments on the grid n·coarse_delta: Brownian sums over the fine
/// steps of each window, and the window's jumps with offsets relative to its start.
std::vector<StepIncrements> aggregate_noise(const NoiseGrid& noise, double coarse_delta);

/// Integer k with coarse = k·fine, or DomainError when the ratio is not integral.
std::size_t refinement_ratio(double coarse, double fine);

}  // namespace tclevy
