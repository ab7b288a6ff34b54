#pragma once

#include <functional>
#include <limits>
#include <optional>

#include "tclevy/random_stream.hpp"

namespace tclevy {

/// Finite-activity jump measure ν restricted to {|z| < c}.
///
/// Jumps are simulated as a compound Poisson process with intensity
/// total_mass() and marks drawn from ν/total_mass(), so the mass must be
/// finite. c may be infinite when ν itself is finite on ℝ.
class LevyMeasure {
public:
    using MarkSampler = std::function<double(RandomStream&)>;
    using Density = std::function<double(double z)>;

    struct Spec {
        double truncation_radius = std::numeric_limits<double>::infinity();
        double total_mass = 0.0;
        MarkSampler mark_sampler;
        double second_moment = 0.0;   // ∫ z² ν(dz)
        Density density;              // optional; enables quadrature compensators
        bool symmetric = false;
    };

    explicit LevyMeasure(Spec spec);

    /// ν = 0.
    static LevyMeasure none();
    /// ν(dz) = mass · N(0, σ²)(dz) on ℝ.
    static LevyMeasure gaussian(double total_mass, double sigma);
    /// ν(dz) = mass/(2c) dz on (-c, c).
    static LevyMeasure uniform(double total_mass, double radius);

    double truncation_radius() const noexcept { return spec_.truncation_radius; }
    double total_mass() const noexcept { return spec_.total_mass; }
    double second_moment() const noexcept { return spec_.second_moment; }
    bool symmetric() const noexcept { return spec_.symmetric; }
    bool has_density() const noexcept { return static_cast<bool>(spec_.density); }
    double density(double z) const;

    /// One mark Z ~ ν/total_mass().
    double sample_mark(RandomStream& stream) const;

private:
    Spec spec_;
};

}  // namespace tclevy
