#pragma once

#include <cstddef>
#include <vector>

#include "tclevy/random_stream.hpp"

namespace tclevy {

/// Grid samples D(nΔ) of an α-stable subordinator, n = 0, 1, ..., grown until
/// the first value exceeding the horizon T.
///
/// crossing_index() is the N with D(NΔ) <= T < D((N+1)Δ). values() may extend
/// past N+1 when the path was padded for coarsening.
class SubordinatorPath {
public:
    /// Validates a hand-built or subsampled grid: values[0] == 0,
    /// nondecreasing, and some value exceeds T.
    SubordinatorPath(double alpha, double delta, double horizon, std::vector<double> values);

    double alpha() const noexcept { return alpha_; }
    double delta() const noexcept { return delta_; }
    double horizon() const noexcept { return horizon_; }
    const std::vector<double>& values() const noexcept { return values_; }
    std::size_t crossing_index() const noexcept { return crossing_index_; }

private:
    double alpha_;
    double delta_;
    double horizon_;
    std::vector<double> values_;
    std::size_t crossing_index_;
};

inline constexpr std::size_t kMaxSubordinatorSteps = 1'000'000'000;

/// Cumulative sums of i.i.d. stable increments on the grid nΔ, grown in
/// doubling blocks until D exceeds T. The number of increments drawn is padded
/// up to a multiple of `align` so the path can later be coarsened by any
/// factor dividing `align`.
SubordinatorPath simulate_subordinator(RandomStream& stream, double alpha, double delta,
                                       double horizon, std::size_t align = 1);

/// Subsample every factor-th grid value; the result lives on the grid factor·Δ.
SubordinatorPath coarsen_path(const SubordinatorPath& path, std::size_t factor);

/// The step function E_Δ(t) = (min{n : D(nΔ) > t} - 1)Δ on [0, T].
///
/// Intervals are half-open, t ∈ [D(nΔ), D((n+1)Δ)) ↦ nΔ, and E_Δ(T) = NΔ.
class InverseTimeChange {
public:
    explicit InverseTimeChange(SubordinatorPath path);

    const SubordinatorPath& path() const noexcept { return path_; }
    double delta() const noexcept { return path_.delta(); }
    double horizon() const noexcept { return path_.horizon(); }

    /// Grid index n with E_Δ(t) = nΔ.
    std::size_t index_at(double t) const;
    double operator()(double t) const { return static_cast<double>(index_at(t)) * delta(); }
    std::size_t terminal_index() const noexcept { return path_.crossing_index(); }

private:
    SubordinatorPath path_;
};

InverseTimeChange build_inverse(SubordinatorPath path);
double eval_inverse(const InverseTimeChange& itc, double t);

}  // namespace tclevy
