#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "tclevy/linalg.hpp"
#include "tclevy/sde_problem.hpp"

namespace tclevy {

// Sub-streams of make_stream(seed, path_index) used by every path simulation,
// so a single path can be regenerated outside an experiment.
inline constexpr std::uint64_t kSubordinatorLane = 1;
inline constexpr std::uint64_t kNoiseLane = 2;

/// One coupled Monte Carlo study: every path draws one subordinator on the
/// reference grid and one fine NoiseGrid, and every stepsize in the ladder is
/// driven by subsampling/aggregating them.
struct ExperimentSpec {
    double theta = 0.0;
    double alpha = 0.9;
    std::vector<double> deltas;   // coarse ladder
    double ref_delta = 0.0;       // reference stepsize, divides every coarse one
    std::size_t n_paths = 0;
    double horizon = 1.0;         // T, on the time-changed clock
    std::uint64_t seed = 0;
    unsigned threads = 1;
    bool time_change = true;      // false: plain SDE at original time T
};

/// Terminal values X_Δ(T) for each path and level.
struct CoupledSamples {
    std::vector<double> deltas;
    double ref_delta = 0.0;
    std::vector<std::vector<State>> coarse;  // [level][path]
    std::vector<State> reference;            // [path]
};

enum class ErrorKind { strong, weak };

struct ErrorRow {
    double delta;
    double error;
    double std_error;
};

/// Per-stepsize error estimates, sorted by Δ descending. per_path[i] keeps the
/// path-level sample behind rows[i] (squared errors for strong tables,
/// Φ(X_Δ) - Φ(X_ref) for weak ones) for bootstrap and reanalysis.
struct ErrorTable {
    ErrorKind kind = ErrorKind::strong;
    double theta = 0.0;
    double alpha = 0.0;
    std::vector<ErrorRow> rows;
    std::vector<std::vector<double>> per_path;
    double ref_delta = 0.0;
    std::size_t n_paths = 0;
    std::uint64_t seed = 0;
    double slope = 0.0;
    double intercept = 0.0;
    bool fitted = false;
};

using TestFunctional = std::function<double(const State&)>;

void validate_experiment(const SdeProblem& problem, const ExperimentSpec& spec);

/// Runs the coupled paths; results are independent of spec.threads.
CoupledSamples simulate_coupled_terminals(const SdeProblem& problem, const ExperimentSpec& spec);

/// RMS error sqrt(mean |X_Δ(T) - X_ref(T)|²) per Δ, standard error by the
/// delta method through the square root.
ErrorTable strong_error_table(const CoupledSamples& samples, const ExperimentSpec& spec);

/// |mean Φ(X_Δ(T)) - mean Φ(X_ref(T))| per Δ, standard error from the
/// coupled per-path differences.
ErrorTable weak_error_table(const CoupledSamples& samples, const ExperimentSpec& spec,
                            const TestFunctional& phi);

ErrorTable strong_error_experiment(const SdeProblem& problem, const ExperimentSpec& spec);
/// Euler-Maruyama only: spec.theta must be 0.
ErrorTable weak_error_experiment(const SdeProblem& problem, const TestFunctional& phi,
                                 const ExperimentSpec& spec);

struct OrderFit {
    double slope;
    double intercept;
    std::size_t rows_used;
};

/// Least squares of log2(error) on log2(Δ). Rows with error <= 0 are dropped
/// with a warning; fewer than two usable rows is a DomainError.
OrderFit fit_order(const ErrorTable& table);

/// Fills table.slope/intercept from fit_order when at least two rows are usable.
void attach_fit(ErrorTable& table);

struct SlopeInterval {
    double lower;
    double upper;
};

/// Percentile interval of the fitted slope over path-level bootstrap resamples.
SlopeInterval bootstrap_slope(const ErrorTable& table, int resamples, std::uint64_t seed,
                              double level = 0.95);

}  // namespace tclevy
