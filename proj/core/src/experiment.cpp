#include "tclevy/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <cmath>
#include <exception>
#include <mutex>
#include <numeric>
#include <optional>
#include <span>
#include <thread>

#include "tclevy/error.hpp"
#include "tclevy/log.hpp"
#include "tclevy/noise.hpp"
#include "tclevy/random_stream.hpp"
#include "tclevy/theta_solver.hpp"
#include "tclevy/time_change.hpp"

namespace tclevy {
namespace {

const char* const kModule = "experiment-harness";

constexpr std::uint64_t kBootstrapLane = 3;

struct Level {
    double delta;
    std::size_t ratio;  // delta / ref_delta
    ThetaMethod method;
};

// Runs fn(p) for p in [0, n). On failure rethrows the error of the lowest
// failing path index so the outcome does not depend on scheduling.
template <class Fn>
void for_each_path(std::size_t n, unsigned threads, Fn&& fn) {
    const unsigned workers = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(std::min<std::size_t>(n, 1024))));
    if (workers == 1) {
        for (std::size_t p = 0; p < n; ++p) fn(p);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::mutex error_mutex;
    std::size_t error_index = n;
    std::exception_ptr error;
    auto worker = [&] {
        for (std::size_t p = next++; p < n; p = next++) {
            try {
                fn(p);
            } catch (...) {
                std::lock_guard lock(error_mutex);
                if (p < error_index) {
                    error_index = p;
                    error = std::current_exception();
                }
            }
        }
    };
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
    if (error) std::rethrow_exception(error);
}

State terminal_value(const Level& level, const NoiseGrid& noise, std::size_t n_steps) {
    const std::vector<StepIncrements> increments = aggregate_noise(noise, level.delta);
    return level.method.simulate(increments, n_steps).values[n_steps];
}

double mean_of(std::span<const double> xs) {
    return std::accumulate(xs.begin(), xs.end(), 0.0) / static_cast<double>(xs.size());
}

double std_error_of(std::span<const double> xs, double mean) {
    if (xs.size() < 2) return 0.0;
    double ss = 0.0;
    for (double x : xs) ss += (x - mean) * (x - mean);
    return std::sqrt(ss / static_cast<double>(xs.size() - 1) / static_cast<double>(xs.size()));
}

ErrorTable empty_table(ErrorKind kind, const CoupledSamples& samples, const ExperimentSpec& spec) {
    ErrorTable table;
    table.kind = kind;
    table.theta = spec.theta;
    table.alpha = spec.alpha;
    table.ref_delta = samples.ref_delta;
    table.n_paths = samples.reference.size();
    table.seed = spec.seed;
    return table;
}

// Level indices ordered by Δ descending.
std::vector<std::size_t> descending_order(const std::vector<double>& deltas) {
    std::vector<std::size_t> order(deltas.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return deltas[a] > deltas[b]; });
    return order;
}

double table_statistic(ErrorKind kind, std::span<const double> xs) {
    const double m = mean_of(xs);
    return kind == ErrorKind::strong ? std::sqrt(m) : std::abs(m);
}

std::optional<OrderFit> least_squares(std::span<const ErrorRow> rows) {
    double sx = 0.0, sy = 0.0;
    std::size_t n = 0;
    for (const ErrorRow& r : rows) {
        if (!(r.error > 0.0)) continue;
        sx += std::log2(r.delta);
        sy += std::log2(r.error);
        ++n;
    }
    if (n < 2) return std::nullopt;
    const double mx = sx / static_cast<double>(n);
    const double my = sy / static_cast<double>(n);
    double sxx = 0.0, sxy = 0.0;
    for (const ErrorRow& r : rows) {
        if (!(r.error > 0.0)) continue;
        const double dx = std::log2(r.delta) - mx;
        sxx += dx * dx;
        sxy += dx * (std::log2(r.error) - my);
    }
    if (sxx == 0.0) return std::nullopt;
    const double slope = sxy / sxx;
    return OrderFit{slope, my - slope * mx, n};
}

}  // namespace

void validate_experiment(const SdeProblem& problem, const ExperimentSpec& spec) {
    problem.validate();
    if (spec.deltas.empty()) throw DomainError(kModule, "the stepsize ladder is empty");
    if (spec.n_paths == 0) throw DomainError(kModule, "n_paths must be positive");
    if (!(spec.horizon > 0.0) || std::isinf(spec.horizon)) throw DomainError(kModule, "horizon T must be positive and finite");
    if (spec.time_change && !(spec.alpha > 0.0 && spec.alpha < 1.0)) throw DomainError(kModule, "alpha must lie in (0,1)");
    if (!(spec.ref_delta > 0.0 && spec.ref_delta < 1.0)) throw DomainError(kModule, "ref_delta must lie in (0,1)");
    for (double delta : spec.deltas) {
        if (!(delta > 0.0 && delta < 1.0)) throw DomainError(kModule, "every stepsize must lie in (0,1)");
        if (delta < spec.ref_delta) throw DomainError(kModule, "ref_delta must not exceed any ladder stepsize");
        if (!std::has_single_bit(refinement_ratio(delta, spec.ref_delta))) {
            throw DomainError(kModule, "every stepsize must be a power-of-two multiple of ref_delta");
        }
        check_solver_config(problem, SolverConfig{spec.theta, delta});
        if (!spec.time_change) refinement_ratio(spec.horizon, delta);
    }
    check_solver_config(problem, SolverConfig{spec.theta, spec.ref_delta});
}

CoupledSamples simulate_coupled_terminals(const SdeProblem& problem, const ExperimentSpec& spec) {
    validate_experiment(problem, spec);
    const double max_delta = *std::max_element(spec.deltas.begin(), spec.deltas.end());
    const std::size_t max_ratio = refinement_ratio(max_delta, spec.ref_delta);

    const Level reference{spec.ref_delta, 1, ThetaMethod(problem, {spec.theta, spec.ref_delta})};
    std::vector<Level> levels;
    levels.reserve(spec.deltas.size());
    for (double delta : spec.deltas) {
        levels.push_back({delta, refinement_ratio(delta, spec.ref_delta), ThetaMethod(problem, {spec.theta, delta})});
    }

    CoupledSamples out;
    out.deltas = spec.deltas;
    out.ref_delta = spec.ref_delta;
    out.reference.resize(spec.n_paths);
    out.coarse.assign(levels.size(), std::vector<State>(spec.n_paths));

    for_each_path(spec.n_paths, spec.threads, [&](std::size_t p) {
        const RandomStream root = make_stream(spec.seed, p);
        RandomStream subordinator_stream = root.fork(kSubordinatorLane);
        RandomStream noise_stream = root.fork(kNoiseLane);

        std::size_t ref_steps;
        std::vector<std::size_t> level_steps(levels.size());
        std::size_t fine_steps;
        if (spec.time_change) {
            const SubordinatorPath fine = simulate_subordinator(subordinator_stream, spec.alpha, spec.ref_delta,
                                                                spec.horizon, max_ratio);
            ref_steps = fine.crossing_index();
            for (std::size_t i = 0; i < levels.size(); ++i) {
                level_steps[i] = build_inverse(coarsen_path(fine, levels[i].ratio)).terminal_index();
            }
            // E_Δ(T) <= E_ref(T) on a coupled grid; cover it, rounded up to a
            // whole coarsest step.
            fine_steps = (ref_steps / max_ratio + 1) * max_ratio;
        } else {
            fine_steps = refinement_ratio(spec.horizon, spec.ref_delta);
            ref_steps = fine_steps;
            for (std::size_t i = 0; i < levels.size(); ++i) level_steps[i] = fine_steps / levels[i].ratio;
        }

        const NoiseGrid noise =
            generate_coupled_noise(noise_stream, spec.ref_delta, static_cast<double>(fine_steps) * spec.ref_delta,
                                   problem.measure, problem.noise_dim);
        out.reference[p] = terminal_value(reference, noise, ref_steps);
        for (std::size_t i = 0; i < levels.size(); ++i) {
            out.coarse[i][p] = terminal_value(levels[i], noise, level_steps[i]);
        }
    });
    return out;
}

ErrorTable strong_error_table(const CoupledSamples& samples, const ExperimentSpec& spec) {
    ErrorTable table = empty_table(ErrorKind::strong, samples, spec);
    for (std::size_t i : descending_order(samples.deltas)) {
        std::vector<double> squared(samples.reference.size());
        for (std::size_t p = 0; p < squared.size(); ++p) {
            squared[p] = (samples.coarse[i][p] - samples.reference[p]).squaredNorm();
        }
        const double m = mean_of(squared);
        const double rms = std::sqrt(m);
        const double se = rms > 0.0 ? std_error_of(squared, m) / (2.0 * rms) : 0.0;
        table.rows.push_back({samples.deltas[i], rms, se});
        table.per_path.push_back(std::move(squared));
    }
    attach_fit(table);
    return table;
}

ErrorTable weak_error_table(const CoupledSamples& samples, const ExperimentSpec& spec,
                            const TestFunctional& phi) {
    ErrorTable table = empty_table(ErrorKind::weak, samples, spec);
    std::vector<double> phi_ref(samples.reference.size());
    for (std::size_t p = 0; p < phi_ref.size(); ++p) phi_ref[p] = phi(samples.reference[p]);
    for (std::size_t i : descending_order(samples.deltas)) {
        std::vector<double> diff(phi_ref.size());
        for (std::size_t p = 0; p < diff.size(); ++p) diff[p] = phi(samples.coarse[i][p]) - phi_ref[p];
        const double m = mean_of(diff);
        table.rows.push_back({samples.deltas[i], std::abs(m), std_error_of(diff, m)});
        table.per_path.push_back(std::move(diff));
    }
    attach_fit(table);
    return table;
}

ErrorTable strong_error_experiment(const SdeProblem& problem, const ExperimentSpec& spec) {
    return strong_error_table(simulate_coupled_terminals(problem, spec), spec);
}

ErrorTable weak_error_experiment(const SdeProblem& problem, const TestFunctional& phi,
                                 const ExperimentSpec& spec) {
    if (spec.theta != 0.0) throw DomainError(kModule, "weak-error experiments use Euler-Maruyama (theta = 0)");
    if (!phi) throw DomainError(kModule, "weak-error experiment needs a test functional");
    return weak_error_table(simulate_coupled_terminals(problem, spec), spec, phi);
}

OrderFit fit_order(const ErrorTable& table) {
    const auto dropped = std::count_if(table.rows.begin(), table.rows.end(),
                                       [](const ErrorRow& r) { return !(r.error > 0.0); });
    if (dropped > 0) warn("fit_order: excluded " + std::to_string(dropped) + " row(s) with nonpositive error");
    const auto fit = least_squares(table.rows);
    if (!fit) throw DomainError(kModule, "fit_order needs at least two rows with positive error and distinct stepsizes");
    return *fit;
}

void attach_fit(ErrorTable& table) {
    if (const auto fit = least_squares(table.rows)) {
        table.slope = fit->slope;
        table.intercept = fit->intercept;
        table.fitted = true;
    } else {
        table.fitted = false;
    }
}

SlopeInterval bootstrap_slope(const ErrorTable& table, int resamples, std::uint64_t seed, double level) {
    if (resamples < 1) throw DomainError(kModule, "bootstrap needs at least one resample");
    if (!(level > 0.0 && level < 1.0)) throw DomainError(kModule, "confidence level must lie in (0,1)");
    if (table.per_path.size() != table.rows.size() || table.rows.empty()) {
        throw DomainError(kModule, "bootstrap needs the per-path samples of every row");
    }
    const std::size_t n = table.per_path.front().size();
    if (n == 0) throw DomainError(kModule, "bootstrap needs at least one path");
    RandomStream stream(seed, 0, kBootstrapLane);
    std::vector<std::size_t> picks(n);
    std::vector<double> resampled(n);
    std::vector<ErrorRow> rows = table.rows;
    std::vector<double> slopes;
    slopes.reserve(static_cast<std::size_t>(resamples));
    for (int r = 0; r < resamples; ++r) {
        for (auto& k : picks) k = std::min(n - 1, static_cast<std::size_t>(stream.next_uniform() * static_cast<double>(n)));
        for (std::size_t i = 0; i < rows.size(); ++i) {
            for (std::size_t j = 0; j < n; ++j) resampled[j] = table.per_path[i][picks[j]];
            rows[i].error = table_statistic(table.kind, resampled);
        }
        if (const auto fit = least_squares(rows)) slopes.push_back(fit->slope);
    }
    if (slopes.empty()) throw DomainError(kModule, "no bootstrap resample produced a fit");
    std::sort(slopes.begin(), slopes.end());
    const double tail = 0.5 * (1.0 - level);
    auto quantile = [&](double q) {
        const double pos = q * static_cast<double>(slopes.size() - 1);
        const auto lo = static_cast<std::size_t>(std::floor(pos));
        const auto hi = std::min(lo + 1, slopes.size() - 1);
        return slopes[lo] + (pos - static_cast<double>(lo)) * (slopes[hi] - slopes[lo]);
    };
    return {quantile(tail), quantile(1.0 - tail)};
}

}  // namespace tclevy
