#include "tclevy/time_change.hpp"

#include <algorithm>
#include <bit>
#include <cmath>

#include "tclevy/error.hpp"
#include "tclevy/samplers.hpp"

namespace tclevy {
namespace {

const char* const kModule = "time-change";

void check_parameters(double alpha, double delta, double horizon) {
    if (!(alpha > 0.0 && alpha < 1.0)) throw DomainError(kModule, "alpha must lie in (0,1)");
    if (!(delta > 0.0 && delta < 1.0)) throw DomainError(kModule, "delta must lie in (0,1)");
    if (!(horizon > 0.0) || std::isinf(horizon)) throw DomainError(kModule, "horizon T must be positive and finite");
}

}  // namespace

SubordinatorPath::SubordinatorPath(double alpha, double delta, double horizon,
                                   std::vector<double> values)
    : alpha_(alpha), delta_(delta), horizon_(horizon), values_(std::move(values)) {
    check_parameters(alpha, delta, horizon);
    if (values_.empty() || values_.front() != 0.0) {
        throw DomainError(kModule, "subordinator path must start at D(0) = 0");
    }
    if (!std::is_sorted(values_.begin(), values_.end())) {
        throw DomainError(kModule, "subordinator values must be nondecreasing");
    }
    const auto first_above = std::upper_bound(values_.begin(), values_.end(), horizon_);
    if (first_above == values_.end()) {
        throw DomainError(kModule, "subordinator path never exceeds the horizon");
    }
    crossing_index_ = static_cast<std::size_t>(first_above - values_.begin()) - 1;
}

SubordinatorPath simulate_subordinator(RandomStream& stream, double alpha, double delta,
                                       double horizon, std::size_t align) {
    check_parameters(alpha, delta, horizon);
    if (align == 0) throw DomainError(kModule, "alignment must be positive");
    std::vector<double> values{0.0};
    std::size_t block = 1024;
    double level = 0.0;
    while (level <= horizon) {
        if (values.size() - 1 + block > kMaxSubordinatorSteps) {
            throw ResourceError(kModule, "subordinator exceeded 1e9 grid steps; parameters are pathological");
        }
        values.reserve(values.size() + block);
        for (std::size_t i = 0; i < block && level <= horizon; ++i) {
            level += sample_stable_increment(stream, alpha, delta);
            values.push_back(level);
        }
        block *= 2;
    }
    while ((values.size() - 1) % align != 0) {
        level += sample_stable_increment(stream, alpha, delta);
        values.push_back(level);
    }
    return SubordinatorPath(alpha, delta, horizon, std::move(values));
}

SubordinatorPath coarsen_path(const SubordinatorPath& path, std::size_t factor) {
    if (factor == 0 || !std::has_single_bit(factor)) {
        throw DomainError(kModule, "coarsening factor must be a power of two");
    }
    if (factor == 1) return path;
    const std::vector<double>& fine = path.values();
    if (factor > fine.size() - 1) throw DomainError(kModule, "coarsening factor exceeds grid length");
    const double coarse_delta = path.delta() * static_cast<double>(factor);
    if (!(coarse_delta < 1.0)) throw DomainError(kModule, "coarsened stepsize must stay below 1");
    std::vector<double> coarse;
    coarse.reserve(fine.size() / factor + 1);
    for (std::size_t i = 0; i < fine.size(); i += factor) coarse.push_back(fine[i]);
    if (coarse.back() <= path.horizon()) {
        throw DomainError(kModule, "coarsened grid does not reach past the horizon; pad the fine path");
    }
    return SubordinatorPath(path.alpha(), coarse_delta, path.horizon(), std::move(coarse));
}

InverseTimeChange::InverseTimeChange(SubordinatorPath path) : path_(std::move(path)) {}

std::size_t InverseTimeChange::index_at(double t) const {
    if (!(t >= 0.0 && t <= path_.horizon())) throw DomainError(kModule, "query time outside [0, T]");
    const auto& v = path_.values();
    const auto last = v.begin() + static_cast<std::ptrdiff_t>(path_.crossing_index()) + 1;
    return static_cast<std::size_t>(std::upper_bound(v.begin(), last, t) - v.begin()) - 1;
}

InverseTimeChange build_inverse(SubordinatorPath path) { return InverseTimeChange(std::move(path)); }

double eval_inverse(const InverseTimeChange& itc, double t) { return itc(t); }

}  // namespace tclevy
