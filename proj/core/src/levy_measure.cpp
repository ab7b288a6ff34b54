#include "tclevy/levy_measure.hpp"

#include <cmath>
#include <numbers>

#include "tclevy/error.hpp"

namespace tclevy {
namespace {
const char* const kModule = "stochastic-kernels";
}

LevyMeasure::LevyMeasure(Spec spec) : spec_(std::move(spec)) {
    if (!(spec_.truncation_radius > 0.0)) {
        throw DomainError(kModule, "truncation radius c must be positive");
    }
    if (std::isinf(spec_.total_mass)) {
        throw DomainError(kModule, "infinite-activity measure: nu({|z|<c}) must be finite");
    }
    if (!(spec_.total_mass >= 0.0)) {
        throw DomainError(kModule, "total mass must be a nonnegative real");
    }
    if (!(spec_.second_moment >= 0.0) || std::isinf(spec_.second_moment)) {
        throw DomainError(kModule, "second moment must be a finite nonnegative real");
    }
    if (spec_.total_mass > 0.0 && !spec_.mark_sampler) {
        throw DomainError(kModule, "a measure with positive mass needs a mark sampler");
    }
}

LevyMeasure LevyMeasure::none() { return LevyMeasure(Spec{}); }

LevyMeasure LevyMeasure::gaussian(double total_mass, double sigma) {
    if (!(sigma > 0.0)) throw DomainError(kModule, "gaussian mark scale must be positive");
    Spec spec;
    spec.total_mass = total_mass;
    spec.second_moment = total_mass * sigma * sigma;
    spec.mark_sampler = [sigma](RandomStream& s) { return sigma * s.next_gaussian(); };
    spec.density = [total_mass, sigma](double z) {
        const double u = z / sigma;
        return total_mass * std::exp(-0.5 * u * u) / (sigma * std::sqrt(2.0 * std::numbers::pi));
    };
    spec.symmetric = true;
    return LevyMeasure(std::move(spec));
}

LevyMeasure LevyMeasure::uniform(double total_mass, double radius) {
    if (!(radius > 0.0) || std::isinf(radius)) {
        throw DomainError(kModule, "uniform mark radius must be finite and positive");
    }
    Spec spec;
    spec.truncation_radius = radius;
    spec.total_mass = total_mass;
    spec.second_moment = total_mass * radius * radius / 3.0;
    spec.mark_sampler = [radius](RandomStream& s) { return radius * (2.0 * s.next_uniform() - 1.0); };
    spec.density = [total_mass, radius](double z) {
        return std::abs(z) < radius ? total_mass / (2.0 * radius) : 0.0;
    };
    spec.symmetric = true;
    return LevyMeasure(std::move(spec));
}

double LevyMeasure::density(double z) const {
    if (!spec_.density) throw DomainError(kModule, "measure has no density");
    return spec_.density(z);
}

double LevyMeasure::sample_mark(RandomStream& stream) const {
    if (spec_.total_mass == 0.0) throw DomainError(kModule, "cannot sample marks of a zero measure");
    return spec_.mark_sampler(stream);
}

}  // namespace tclevy
