#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "support/oracles.hpp"
#include "tclevy/error.hpp"
#include "tclevy/samplers.hpp"

using namespace tclevy;
using tclevy::testing::sample_stats;
using tclevy::testing::sample_variance;

TEST(GaussianIncrement, VarianceMatchesDt) {
    RandomStream s = make_stream(11, 0);
    std::vector<double> x(100000);
    for (auto& v : x) v = sample_gaussian_increment(s, 0.25, 1)[0];
    EXPECT_NEAR(sample_variance(x), 0.25, 0.005);
}

TEST(GaussianIncrement, AdditivityOverSubsteps) {
    RandomStream s = make_stream(12, 0);
    constexpr int n = 50000;
    const double h = 0.1;
    std::vector<double> big(n), summed(n);
    for (int i = 0; i < n; ++i) {
        big[i] = sample_gaussian_increment(s, 4 * h, 1)[0];
        double acc = 0.0;
        for (int k = 0; k < 4; ++k) acc += sample_gaussian_increment(s, h, 1)[0];
        summed[i] = acc;
    }
    const double v1 = sample_variance(big), v2 = sample_variance(summed);
    // Standard error of a sample variance of a normal is σ²√(2/(n-1)).
    const double se = 4 * h * std::sqrt(2.0 / (n - 1));
    EXPECT_NEAR(v1, v2, 3 * std::sqrt(2.0) * se);
}

TEST(GaussianIncrement, ComponentsUncorrelated) {
    RandomStream s = make_stream(13, 0);
    constexpr int n = 100000;
    double cov = 0.0;
    for (int i = 0; i < n; ++i) {
        const State w = sample_gaussian_increment(s, 1.0, 2);
        cov += w[0] * w[1];
    }
    EXPECT_LT(std::abs(cov / n), 0.01);
}

TEST(GaussianIncrement, RejectsNonpositiveDt) {
    RandomStream s = make_stream(1, 0);
    EXPECT_THROW(sample_gaussian_increment(s, 0.0, 1), DomainError);
    EXPECT_THROW(sample_gaussian_increment(s, -1.0, 1), DomainError);
}

namespace {

tclevy::testing::SampleStats laplace_estimate(double alpha, double dt, double lambda, std::uint64_t seed,
                                              int n = 100000, double rescale = 1.0) {
    RandomStream s = make_stream(seed, 0);
    std::vector<double> v(n);
    for (auto& x : v) x = std::exp(-lambda * rescale * sample_stable_increment(s, alpha, dt));
    return sample_stats(v);
}

}  // namespace

TEST(StableIncrement, LaplaceAtLambdaOne) {
    const auto st = laplace_estimate(0.9, 1.0, 1.0, 21);
    EXPECT_NEAR(st.mean, std::exp(-1.0), 3 * st.std_error);
}

TEST(StableIncrement, LaplaceAtLambdaTwo) {
    const auto st = laplace_estimate(0.45, 1.0, 2.0, 22);
    EXPECT_NEAR(st.mean, 0.2551151526451088, 3 * st.std_error);
}

TEST(StableIncrement, LaplaceGrid) {
    for (double alpha : {0.45, 0.9}) {
        for (double lambda : {0.5, 1.0, 2.0}) {
            const auto st = laplace_estimate(alpha, 1.0, lambda, 23);
            EXPECT_NEAR(st.mean, std::exp(-std::pow(lambda, alpha)), 4 * st.std_error)
                << "alpha=" << alpha << " lambda=" << lambda;
        }
    }
}

TEST(StableIncrement, SelfSimilarScaling) {
    // For α = 1/2, D(dt) has the law of dt² D(1).
    const double dt = 0.0625;
    for (double lambda : {0.5, 1.0, 2.0}) {
        const auto small = laplace_estimate(0.5, dt, lambda, 24);
        const auto scaled = laplace_estimate(0.5, 1.0, lambda, 25, 100000, dt * dt);
        EXPECT_NEAR(small.mean, scaled.mean, 3 * std::hypot(small.std_error, scaled.std_error))
            << "lambda=" << lambda;
    }
}

TEST(StableIncrement, DrawsArePositive) {
    RandomStream s = make_stream(26, 0);
    for (double alpha : {0.1, 0.45, 0.9, 0.99}) {
        for (int i = 0; i < 20000; ++i) ASSERT_GT(sample_stable_increment(s, alpha, 1e-3), 0.0);
    }
}

TEST(StableIncrement, RejectsBadParameters) {
    RandomStream s = make_stream(1, 0);
    EXPECT_THROW(sample_stable_increment(s, 0.0, 1.0), DomainError);
    EXPECT_THROW(sample_stable_increment(s, 1.0, 1.0), DomainError);
    EXPECT_THROW(sample_stable_increment(s, 0.5, 0.0), DomainError);
}

TEST(JumpBatch, ZeroMeasureGivesEmptyBatches) {
    RandomStream s = make_stream(31, 0);
    const LevyMeasure none = LevyMeasure::none();
    for (int i = 0; i < 1000; ++i) EXPECT_TRUE(sample_jump_batch(s, none, 1.0).empty());
}

TEST(JumpBatch, MeanCountIsIntensityTimesDt) {
    RandomStream s = make_stream(32, 0);
    const LevyMeasure nu = LevyMeasure::gaussian(2.0, 1.0);
    std::vector<double> counts(100000);
    for (auto& c : counts) c = static_cast<double>(sample_jump_batch(s, nu, 1.0).size());
    const auto st = sample_stats(counts);
    EXPECT_NEAR(st.mean, 2.0, 3 * st.std_error);
}

TEST(JumpBatch, OffsetsSortedAndInsideWindow) {
    RandomStream s = make_stream(33, 0);
    const LevyMeasure nu = LevyMeasure::uniform(50.0, 0.5);
    for (int i = 0; i < 1000; ++i) {
        const JumpBatch b = sample_jump_batch(s, nu, 0.3);
        for (std::size_t k = 0; k < b.size(); ++k) {
            ASSERT_GE(b.events[k].offset, 0.0);
            ASSERT_LT(b.events[k].offset, 0.3);
            ASSERT_LT(std::abs(b.events[k].mark), 0.5);
            if (k > 0) ASSERT_LE(b.events[k - 1].offset, b.events[k].offset);
        }
    }
}

TEST(JumpBatch, PaperMarksHaveUnitVariance) {
    RandomStream s = make_stream(34, 0);
    const LevyMeasure nu = LevyMeasure::gaussian(2.0, 1.0);
    std::vector<double> marks;
    while (marks.size() < 100000) {
        for (const auto& e : sample_jump_batch(s, nu, 1.0).events) marks.push_back(e.mark);
    }
    marks.resize(100000);
    EXPECT_NEAR(sample_variance(marks), 1.0, 0.02);
}

TEST(JumpBatch, CompensatedSumHasMeanZero) {
    RandomStream s = make_stream(35, 0);
    const LevyMeasure nu = LevyMeasure::uniform(3.0, 1.0);
    // h(t,x,z) = x(z + z²): not odd, so the compensator is nonzero.
    const JumpFn h = [](double, const State& x, double z) -> State { return x * (z + z * z); };
    const State x = State::Constant(1, 1.5);
    const double dt = 0.5;
    const double comp = compensator_value(nu, h, 0.0, x)[0];
    EXPECT_NEAR(comp, 1.5 * 3.0 / 3.0, 1e-12);  // 1.5 · mass · E[z²] with z ~ U(-1,1)
    std::vector<double> v(100000);
    for (auto& r : v) {
        double sum = 0.0;
        for (const auto& e : sample_jump_batch(s, nu, dt).events) sum += h(0.0, x, e.mark)[0];
        r = sum - dt * comp;
    }
    const auto st = sample_stats(v);
    EXPECT_NEAR(st.mean, 0.0, 4 * st.std_error);
}

TEST(LevyMeasure, SecondMomentMatchesSamples) {
    for (const LevyMeasure& nu : {LevyMeasure::gaussian(2.0, 1.0), LevyMeasure::uniform(1.0, 2.0)}) {
        RandomStream s = make_stream(36, 0);
        std::vector<double> z2(1000000);
        for (auto& v : z2) {
            const double z = nu.sample_mark(s);
            v = z * z;
        }
        const auto st = sample_stats(z2);
        EXPECT_NEAR(nu.total_mass() * st.mean, nu.second_moment(), 5 * nu.total_mass() * st.std_error);
    }
}

TEST(LevyMeasure, RejectsInfiniteActivity) {
    LevyMeasure::Spec spec;
    spec.total_mass = std::numeric_limits<double>::infinity();
    spec.mark_sampler = [](RandomStream& s) { return s.next_uniform(); };
    EXPECT_THROW(LevyMeasure{spec}, DomainError);
    LevyMeasure::Spec no_sampler;
    no_sampler.total_mass = 1.0;
    EXPECT_THROW(LevyMeasure{no_sampler}, DomainError);
}

TEST(Compensator, OddIntegrandVanishes) {
    const LevyMeasure nu = LevyMeasure::gaussian(2.0, 1.0);
    const JumpFn h = [](double, const State& x, double z) -> State { return x * z; };
    EXPECT_NEAR(compensator_value(nu, h, 0.3, State::Constant(1, 2.0))[0], 0.0, 1e-12);
}

TEST(Compensator, SecondMomentOfPaperMeasure) {
    const LevyMeasure nu = LevyMeasure::gaussian(2.0, 1.0);
    const JumpFn h = [](double, const State& x, double z) -> State { return State::Constant(x.size(), z * z); };
    EXPECT_NEAR(compensator_value(nu, h, 0.0, State::Zero(1))[0], 2.0, 1e-10);
}

TEST(Compensator, ZeroCoefficient) {
    const LevyMeasure nu = LevyMeasure::gaussian(2.0, 1.0);
    const JumpFn h = [](double, const State& x, double) -> State { return State::Zero(x.size()); };
    const State v = compensator_value(nu, h, 0.0, State::Constant(3, 1.0));
    EXPECT_EQ(v.size(), 3);
    EXPECT_EQ(v.norm(), 0.0);
}

TEST(Compensator, NonConvergenceIsReported) {
    // A discontinuous integrand on a wide uniform measure converges too slowly.
    const LevyMeasure nu = LevyMeasure::uniform(1.0, 1.0);
    const JumpFn h = [](double, const State& x, double z) -> State {
        return State::Constant(x.size(), std::sin(400.0 * z + 0.3) > 0 ? 1.0 : 0.0);
    };
    EXPECT_THROW(compensator_value(nu, h, 0.0, State::Zero(1)), ConvergenceError);
}

TEST(Quadrature, GaussLegendreIntegratesPolynomialsExactly) {
    const QuadratureRule rule = gauss_legendre(64);
    double sum_w = 0.0, sum_x4 = 0.0;
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
        sum_w += rule.weights[i];
        sum_x4 += rule.weights[i] * std::pow(rule.nodes[i], 4);
    }
    EXPECT_NEAR(sum_w, 2.0, 1e-13);
    EXPECT_NEAR(sum_x4, 0.4, 1e-13);
}
