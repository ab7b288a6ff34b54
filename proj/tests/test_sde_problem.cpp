#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "tclevy/error.hpp"
#include "tclevy/random_stream.hpp"
#include "tclevy/sde_problem.hpp"

using namespace tclevy;

namespace {

State scalar(double v) { return State::Constant(1, v); }

}  // namespace

TEST(PaperExample, CoefficientSpotChecks) {
    const SdeProblem p = builtin_paper_example();
    EXPECT_NO_THROW(p.validate());
    EXPECT_EQ(p.state_dim, 1);
    EXPECT_EQ(p.noise_dim, 1);
    EXPECT_EQ(p.x0[0], 1.0);
    EXPECT_EQ(p.drift(0.0, scalar(1.0))[0], 1.0);
    EXPECT_DOUBLE_EQ(p.diffusion(std::numbers::pi, scalar(0.0))(0, 0), std::numbers::pi);
    EXPECT_EQ(p.jump(0.7, scalar(3.0), -2.0)[0], -6.0);
    EXPECT_EQ(p.compensator_at(0.4, scalar(2.5))[0], 0.0);
    EXPECT_EQ(p.measure.total_mass(), 2.0);
    EXPECT_EQ(p.hoelder_exponent, 2.0);
    EXPECT_TRUE(p.moment_bounds_asserted);
}

TEST(PaperExample, QuadratureCompensatorAgreesWithAnalytic) {
    SdeProblem p = builtin_paper_example();
    p.compensator = nullptr;
    EXPECT_NEAR(p.compensator_at(0.4, scalar(2.5))[0], 0.0, 1e-12);
}

TEST(PaperExample, LipschitzSpotCheck) {
    const SdeProblem p = builtin_paper_example();
    EXPECT_LE(lipschitz_spot_check(p, 7, 1000), 1.01);
}

TEST(PaperExample, TimeHoelderSpotCheck) {
    const SdeProblem p = builtin_paper_example();
    RandomStream s = make_stream(8, 0);
    for (int k = 0; k < 1000; ++k) {
        const double t = 5.0 * s.next_uniform();
        const double u = 5.0 * s.next_uniform();
        const State x = scalar(-5.0 + 10.0 * s.next_uniform());
        const double lhs = (p.drift(t, x) - p.drift(u, x)).squaredNorm() +
                           (p.diffusion(t, x) - p.diffusion(u, x)).squaredNorm();
        ASSERT_LE(lhs, 2.0 * (1.0 + x.squaredNorm()) * std::pow(std::abs(t - u), p.hoelder_exponent) + 1e-15);
    }
}

TEST(LinearProblem, ZeroDynamicsKeepInitialMoment) {
    const SdeProblem p = builtin_linear_problem(0.0, 0.0, 0.0, 1.5);
    for (double t : {0.0, 0.5, 3.0}) EXPECT_EQ(linear_second_moment(p, t), 2.25);
}

TEST(LinearProblem, SecondMomentExamples) {
    EXPECT_DOUBLE_EQ(linear_second_moment(builtin_linear_problem(-1.0, 0.5, 0.0), 1.0), 0.17377394345044514);
    EXPECT_DOUBLE_EQ(linear_second_moment(builtin_linear_problem(0.0, 0.0, 1.0), 1.0), 7.38905609893065);
    EXPECT_DOUBLE_EQ(linear_second_moment(builtin_linear_problem(-1.0, 0.5, 1.0), 1.0), 1.2840254166877414);
    EXPECT_EQ(linear_second_moment(builtin_linear_problem(-1.0, 0.5, 1.0, 3.0), 0.0), 9.0);
}

TEST(LinearProblem, ScalingQuadruplesMoment) {
    for (double t : {0.0, 0.3, 1.0, 2.0}) {
        const double one = linear_second_moment(builtin_linear_problem(-0.3, 0.7, 0.4, 1.25), t);
        const double two = linear_second_moment(builtin_linear_problem(-0.3, 0.7, 0.4, 2.5), t);
        EXPECT_EQ(two, 4.0 * one);
    }
}

TEST(LinearProblem, LipschitzSpotCheck) {
    EXPECT_LE(lipschitz_spot_check(builtin_linear_problem(-1.0, 0.5, 1.0), 9, 1000), 1.01);
}

TEST(LinearProblem, MomentRequiresLinearProblem) {
    EXPECT_THROW(linear_second_moment(builtin_paper_example(), 1.0), DomainError);
}

TEST(SdeProblem, ValidationRejectsBrokenProblems) {
    SdeProblem p = builtin_paper_example();
    p.lipschitz_constant = 0.0;
    EXPECT_THROW(p.validate(), DomainError);
    p = builtin_paper_example();
    p.x0 = State::Zero(2);
    EXPECT_THROW(p.validate(), DomainError);
    p = builtin_paper_example();
    p.drift = nullptr;
    EXPECT_THROW(p.validate(), DomainError);
    p = builtin_paper_example();
    p.state_dim = 9;
    EXPECT_THROW(p.validate(), DomainError);
}
