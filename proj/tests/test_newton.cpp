#include <gtest/gtest.h>

#include <cmath>

#include "tclevy/error.hpp"
#include "tclevy/newton.hpp"

using namespace tclevy;

namespace {

State scalar(double v) { return State::Constant(1, v); }

}  // namespace

TEST(Newton, AffineResidualInOneIteration) {
    const auto r = newton_solve([](const State& x) -> State { return x - scalar(1.0); },
                                [](const State&) -> Matrix { return Matrix::Identity(1, 1); }, scalar(0.0), 1e-5, 50);
    EXPECT_EQ(r.x[0], 1.0);
    EXPECT_EQ(r.iterations, 1);
}

TEST(Newton, LinearImplicitStep) {
    // x - 0.1 (sin 0 + x) - 1 = 0  ⇒  x = 1/0.9.
    const auto residual = [](const State& x) -> State { return x - 0.1 * x - scalar(1.0); };
    const auto r = newton_solve(residual, {}, scalar(1.0), 1e-5, 50);
    EXPECT_NEAR(r.x[0], 1.0 / 0.9, 1e-5);
    EXPECT_LE(r.residual_norm, 1e-5);
}

TEST(Newton, CubeRoot) {
    const auto residual = [](const State& x) -> State { return scalar(x[0] * x[0] * x[0] - 8.0); };
    const auto jac = [](const State& x) -> Matrix { return Matrix::Constant(1, 1, 3.0 * x[0] * x[0]); };
    const auto r = newton_solve(residual, jac, scalar(3.0), 1e-5, 50);
    EXPECT_NEAR(r.x[0], 2.0, 1e-5);
    EXPECT_LE(std::abs(residual(r.x)[0]), 1e-5);
    const auto fd = newton_solve(residual, {}, scalar(3.0), 1e-5, 50);
    EXPECT_NEAR(fd.x[0], 2.0, 1e-5);
}

TEST(Newton, TwoDimensionalSystem) {
    // x² + y² = 4, x = y  ⇒  x = y = √2.
    const auto residual = [](const State& v) -> State {
        State r(2);
        r << v[0] * v[0] + v[1] * v[1] - 4.0, v[0] - v[1];
        return r;
    };
    State x0(2);
    x0 << 1.0, 2.0;
    const auto r = newton_solve(residual, {}, x0, 1e-10, 50);
    EXPECT_NEAR(r.x[0], std::sqrt(2.0), 1e-9);
    EXPECT_NEAR(r.x[1], std::sqrt(2.0), 1e-9);
}

TEST(Newton, SingularJacobianIsReported) {
    const auto residual = [](const State& x) -> State { return scalar(x[0] * x[0] + 1.0); };
    const auto jac = [](const State& x) -> Matrix { return Matrix::Constant(1, 1, 2.0 * x[0]); };
    EXPECT_THROW(newton_solve(residual, jac, scalar(0.0), 1e-5, 50), ConvergenceError);
}

TEST(Newton, IterationCapIsReported) {
    const auto residual = [](const State& x) -> State { return scalar(x[0] * x[0] + 1.0); };
    EXPECT_THROW(newton_solve(residual, {}, scalar(0.5), 1e-5, 50), ConvergenceError);
}

TEST(Newton, NonFiniteResidualIsNotConvergence) {
    const auto residual = [](const State&) -> State { return scalar(std::nan("")); };
    const auto jac = [](const State&) -> Matrix { return Matrix::Identity(1, 1); };
    EXPECT_THROW(newton_solve(residual, jac, scalar(0.0), 1e-5, 5), ConvergenceError);
}
