#include "tclevy/newton.hpp"

#include <cmath>
#include <limits>
#include <string>

#include <Eigen/LU>
#include <Eigen/SVD>

#include "tclevy/error.hpp"

namespace tclevy {
namespace {

const char* const kModule = "theta-solver";

double condition_estimate(const Matrix& jac) {
    if (jac.size() == 1) return jac(0, 0) == 0.0 ? std::numeric_limits<double>::infinity() : 1.0;
    Eigen::JacobiSVD<Matrix> svd(jac);
    const auto& s = svd.singularValues();
    const double smallest = s[s.size() - 1];
    return smallest == 0.0 ? std::numeric_limits<double>::infinity() : s[0] / smallest;
}

}  // namespace

Matrix finite_difference_jacobian(const ResidualFn& residual, const State& x, const State& fx) {
    const double root_eps = std::sqrt(std::numeric_limits<double>::epsilon());
    Matrix jac(fx.size(), x.size());
    State shifted = x;
    for (Eigen::Index j = 0; j < x.size(); ++j) {
        const double h = root_eps * (1.0 + std::abs(x[j]));
        shifted[j] = x[j] + h;
        jac.col(j) = (residual(shifted) - fx) / h;
        shifted[j] = x[j];
    }
    return jac;
}

NewtonResult newton_solve(const ResidualFn& residual, const ResidualJacobianFn& jacobian,
                          const State& x0, double tol, int max_iter) {
    if (!(tol > 0.0)) throw DomainError(kModule, "Newton tolerance must be positive");
    NewtonResult out{x0, 0, 0.0};
    State fx = residual(out.x);
    out.residual_norm = fx.norm();
    while (!(out.residual_norm <= tol)) {
        if (out.iterations >= max_iter) {
            throw ConvergenceError(kModule, "Newton iteration cap of " + std::to_string(max_iter) +
                                                " reached (residual " + std::to_string(out.residual_norm) + ")");
        }
        const Matrix jac = jacobian ? jacobian(out.x) : finite_difference_jacobian(residual, out.x, fx);
        if (!(condition_estimate(jac) <= kMaxJacobianCondition)) {
            throw ConvergenceError(kModule, "singular Newton Jacobian (condition estimate above 1e12)");
        }
        if (jac.size() == 1) {
            out.x[0] -= fx[0] / jac(0, 0);
        } else {
            out.x -= jac.partialPivLu().solve(fx);
        }
        ++out.iterations;
        fx = residual(out.x);
        out.residual_norm = fx.norm();
    }
    return out;
}

}  // namespace tclevy
