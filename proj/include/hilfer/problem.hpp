#pragma once

#include "hilfer/frac_order.hpp"
#include "hilfer/rhs_expr.hpp"

namespace hilfer {

/// Cauchy-type problem D^{alpha,beta} y = f(x, y) on (a, b] with the
/// weighted initial condition I^{1-gamma} y(a) = y_a.
struct ProblemSpec {
    double a = 0.0;
    double b = 1.0;
    FracOrder ord = FracOrder::make(0.5, 0.5);
    double y_a = 0.0;
    Rhs rhs = Rhs::zero();
    double lipschitz_A = 1.0;
    /// Set when lipschitz_A came from estimate_lipschitz rather than the user.
    bool lipschitz_estimated = false;

    void validate() const;
};

/// Weighted companion of the forcing, (x - a)^(1-gamma) f(x, y(x)), given the
/// companion w of y at x. At x = a with gamma < 1 the limit is approximated by
/// evaluating at a + kAnchorOffset * (next_x - a).
double rhs_companion(const ProblemSpec& spec, double x, double w, double next_x);

inline constexpr double kAnchorOffset = 1e-10;

} // namespace hilfer
