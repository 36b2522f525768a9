#pragma once

#include "hilfer/frac_order.hpp"
#include "hilfer/mesh.hpp"
#include "hilfer/problem.hpp"

#include <cstddef>

namespace hilfer {

/// Riemann-Liouville integral I^order g evaluated at every node. The result
/// carries weight exponent min(1, sigma + order) where sigma = g.gamma_w(),
/// so its companion stays continuous at the anchor. The companion of g is
/// interpolated linearly in (x - anchor)^omega between nodes.
WeightedGridFunction rl_integral(double order, const WeightedGridFunction& g,
                                 double omega = 1.0);

/// Raw nodal values of I^order g (entry 0 is 0: the empty integral).
std::vector<double> rl_integral_values(double order, const WeightedGridFunction& g,
                                       double omega = 1.0);

struct DerivativeDiagnostics {
    /// Nodes where the differenced values agree to within 1e3 ulps.
    std::size_t cancellation_nodes = 0;
};

/// Riemann-Liouville derivative, d/dx I^{1-order} f. The result has weight
/// exponent `order`. Requires f.gamma_w() >= order. Same discretization as
/// hilfer_derivative with beta = 0.
WeightedGridFunction rl_derivative(double order, const WeightedGridFunction& f,
                                   DerivativeDiagnostics* diag = nullptr);

/// Hilfer derivative I^{beta(1-alpha)} d/dx I^{(1-beta)(1-alpha)} f with
/// result weight exponent gamma. Requires f.gamma_w() >= gamma.
///
/// The inner derivative is taken in the variable s = (x - a)^alpha with
/// second-order three-point differences, which keeps the power-law
/// behaviour of C_{1-gamma} functions at the anchor inside a smooth
/// function of s. Companions are interpolated linearly in s as well.
WeightedGridFunction hilfer_derivative(const FracOrder& ord, const WeightedGridFunction& f,
                                       DerivativeDiagnostics* diag = nullptr);

/// max over nodes x > a of |companion of (D^{alpha,beta} y - f(x, y))|.
double residual(const ProblemSpec& spec, const WeightedGridFunction& y);

/// Companion of f(x, y(x)) at every node of y's mesh.
std::vector<double> rhs_companions(const ProblemSpec& spec, const WeightedGridFunction& y);

} // namespace hilfer
