#pragma once

#include "hilfer/frac_order.hpp"
#include "hilfer/mesh.hpp"
#include "hilfer/picard_solver.hpp"
#include "hilfer/problem.hpp"

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <span>
#include <vector>

namespace hilfer {

struct GronwallOptions {
    double tol_series = 1e-12;
    std::size_t max_series_terms = 1000;
    /// interpolation exponent handed to the product rule
    double omega = 1.0;
};

/// Right-hand side of the singular Gronwall inequality
///
///   a(t) + int_a^t sum_{n>=1} (g(t) Gamma(beta))^n / Gamma(n beta) (t - s)^{n beta - 1} a(s) ds
///
/// at every node of `grid`, with a given by plain nodal values. Term n is
/// (g Gamma(beta))^n I^{n beta} a; the sum stops once three consecutive terms
/// add less than tol_series relative to the running total at every node.
std::vector<double> gronwall_envelope(std::span<const double> a_vals,
                                      std::span<const double> g_vals, double beta_g,
                                      const Mesh& grid, const GronwallOptions& opt = {});

/// Same, for an a(t) that is singular like (t - anchor)^{sigma - 1}: the
/// companion of `a` is integrated with the weight exactly. Returns plain
/// values; the anchor node gets +inf when sigma < 1.
std::vector<double> gronwall_envelope(const WeightedGridFunction& a,
                                      std::span<const double> g_vals, double beta_g,
                                      const GronwallOptions& opt = {});

/// |eps| (x - a)^{gamma - 1} E_{alpha,gamma}(A (x - a)^alpha): distance between
/// solutions whose weighted initial values differ by eps.
double ic_perturbation_bound(double epsilon, double A, const FracOrder& ord, double x_minus_a);

/// B(x) for an order perturbation alpha -> alpha - delta with initial value
/// y_hat_a for the perturbed problem. f_max bounds |f| along the solutions.
/// delta = 0 is accepted.
double order_perturbation_B(double y_a, double y_hat_a, const FracOrder& ord, double delta,
                            double f_max, double x_minus_a);

/// (x - a)^{1 - gamma_hat} B(x), gamma_hat = gamma + delta (beta - 1); finite
/// at x = a.
double order_perturbation_B_companion(double y_a, double y_hat_a, const FracOrder& ord,
                                      double delta, double f_max, double x_minus_a);

struct BoundCertificate {
    std::vector<double> xs;
    std::vector<double> bound;
    std::optional<std::vector<double>> observed;
    std::vector<bool> node_satisfied;
    bool satisfied = true;
    /// Lipschitz constant used, taken on trust from the problem.
    double lipschitz_A = 0.0;
    /// max |f(x, y(x))| over grid nodes x > a (order mode only, NaN otherwise)
    double f_norm = 0.0;
};

struct BoundOptions {
    /// relative part of the slack, max(10 tol_picard, 2 tol_quad bound)
    double tol_quad = 5e-4;
    GronwallOptions gronwall{};
};

/// Two solves with weighted initial values y_a and y_a + eps on identical
/// meshes, compared against ic_perturbation_bound at nodes x - a >= first
/// spacing of the solution mesh.
BoundCertificate ic_perturbation_certificate(const ProblemSpec& spec, double epsilon,
                                             const SolverConfig& cfg,
                                             const BoundOptions& opt = {});

/// Envelope B + Gronwall series (coefficient A Gamma(alpha - delta) / Gamma(alpha),
/// order alpha - delta) on `grid`, plus the observed distance between the
/// base solution and the solution of the perturbed-order problem.
BoundCertificate order_perturbation_envelope(const ProblemSpec& spec, double delta,
                                             double y_hat_a, const Mesh& grid,
                                             const SolverConfig& cfg,
                                             const BoundOptions& opt = {});

/// Columns x,bound,observed,satisfied; observed is empty without data.
void write_certificate_csv(std::ostream& os, const BoundCertificate& cert);

} // namespace hilfer
