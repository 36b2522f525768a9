#pragma once

#include "hilfer/error.hpp"
#include "hilfer/frac_order.hpp"
#include "hilfer/mesh.hpp"
#include "hilfer/problem.hpp"

#include <cstddef>
#include <vector>

namespace hilfer {

struct SolverConfig {
    /// Target contraction factor A Gamma(gamma)/Gamma(gamma+alpha) h^alpha.
    double contraction_q = 0.5;
    /// Panels per subinterval (each subinterval has this many + 1 nodes).
    std::size_t nodes_per_interval = 256;
    /// Stop once successive iterates differ by at most this in the weighted metric.
    double tol_picard = 1e-8;
    std::size_t max_iter = 200;
    /// Added to the companion of every subinterval's starting iterate. Zero
    /// gives the standard Picard sequence; nonzero values exercise uniqueness.
    double initial_offset = 0.0;

    void validate() const;
};

struct SolveReport {
    /// a = x_0 < x_1 < ... < x_l = b.
    std::vector<double> breakpoints;
    std::vector<std::size_t> iterations;
    std::vector<double> final_increment;
    /// Geometric increment bound at the final iteration of each subinterval.
    std::vector<double> apriori_bounds;
    /// Grid estimate of sup |(x-a)^{1-gamma} f(x, y_start(x))| per subinterval.
    std::vector<double> rhs_bound;
    /// A Gamma(gamma)/Gamma(gamma+alpha) (x_{j+1}-x_j)^alpha per subinterval.
    std::vector<double> contraction_factor;
    /// Every weighted increment ||y_m - y_{m-1}||, m = 1.., per subinterval.
    std::vector<std::vector<double>> increments;
    /// Weighted differential residual of the stitched solution.
    double residual = 0.0;
    /// Weighted Volterra residual ||y - (y_0 + I^alpha f(., y))||.
    double volterra_residual = 0.0;
    /// True when the Lipschitz constant was estimated rather than supplied.
    bool lipschitz_heuristic = false;
};

struct Solution {
    WeightedGridFunction y;
    SolveReport report;
};

/// Raised when a subinterval exhausts max_iter. Carries the report up to and
/// including the failing subinterval.
class NonConvergenceError : public ConvergenceError {
public:
    NonConvergenceError(const std::string& msg, SolveReport partial)
        : ConvergenceError(msg), partial_(std::move(partial)) {}

    const SolveReport& partial() const noexcept { return partial_; }

private:
    SolveReport partial_;
};

/// Equal steps (b - a)/ceil((b - a)/h*) with the contraction step
/// h* = (q Gamma(gamma+alpha) / (A Gamma(gamma)))^(1/alpha); the last
/// breakpoint is b exactly.
std::vector<double> choose_subintervals(const ProblemSpec& spec, const SolverConfig& cfg);

/// y_0(x) = y_a (x - a)^(gamma-1) / Gamma(gamma), i.e. w = y_a / Gamma(gamma).
WeightedGridFunction initial_iterate(const ProblemSpec& spec, const Mesh& mesh);

/// history_term + I^alpha_{[x_left, x]} f(., y_prev) on the subinterval mesh of
/// y_prev. Both arguments use the problem's left endpoint a as anchor.
WeightedGridFunction picard_step(const ProblemSpec& spec, const WeightedGridFunction& y_prev,
                                 const WeightedGridFunction& history);

/// y_0(x) + (1/Gamma(alpha)) int_a^{x_left} (x - t)^(alpha-1) f(t, y(t)) dt on
/// sub_mesh, where y is the already solved prefix on [a, x_left].
WeightedGridFunction history_term(const ProblemSpec& spec, const WeightedGridFunction& solved_prefix,
                                  double x_left, const Mesh& sub_mesh);

Solution solve(const ProblemSpec& spec, const SolverConfig& cfg);

/// M Gamma(gamma)/Gamma(gamma+alpha) h^alpha * (A Gamma(gamma)/Gamma(gamma+alpha) h^alpha)^(m-1).
double apriori_error_bound(double M, double A, const FracOrder& ord, double h, int m);

/// Weighted distance between y and y_0 + I^alpha f(., y), recomputed on y's mesh.
double volterra_residual(const ProblemSpec& spec, const WeightedGridFunction& y);

} // namespace hilfer
