#include "hilfer/picard_solver.hpp"

#include "hilfer/frac_ops.hpp"
#include "hilfer/quadrature.hpp"
#include "hilfer/special_fn.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <string>

namespace hilfer {

void SolverConfig::validate() const {
    if (!(contraction_q > 0.0 && contraction_q < 1.0)) {
        throw ValidationError("q", "contraction factor must lie in (0, 1)");
    }
    if (nodes_per_interval < 16) {
        throw ValidationError("nodes", "need at least 16 panels per subinterval");
    }
    if (!(tol_picard > 0.0)) {
        throw ValidationError("tol", "must be positive");
    }
    if (max_iter < 1) {
        throw ValidationError("max_iter", "must be at least 1");
    }
    if (!std::isfinite(initial_offset)) {
        throw ValidationError("initial_offset", "must be finite");
    }
}

namespace {

/// Gamma(gamma) / Gamma(gamma + alpha).
double gamma_ratio(const FracOrder& ord) {
    return std::exp(log_gamma(ord.gamma_w) - log_gamma(ord.gamma_w + ord.alpha));
}

/// Discrete local operator F -> (x - a)^(1-gamma) I^alpha_{[x_first, x]} F on
/// one subinterval. Panel weights are computed once and reused by every
/// Picard iteration.
class IntervalOperator {
public:
    IntervalOperator(const ProductRule& rule, std::span<const double> nodes, std::size_t first,
                     std::size_t last, double a, double gamma_w)
        : count_(last - first + 1), scale_(count_, 0.0) {
        row_start_.reserve(count_ + 1);
        row_start_.push_back(0);
        row_start_.push_back(0);
        for (std::size_t j = 1; j < count_; ++j) {
            const double x = nodes[first + j];
            for (std::size_t p = 0; p < j; ++p) {
                const auto pw = rule.weights(first + p, x);
                left_.push_back(pw.left);
                right_.push_back(pw.right);
            }
            row_start_.push_back(left_.size());
            scale_[j] = std::pow(x - a, 1.0 - gamma_w);
        }
    }

    std::size_t size() const noexcept { return count_; }

    /// out_j = base_j + scale_j * sum_p (L F_p + R F_{p+1}), with local indices.
    void apply(std::span<const double> f, std::span<const double> base,
               std::span<double> out) const {
        out[0] = base[0];
        for (std::size_t j = 1; j < count_; ++j) {
            double sum = 0.0;
            const std::size_t s = row_start_[j];
            for (std::size_t p = 0; p < j; ++p) {
                sum += left_[s + p] * f[p] + right_[s + p] * f[p + 1];
            }
            out[j] = base[j] + scale_[j] * sum;
        }
    }

private:
    std::size_t count_;
    std::vector<double> scale_;
    std::vector<std::size_t> row_start_;
    std::vector<double> left_;
    std::vector<double> right_;
};

double max_abs_diff(std::span<const double> u, std::span<const double> v) {
    double d = 0.0;
    for (std::size_t i = 0; i < u.size(); ++i) {
        d = std::max(d, std::abs(u[i] - v[i]));
    }
    return d;
}

} // namespace

std::vector<double> choose_subintervals(const ProblemSpec& spec, const SolverConfig& cfg) {
    spec.validate();
    cfg.validate();
    const double len = spec.b - spec.a;
    const double ratio = gamma_ratio(spec.ord);
    double h = std::pow(cfg.contraction_q / (spec.lipschitz_A * ratio), 1.0 / spec.ord.alpha);
    if (!(h > 0.0) || !std::isfinite(len / h) || len / h > 1e6) {
        std::ostringstream os;
        os << "degenerate subinterval length " << h << " for Lipschitz constant "
           << spec.lipschitz_A;
        throw DomainError(os.str());
    }
    h = std::min(h, len);
    auto count = static_cast<std::size_t>(std::ceil(len / h));
    count = std::max<std::size_t>(count, 1);
    // Equal steps: a short last piece would put a sharp spacing jump into the
    // global mesh. Shortening steps keeps the contraction bound.
    h = len / static_cast<double>(count);
    std::vector<double> bps;
    bps.reserve(count + 1);
    for (std::size_t k = 0; k < count; ++k) {
        bps.push_back(spec.a + static_cast<double>(k) * h);
    }
    bps.push_back(spec.b);
    return bps;
}

WeightedGridFunction initial_iterate(const ProblemSpec& spec, const Mesh& mesh) {
    if (mesh.a() < spec.a) {
        throw DomainError("initial_iterate: mesh starts left of a");
    }
    const double c0 = spec.y_a / gamma(spec.ord.gamma_w);
    return WeightedGridFunction(mesh, spec.ord.gamma_w, std::vector<double>(mesh.size(), c0),
                                spec.a);
}

WeightedGridFunction picard_step(const ProblemSpec& spec, const WeightedGridFunction& y_prev,
                                 const WeightedGridFunction& history) {
    const Mesh& m = y_prev.mesh();
    if (history.mesh() != m) {
        throw MeshMismatchError("picard_step: history term lives on a different mesh");
    }
    if (y_prev.anchor() != spec.a || history.anchor() != spec.a ||
        y_prev.gamma_w() != spec.ord.gamma_w || history.gamma_w() != spec.ord.gamma_w) {
        throw MeshMismatchError("picard_step: iterates must use the problem's weight and anchor");
    }
    const ProductRule rule(m.nodes(), spec.a, spec.ord.alpha, spec.ord.gamma_w, spec.ord.alpha);
    const IntervalOperator op(rule, m.nodes(), 0, m.size() - 1, spec.a, spec.ord.gamma_w);
    std::vector<double> f(m.size());
    for (std::size_t j = 0; j < m.size(); ++j) {
        f[j] = rhs_companion(spec, m[j], y_prev.w(j), m[1]);
    }
    std::vector<double> out(m.size());
    op.apply(f, history.w(), out);
    return WeightedGridFunction(m, spec.ord.gamma_w, std::move(out), spec.a);
}

WeightedGridFunction history_term(const ProblemSpec& spec, const WeightedGridFunction& solved_prefix,
                                  double x_left, const Mesh& sub_mesh) {
    if (sub_mesh.a() != x_left) {
        throw DomainError("history_term: subinterval mesh does not start at x_left");
    }
    if (x_left == spec.a) {
        return initial_iterate(spec, sub_mesh);
    }
    const Mesh& pm = solved_prefix.mesh();
    if (pm.a() != spec.a || pm.b() != x_left) {
        std::ostringstream os;
        os << "history_term: solved prefix covers [" << pm.a() << ", " << pm.b()
           << "] but must cover [" << spec.a << ", " << x_left << "]";
        throw DomainError(os.str());
    }
    const WeightedGridFunction prefix = solved_prefix.gamma_w() > spec.ord.gamma_w
                                            ? reweight(solved_prefix, spec.ord.gamma_w)
                                            : solved_prefix;
    const std::vector<double> f = rhs_companions(spec, prefix);
    const ProductRule rule(pm.nodes(), spec.a, spec.ord.alpha, spec.ord.gamma_w, spec.ord.alpha);
    const double c0 = spec.y_a / gamma(spec.ord.gamma_w);
    std::vector<double> w(sub_mesh.size());
    for (std::size_t j = 0; j < sub_mesh.size(); ++j) {
        const double x = sub_mesh[j];
        w[j] = c0 + std::pow(x - spec.a, 1.0 - spec.ord.gamma_w) *
                        rule.integrate(x, f, 0, pm.panels());
    }
    return WeightedGridFunction(sub_mesh, spec.ord.gamma_w, std::move(w), spec.a);
}

double apriori_error_bound(double M, double A, const FracOrder& ord, double h, int m) {
    if (!(M >= 0.0) || !(A > 0.0) || !(h > 0.0) || m < 1) {
        throw DomainError("apriori_error_bound: need M >= 0, A > 0, h > 0, m >= 1");
    }
    const double ratio = gamma_ratio(ord) * std::pow(h, ord.alpha);
    return M * ratio * std::pow(A * ratio, m - 1);
}

Solution solve(const ProblemSpec& spec, const SolverConfig& cfg) {
    const std::vector<double> bps = choose_subintervals(spec, cfg);
    const std::size_t n = cfg.nodes_per_interval;
    const std::size_t intervals = bps.size() - 1;
    const double gamma_w = spec.ord.gamma_w;
    const double alpha = spec.ord.alpha;

    std::vector<double> nodes;
    nodes.reserve(intervals * n + 1);
    for (std::size_t J = 0; J < intervals; ++J) {
        const double lo = bps[J];
        const double len = bps[J + 1] - lo;
        for (std::size_t k = 0; k < n; ++k) {
            nodes.push_back(lo + len * static_cast<double>(k) / static_cast<double>(n));
        }
    }
    nodes.push_back(spec.b);

    const ProductRule rule(nodes, spec.a, alpha, gamma_w, alpha);
    const double c0 = spec.y_a / gamma(gamma_w);
    const double ratio = gamma_ratio(spec.ord);

    std::vector<double> w(nodes.size(), 0.0);
    std::vector<double> f(nodes.size(), 0.0);

    SolveReport report;
    report.breakpoints = bps;
    report.lipschitz_heuristic = spec.lipschitz_estimated;

    std::vector<double> base(n + 1);
    std::vector<double> cur(n + 1);
    std::vector<double> next(n + 1);
    std::vector<double> floc(n + 1);

    for (std::size_t J = 0; J < intervals; ++J) {
        const std::size_t k0 = J * n;
        const double h = bps[J + 1] - bps[J];

        for (std::size_t j = 0; j <= n; ++j) {
            const double x = nodes[k0 + j];
            const double hist = J == 0 ? 0.0 : rule.integrate(x, f, 0, k0);
            base[j] = c0 + (j == 0 && J == 0 ? 0.0 : std::pow(x - spec.a, 1.0 - gamma_w) * hist);
        }
        if (J > 0) {
            base[0] = w[k0]; // left value wins at the junction
        }
        const IntervalOperator op(rule, nodes, k0, k0 + n, spec.a, gamma_w);
        const double next_to_anchor = nodes[1];

        double M = 0.0;
        for (std::size_t j = 0; j <= n; ++j) {
            M = std::max(M, std::abs(rhs_companion(spec, nodes[k0 + j], base[j], next_to_anchor)));
        }
        const double rho = spec.lipschitz_A * ratio * std::pow(h, alpha);
        report.rhs_bound.push_back(M);
        report.contraction_factor.push_back(rho);
        report.increments.emplace_back();
        std::vector<double>& incs = report.increments.back();

        for (std::size_t j = 0; j <= n; ++j) {
            cur[j] = base[j] + ((J > 0 && j == 0) ? 0.0 : cfg.initial_offset);
        }
        auto eval_f = [&](std::span<const double> iterate) {
            for (std::size_t j = 0; j <= n; ++j) {
                floc[j] = (J > 0 && j == 0)
                              ? f[k0]
                              : rhs_companion(spec, nodes[k0 + j], iterate[j], next_to_anchor);
            }
        };

        bool converged = false;
        std::size_t m = 0;
        double inc = 0.0;
        while (m < cfg.max_iter) {
            ++m;
            eval_f(cur);
            op.apply(floc, base, next);
            inc = max_abs_diff(next, cur);
            incs.push_back(inc);
            std::swap(cur, next);
            if (inc <= cfg.tol_picard ||
                apriori_error_bound(M, spec.lipschitz_A, spec.ord, h, static_cast<int>(m) + 1) <=
                    cfg.tol_picard) {
                converged = true;
                break;
            }
        }

        report.iterations.push_back(m);
        report.final_increment.push_back(inc);
        report.apriori_bounds.push_back(
            apriori_error_bound(M, spec.lipschitz_A, spec.ord, h, static_cast<int>(m)));

        if (!converged) {
            std::ostringstream os;
            os << "Picard iteration did not converge on [" << bps[J] << ", " << bps[J + 1]
               << "] after " << m << " iterations; last increment " << inc
               << ", contraction factor " << rho;
            throw NonConvergenceError(os.str(), std::move(report));
        }

        // Fixed-point defect of the accepted iterate, using the same weights.
        eval_f(cur);
        op.apply(floc, base, next);
        report.volterra_residual = std::max(report.volterra_residual, max_abs_diff(next, cur));

        for (std::size_t j = (J == 0 ? 0 : 1); j <= n; ++j) {
            w[k0 + j] = cur[j];
            f[k0 + j] = floc[j];
        }
    }

    WeightedGridFunction y(Mesh(std::move(nodes)), gamma_w, std::move(w), spec.a);
    report.residual = residual(spec, y);
    return Solution{std::move(y), std::move(report)};
}

double volterra_residual(const ProblemSpec& spec, const WeightedGridFunction& y) {
    const Mesh& m = y.mesh();
    if (m.a() != spec.a || y.anchor() != spec.a) {
        throw MeshMismatchError("volterra_residual: solution mesh does not start at a");
    }
    const WeightedGridFunction yr =
        y.gamma_w() > spec.ord.gamma_w ? reweight(y, spec.ord.gamma_w) : y;
    const std::vector<double> f = rhs_companions(spec, yr);
    const ProductRule rule(m.nodes(), spec.a, spec.ord.alpha, spec.ord.gamma_w, spec.ord.alpha);
    const std::vector<double> raw = rule.integrate_all(f);
    const double c0 = spec.y_a / gamma(spec.ord.gamma_w);
    double r = std::abs(yr.w(0) - c0);
    for (std::size_t i = 1; i < m.size(); ++i) {
        const double rhs = c0 + std::pow(m[i] - spec.a, 1.0 - spec.ord.gamma_w) * raw[i];
        r = std::max(r, std::abs(yr.w(i) - rhs));
    }
    return r;
}

} // namespace hilfer
