#include "hilfer/bounds.hpp"

#include "hilfer/error.hpp"
#include "hilfer/quadrature.hpp"
#include "hilfer/special_fn.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <limits>
#include <ostream>
#include <sstream>
#include <string>

namespace hilfer {

namespace {

void check_g(std::span<const double> g_vals, std::size_t n) {
    if (g_vals.size() != n) {
        throw ValidationError("g_vals", "expected " + std::to_string(n) + " values, got " +
                                            std::to_string(g_vals.size()));
    }
    for (std::size_t i = 0; i < n; ++i) {
        if (!(g_vals[i] >= 0.0) || !std::isfinite(g_vals[i])) {
            throw ValidationError("g_vals", "entry " + std::to_string(i) +
                                                " is negative or not finite");
        }
        if (i > 0 && g_vals[i] < g_vals[i - 1]) {
            throw ValidationError("g_vals", "not nondecreasing at entry " + std::to_string(i));
        }
    }
}

// env starts as a's plain values; adds sum_n (g Gamma(beta))^n I^{n beta} a.
void add_series(std::vector<double>& env, std::span<const double> nodes, double anchor,
                double sigma, std::span<const double> companion, std::span<const double> g_vals,
                double beta_g, const GronwallOptions& opt) {
    const std::size_t n_nodes = nodes.size();
    const double gb = gamma(beta_g);
    std::vector<double> coef(n_nodes);
    for (std::size_t i = 0; i < n_nodes; ++i) {
        coef[i] = g_vals[i] * gb;
    }
    std::vector<double> power(n_nodes, 1.0);
    int quiet = 0;
    for (std::size_t n = 1; n <= opt.max_series_terms; ++n) {
        const ProductRule rule(nodes, anchor, static_cast<double>(n) * beta_g, sigma, opt.omega);
        const std::vector<double> raw = rule.integrate_all(companion);
        double worst = 0.0;
        for (std::size_t i = 1; i < n_nodes; ++i) {
            power[i] *= coef[i];
            const double term = power[i] * raw[i];
            if (!std::isfinite(term)) {
                throw ConvergenceError("gronwall_envelope: series term " + std::to_string(n) +
                                       " is not finite");
            }
            env[i] += term;
            if (env[i] > 0.0) {
                worst = std::max(worst, std::abs(term) / env[i]);
            }
        }
        quiet = worst < opt.tol_series ? quiet + 1 : 0;
        if (quiet >= 3) {
            return;
        }
    }
    throw ConvergenceError("gronwall_envelope: series not settled after " +
                           std::to_string(opt.max_series_terms) + " terms");
}

} // namespace

std::vector<double> gronwall_envelope(std::span<const double> a_vals,
                                      std::span<const double> g_vals, double beta_g,
                                      const Mesh& grid, const GronwallOptions& opt) {
    if (a_vals.size() != grid.size()) {
        throw ValidationError("a_vals", "expected " + std::to_string(grid.size()) +
                                            " values, got " + std::to_string(a_vals.size()));
    }
    for (std::size_t i = 0; i < a_vals.size(); ++i) {
        if (!(a_vals[i] >= 0.0) || !std::isfinite(a_vals[i])) {
            throw ValidationError("a_vals", "entry " + std::to_string(i) +
                                                " is negative or not finite");
        }
    }
    return gronwall_envelope(
        WeightedGridFunction(grid, 1.0, std::vector<double>(a_vals.begin(), a_vals.end())),
        g_vals, beta_g, opt);
}

std::vector<double> gronwall_envelope(const WeightedGridFunction& a,
                                      std::span<const double> g_vals, double beta_g,
                                      const GronwallOptions& opt) {
    if (!(beta_g > 0.0)) {
        throw ValidationError("beta_g", "must be positive");
    }
    const Mesh& m = a.mesh();
    check_g(g_vals, m.size());
    if (a.anchor() != m.a()) {
        throw DomainError("gronwall_envelope: a must be anchored at the first grid node");
    }
    for (std::size_t i = 0; i < m.size(); ++i) {
        if (!(a.w(i) >= 0.0) || !std::isfinite(a.w(i))) {
            throw ValidationError("a_vals", "entry " + std::to_string(i) +
                                                " is negative or not finite");
        }
    }
    std::vector<double> env(m.size());
    env[0] = a.gamma_w() < 1.0 ? std::numeric_limits<double>::infinity() : a.w(0);
    for (std::size_t i = 1; i < m.size(); ++i) {
        env[i] = a.y(i);
    }
    add_series(env, m.nodes(), a.anchor(), a.gamma_w(), a.w(), g_vals, beta_g, opt);
    if (a.gamma_w() >= 1.0) {
        env[0] = a.w(0);
    }
    return env;
}

double ic_perturbation_bound(double epsilon, double A, const FracOrder& ord, double x_minus_a) {
    if (!(A >= 0.0)) {
        throw DomainError("ic_perturbation_bound: Lipschitz constant must be nonnegative");
    }
    if (!(x_minus_a > 0.0)) {
        throw DomainError("ic_perturbation_bound: need x > a");
    }
    if (epsilon == 0.0) {
        return 0.0;
    }
    const double z = A * std::pow(x_minus_a, ord.alpha);
    return std::abs(epsilon) * std::pow(x_minus_a, ord.gamma_w - 1.0) *
           mittag_leffler({ord.alpha, ord.gamma_w}, z);
}

namespace {

void check_delta(const FracOrder& ord, double delta) {
    if (!(delta >= 0.0) || !(delta < ord.alpha)) {
        std::ostringstream os;
        os << "order perturbation needs 0 <= delta < alpha = " << ord.alpha << ", got "
           << delta;
        throw ValidationError("delta", os.str());
    }
}

// Kernel-difference terms of B, each divided by t^{p} with p given.
double kernel_terms(const FracOrder& ord, double delta, double f_max, double t, double p) {
    if (f_max == 0.0 || delta == 0.0) {
        return 0.0;
    }
    const double alpha = ord.alpha;
    const double mu = alpha - delta;
    const double g_a = gamma(alpha);
    const double tm = std::pow(t, mu - p);
    const double ta = std::pow(t, alpha - p);
    const double mid = tm / (mu * g_a);
    return f_max * (std::abs(tm / gamma(mu + 1.0) - mid) + std::abs(mid - ta / gamma(alpha + 1.0)));
}

} // namespace

double order_perturbation_B(double y_a, double y_hat_a, const FracOrder& ord, double delta,
                            double f_max, double x_minus_a) {
    check_delta(ord, delta);
    if (!(f_max >= 0.0)) {
        throw ValidationError("f_max", "must be nonnegative");
    }
    if (!(x_minus_a > 0.0)) {
        throw DomainError("order_perturbation_B: need x > a");
    }
    const double gamma_w = ord.gamma_w;
    const double gamma_hat = gamma_w + delta * (ord.beta_type - 1.0);
    const double t = x_minus_a;
    const double data = std::abs(y_hat_a * std::pow(t, gamma_hat - 1.0) / gamma(gamma_hat) -
                                 y_a * std::pow(t, gamma_w - 1.0) / gamma(gamma_w));
    return data + kernel_terms(ord, delta, f_max, t, 0.0);
}

double order_perturbation_B_companion(double y_a, double y_hat_a, const FracOrder& ord,
                                      double delta, double f_max, double x_minus_a) {
    check_delta(ord, delta);
    if (!(f_max >= 0.0)) {
        throw ValidationError("f_max", "must be nonnegative");
    }
    if (!(x_minus_a >= 0.0)) {
        throw DomainError("order_perturbation_B_companion: need x >= a");
    }
    const double gamma_w = ord.gamma_w;
    const double gamma_hat = gamma_w + delta * (ord.beta_type - 1.0);
    const double t = x_minus_a;
    // gamma - gamma_hat = delta (1 - beta) >= 0, so every power here is >= 0
    const double lift = gamma_w - gamma_hat;
    const double data =
        std::abs(y_hat_a / gamma(gamma_hat) -
                 y_a * (lift == 0.0 ? 1.0 : std::pow(t, lift)) / gamma(gamma_w));
    return data + kernel_terms(ord, delta, f_max, t, gamma_hat - 1.0);
}

namespace {

double slack(const SolverConfig& cfg, const BoundOptions& opt, double bound) {
    return std::max(10.0 * cfg.tol_picard, 2.0 * opt.tol_quad * bound);
}

void settle(BoundCertificate& cert, const SolverConfig& cfg, const BoundOptions& opt) {
    cert.node_satisfied.assign(cert.xs.size(), true);
    cert.satisfied = true;
    if (!cert.observed) {
        return;
    }
    for (std::size_t i = 0; i < cert.xs.size(); ++i) {
        const bool ok = (*cert.observed)[i] <= cert.bound[i] + slack(cfg, opt, cert.bound[i]);
        cert.node_satisfied[i] = ok;
        cert.satisfied = cert.satisfied && ok;
    }
}

} // namespace

BoundCertificate ic_perturbation_certificate(const ProblemSpec& spec, double epsilon,
                                             const SolverConfig& cfg, const BoundOptions& opt) {
    if (!std::isfinite(epsilon)) {
        throw ValidationError("epsilon", "must be finite");
    }
    ProblemSpec pert = spec;
    pert.y_a = spec.y_a + epsilon;
    const Solution base = solve(spec, cfg);
    const Solution other = solve(pert, cfg);
    const Mesh& m = base.y.mesh();
    if (!(other.y.mesh() == m)) {
        throw MeshMismatchError("ic_perturbation_certificate: solves produced different meshes");
    }
    BoundCertificate cert;
    cert.lipschitz_A = spec.lipschitz_A;
    cert.f_norm = std::numeric_limits<double>::quiet_NaN();
    std::vector<double> observed;
    const double first = m[1] - m[0];
    for (std::size_t i = 1; i < m.size(); ++i) {
        const double d = m[i] - spec.a;
        if (d < first) {
            continue;
        }
        cert.xs.push_back(m[i]);
        cert.bound.push_back(ic_perturbation_bound(epsilon, spec.lipschitz_A, spec.ord, d));
        observed.push_back(std::abs(other.y.y(i) - base.y.y(i)));
    }
    cert.observed = std::move(observed);
    settle(cert, cfg, opt);
    return cert;
}

BoundCertificate order_perturbation_envelope(const ProblemSpec& spec, double delta,
                                             double y_hat_a, const Mesh& grid,
                                             const SolverConfig& cfg, const BoundOptions& opt) {
    spec.validate();
    check_delta(spec.ord, delta);
    if (grid.a() != spec.a || grid.b() > spec.b) {
        throw MeshMismatchError("order_perturbation_envelope: grid must start at a and end by b");
    }
    ProblemSpec pert = spec;
    pert.ord = FracOrder::make(spec.ord.alpha - delta, spec.ord.beta_type);
    pert.y_a = y_hat_a;
    const Solution base = solve(spec, cfg);
    const Solution other = solve(pert, cfg);

    std::vector<double> y0(grid.size());
    std::vector<double> y1(grid.size());
    double f_norm = 0.0;
    for (std::size_t i = 1; i < grid.size(); ++i) {
        y0[i] = eval_y(base.y, grid[i]);
        y1[i] = eval_y(other.y, grid[i]);
        // the perturbed solution enters the first kernel term, so take both
        f_norm = std::max({f_norm, std::abs(spec.rhs(grid[i], y0[i])),
                           std::abs(spec.rhs(grid[i], y1[i]))});
    }

    const double gamma_hat = pert.ord.gamma_w;
    std::vector<double> bc(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) {
        bc[i] = order_perturbation_B_companion(spec.y_a, y_hat_a, spec.ord, delta, f_norm,
                                               grid[i] - spec.a);
    }
    const WeightedGridFunction b_fn(grid, gamma_hat, std::move(bc));
    const std::vector<double> g(grid.size(), spec.lipschitz_A / gamma(spec.ord.alpha));
    const std::vector<double> env =
        gronwall_envelope(b_fn, g, spec.ord.alpha - delta, opt.gronwall);

    BoundCertificate cert;
    cert.lipschitz_A = spec.lipschitz_A;
    cert.f_norm = f_norm;
    std::vector<double> observed;
    const double first = grid[1] - grid[0];
    for (std::size_t i = 1; i < grid.size(); ++i) {
        if (grid[i] - spec.a < first) {
            continue;
        }
        cert.xs.push_back(grid[i]);
        cert.bound.push_back(env[i]);
        observed.push_back(std::abs(y1[i] - y0[i]));
    }
    cert.observed = std::move(observed);
    settle(cert, cfg, opt);
    return cert;
}

void write_certificate_csv(std::ostream& os, const BoundCertificate& cert) {
    os << "x,bound,observed,satisfied\n";
    os << std::setprecision(17);
    for (std::size_t i = 0; i < cert.xs.size(); ++i) {
        os << cert.xs[i] << ',' << cert.bound[i] << ',';
        if (cert.observed) {
            os << (*cert.observed)[i];
        }
        os << ',' << (cert.node_satisfied.empty() || cert.node_satisfied[i] ? 1 : 0) << '\n';
    }
}

} // namespace hilfer
