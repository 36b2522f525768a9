#include "hilfer/frac_ops.hpp"

#include "hilfer/error.hpp"
#include "hilfer/quadrature.hpp"
#include "hilfer/special_fn.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace hilfer {

FracOrder FracOrder::make(double alpha, double beta_type) {
    if (!(alpha > 0.0 && alpha < 1.0)) {
        throw ValidationError("alpha", "must lie in (0, 1), got " + std::to_string(alpha));
    }
    if (!(beta_type >= 0.0 && beta_type <= 1.0)) {
        throw ValidationError("beta", "must lie in [0, 1], got " + std::to_string(beta_type));
    }
    return FracOrder{alpha, beta_type, alpha + beta_type * (1.0 - alpha)};
}

void ProblemSpec::validate() const {
    if (!std::isfinite(a) || !std::isfinite(b) || !(a < b)) {
        throw ValidationError("b", "interval must satisfy a < b");
    }
    const FracOrder check = FracOrder::make(ord.alpha, ord.beta_type);
    if (check.gamma_w != ord.gamma_w) {
        throw ValidationError("gamma", "inconsistent with alpha and beta");
    }
    if (!std::isfinite(y_a)) {
        throw ValidationError("y_a", "must be finite");
    }
    if (!(lipschitz_A > 0.0) || !std::isfinite(lipschitz_A)) {
        throw ValidationError("lipschitz", "must be positive and finite");
    }
}

double rhs_companion(const ProblemSpec& spec, double x, double w, double next_x) {
    const double g = spec.ord.gamma_w;
    if (g == 1.0) {
        return spec.rhs(x, w);
    }
    double d = x - spec.a;
    if (d <= 0.0) {
        d = kAnchorOffset * (next_x - spec.a);
        x = spec.a + d;
    }
    return std::pow(d, 1.0 - g) * spec.rhs(x, std::pow(d, g - 1.0) * w);
}

std::vector<double> rhs_companions(const ProblemSpec& spec, const WeightedGridFunction& y) {
    const Mesh& m = y.mesh();
    std::vector<double> out(m.size());
    for (std::size_t i = 0; i < m.size(); ++i) {
        out[i] = rhs_companion(spec, m[i], y.w(i), m[1]);
    }
    return out;
}

namespace {

constexpr double kWeightEps = 1e-12;

/// Companion limit at the anchor of I^order applied to (t-a)^(sigma-1) G,
/// when the result is expressed with weight min(1, sigma + order).
double integral_anchor_limit(double order, double sigma, double g0) {
    if (sigma + order - 1.0 > kWeightEps) {
        return 0.0;
    }
    return g0 * std::exp(log_gamma(sigma) - log_gamma(sigma + order));
}

/// omega * dU/ds on the grid s = (x - a)^omega: the companion of U' for
/// weight exponent omega.
std::vector<double> weighted_derivative(const Mesh& mesh, double anchor, std::span<const double> u,
                                        double omega, DerivativeDiagnostics* diag) {
    const std::size_t n = mesh.size();
    std::vector<double> s(n);
    for (std::size_t i = 0; i < n; ++i) {
        s[i] = std::pow(mesh[i] - anchor, omega);
    }
    double scale = 0.0;
    for (double v : u) {
        scale = std::max(scale, std::abs(v));
    }
    std::vector<double> d(n);
    if (n == 2) {
        const double slope = (u[1] - u[0]) / (s[1] - s[0]);
        d[0] = d[1] = omega * slope;
        return d;
    }
    for (std::size_t i = 1; i + 1 < n; ++i) {
        const double h1 = s[i] - s[i - 1];
        const double h2 = s[i + 1] - s[i];
        d[i] = -h2 / (h1 * (h1 + h2)) * u[i - 1] + (h2 - h1) / (h1 * h2) * u[i] +
               h1 / (h2 * (h1 + h2)) * u[i + 1];
        if (diag != nullptr &&
            std::abs(u[i + 1] - u[i - 1]) < 1e3 * std::numeric_limits<double>::epsilon() * scale &&
            scale > 0.0) {
            ++diag->cancellation_nodes;
        }
    }
    {
        const double h1 = s[1] - s[0];
        const double h2 = s[2] - s[1];
        d[0] = -(2.0 * h1 + h2) / (h1 * (h1 + h2)) * u[0] + (h1 + h2) / (h1 * h2) * u[1] -
               h1 / (h2 * (h1 + h2)) * u[2];
    }
    {
        const double h1 = s[n - 2] - s[n - 3];
        const double h2 = s[n - 1] - s[n - 2];
        d[n - 1] = h2 / (h1 * (h1 + h2)) * u[n - 3] - (h1 + h2) / (h1 * h2) * u[n - 2] +
                   (2.0 * h2 + h1) / (h2 * (h1 + h2)) * u[n - 1];
    }
    for (double& v : d) {
        v *= omega;
    }
    return d;
}

} // namespace

std::vector<double> rl_integral_values(double order, const WeightedGridFunction& g,
                                       double omega) {
    if (!(order > 0.0)) {
        throw DomainError("rl_integral: order must be positive, got " + std::to_string(order));
    }
    const ProductRule rule(g.mesh().nodes(), g.anchor(), order, g.gamma_w(), omega);
    return rule.integrate_all(g.w());
}

WeightedGridFunction rl_integral(double order, const WeightedGridFunction& g, double omega) {
    const std::vector<double> raw = rl_integral_values(order, g, omega);
    const Mesh& m = g.mesh();
    const double sigma = g.gamma_w();
    const double out_gamma = std::min(1.0, sigma + order);
    std::vector<double> w(m.size());
    for (std::size_t i = 0; i < m.size(); ++i) {
        const double d = m[i] - g.anchor();
        if (d > 0.0) {
            w[i] = std::pow(d, 1.0 - out_gamma) * raw[i];
        } else {
            w[i] = integral_anchor_limit(order, sigma, g.w(0));
        }
    }
    return WeightedGridFunction(m, out_gamma, std::move(w), g.anchor());
}

namespace {

WeightedGridFunction derivative_in(const FracOrder& ord, const WeightedGridFunction& f,
                                   DerivativeDiagnostics* diag, double omega) {
    const double alpha = ord.alpha;
    const double gamma_w = ord.gamma_w;
    const Mesh& m = f.mesh();
    if (f.anchor() != m.a()) {
        throw DomainError("hilfer_derivative: function must be anchored at its first node");
    }
    if (f.gamma_w() < gamma_w - kWeightEps) {
        throw DomainError("hilfer_derivative: input weight " + std::to_string(f.gamma_w()) +
                          " is below gamma = " + std::to_string(gamma_w));
    }
    if (m.size() < 3) {
        throw DomainError("hilfer_derivative: need at least three nodes");
    }
    const WeightedGridFunction fr =
        f.gamma_w() > gamma_w ? reweight(f, gamma_w)
                              : WeightedGridFunction(m, gamma_w,
                                                     std::vector<double>(f.w().begin(), f.w().end()));

    // U = I^{(1-beta)(1-alpha)} f has weight exactly 1 (gamma + mu1 = 1).
    const double mu1 = (1.0 - ord.beta_type) * (1.0 - alpha);
    std::vector<double> u;
    if (mu1 > 0.0) {
        u = ProductRule(m.nodes(), m.a(), mu1, gamma_w, omega).integrate_all(fr.w());
        u[0] = fr.w(0) * std::exp(log_gamma(gamma_w) - log_gamma(gamma_w + mu1));
    } else {
        u.assign(fr.w().begin(), fr.w().end());
    }

    // U' lives in C_{1-alpha}.
    std::vector<double> d = weighted_derivative(m, m.a(), u, omega, diag);

    const double mu2 = ord.beta_type * (1.0 - alpha);
    if (mu2 <= 0.0) {
        return WeightedGridFunction(m, gamma_w, std::move(d));
    }
    const std::vector<double> raw = ProductRule(m.nodes(), m.a(), mu2, alpha, omega).integrate_all(d);
    std::vector<double> out(m.size());
    out[0] = d[0] * std::exp(log_gamma(alpha) - log_gamma(alpha + mu2));
    for (std::size_t i = 1; i < m.size(); ++i) {
        out[i] = std::pow(m[i] - m.a(), 1.0 - gamma_w) * raw[i];
    }
    return WeightedGridFunction(m, gamma_w, std::move(out));
}

} // namespace

WeightedGridFunction hilfer_derivative(const FracOrder& ord, const WeightedGridFunction& f,
                                       DerivativeDiagnostics* diag) {
    return derivative_in(ord, f, diag, ord.alpha);
}

WeightedGridFunction rl_derivative(double order, const WeightedGridFunction& f,
                                   DerivativeDiagnostics* diag) {
    if (!(order > 0.0 && order < 1.0)) {
        throw DomainError("rl_derivative: order must lie in (0, 1)");
    }
    return derivative_in(FracOrder::make(order, 0.0), f, diag, order);
}

double residual(const ProblemSpec& spec, const WeightedGridFunction& y) {
    const Mesh& m = y.mesh();
    if (m.a() != spec.a || y.anchor() != spec.a) {
        throw MeshMismatchError("residual: solution mesh does not start at a");
    }
    const WeightedGridFunction yr =
        y.gamma_w() > spec.ord.gamma_w ? reweight(y, spec.ord.gamma_w) : y;
    const WeightedGridFunction lhs = hilfer_derivative(spec.ord, yr);
    const std::vector<double> rhs = rhs_companions(spec, yr);
    double r = 0.0;
    for (std::size_t i = 1; i < m.size(); ++i) {
        r = std::max(r, std::abs(lhs.w(i) - rhs[i]));
    }
    return r;
}

} // namespace hilfer
