#include "hilfer/quadrature.hpp"

#include "hilfer/error.hpp"
#include "hilfer/special_fn.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>

namespace hilfer {

QuadratureRule gauss_jacobi(int n, double a, double b) {
    if (n < 1) {
        throw DomainError("gauss_jacobi: need at least one point");
    }
    if (!(a > -1.0) || !(b > -1.0)) {
        throw DomainError("gauss_jacobi: exponents must exceed -1");
    }
    // Symmetric Jacobi matrix of the three-term recurrence.
    Eigen::MatrixXd J = Eigen::MatrixXd::Zero(n, n);
    const double ab = a + b;
    for (int k = 0; k < n; ++k) {
        const double s = 2.0 * k + ab;
        J(k, k) = (k == 0) ? (b - a) / (ab + 2.0) : (b * b - a * a) / (s * (s + 2.0));
    }
    for (int k = 1; k < n; ++k) {
        const double s = 2.0 * k + ab;
        double v;
        if (k == 1) {
            v = 4.0 * (1.0 + a) * (1.0 + b) / ((2.0 + ab) * (2.0 + ab) * (3.0 + ab));
        } else {
            v = 4.0 * k * (k + a) * (k + b) * (k + ab) / (s * s * (s + 1.0) * (s - 1.0));
        }
        J(k, k - 1) = J(k - 1, k) = std::sqrt(v);
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(J);
    const double mu0 = std::exp((ab + 1.0) * std::log(2.0) + log_gamma(a + 1.0) +
                                log_gamma(b + 1.0) - log_gamma(ab + 2.0));
    QuadratureRule rule;
    rule.nodes.resize(n);
    rule.weights.resize(n);
    for (int i = 0; i < n; ++i) {
        rule.nodes[i] = eig.eigenvalues()(i);
        const double v0 = eig.eigenvectors()(0, i);
        rule.weights[i] = mu0 * v0 * v0;
    }
    return rule;
}

namespace {

constexpr int kNearPoints = 16;
// Panels whose right end is at least this many panel widths from x use the
// kernel expansion; |r q| <= 1 / (2 kFarPanels + 1) there.
constexpr double kFarPanels = 8.0;
constexpr int kMaxExpansionTerms = 40;

} // namespace

ProductRule::ProductRule(std::span<const double> nodes, double anchor, double order, double sigma,
                         double omega)
    : nodes_(nodes.begin(), nodes.end()), anchor_(anchor), order_(order), sigma_(sigma),
      omega_(omega) {
    if (nodes_.size() < 2) {
        throw DomainError("ProductRule: need at least two nodes");
    }
    if (!(order > 0.0)) {
        throw DomainError("ProductRule: order must be positive");
    }
    if (!(sigma > 0.0)) {
        throw DomainError("ProductRule: weight exponent must be positive");
    }
    if (!(omega > 0.0) || omega > 1.0) {
        throw DomainError("ProductRule: interpolation exponent must lie in (0, 1]");
    }
    if (anchor > nodes_.front()) {
        throw DomainError("ProductRule: anchor right of the first node");
    }
    inv_gamma_order_ = std::exp(-log_gamma(order));
    snodes_.resize(nodes_.size());
    for (std::size_t i = 0; i < nodes_.size(); ++i) {
        snodes_[i] = omega_ == 1.0 ? nodes_[i] - anchor_ : std::pow(nodes_[i] - anchor_, omega_);
    }

    legendre_ = gauss_legendre(kNearPoints);
    jacobi_right_ = gauss_jacobi(kNearPoints, order - 1.0, 0.0);
    jacobi_left_ = gauss_jacobi(kNearPoints, 0.0, sigma - 1.0);
    jacobi_both_ = gauss_jacobi(kNearPoints, order - 1.0, sigma - 1.0);
    jacobi_left_hat_ = gauss_jacobi(kNearPoints, 0.0, sigma + omega - 1.0);
    jacobi_both_hat_ = gauss_jacobi(kNearPoints, order - 1.0, sigma + omega - 1.0);

    // Binomial coefficients of (1 - t)^(order - 1); stop once the next term is
    // negligible at the largest |t| the far field can see.
    const double tmax = 1.0 / (2.0 * kFarPanels + 1.0);
    double c = 1.0;
    coef_.push_back(1.0);
    for (int k = 1; k <= kMaxExpansionTerms; ++k) {
        c *= -(order - 1.0 - (k - 1)) / k;
        if (std::abs(c) * std::pow(tmax, k) < 1e-15) {
            use_expansion_ = true;
            break;
        }
        coef_.push_back(c);
    }

    if (use_expansion_) {
        const std::size_t nk = coef_.size();
        const std::size_t np = nodes_.size() - 1;
        moments_left_.assign(np * nk, 0.0);
        moments_right_.assign(np * nk, 0.0);
        for (std::size_t p = 0; p < np; ++p) {
            const double t0 = nodes_[p];
            const double h = nodes_[p + 1] - t0;
            const double half = 0.5 * h;
            if (anchor_panel(p)) {
                // total and right-hat moments separately, left = total - right
                const double st = half * std::pow(half, sigma_ - 1.0);
                const double sr = half * std::pow(half, sigma_ + omega_ - 1.0) / std::pow(h, omega_);
                for (std::size_t q = 0; q < kNearPoints; ++q) {
                    const double qt = 0.5 * jacobi_left_.nodes[q];
                    const double qr = 0.5 * jacobi_left_hat_.nodes[q];
                    const double bt = st * jacobi_left_.weights[q];
                    const double br = sr * jacobi_left_hat_.weights[q];
                    double pt = 1.0;
                    double pr = 1.0;
                    for (std::size_t k = 0; k < nk; ++k) {
                        moments_left_[p * nk + k] += bt * pt - br * pr;
                        moments_right_[p * nk + k] += br * pr;
                        pt *= qt;
                        pr *= qr;
                    }
                }
                continue;
            }
            for (std::size_t q = 0; q < kNearPoints; ++q) {
                const double u = legendre_.nodes[q];
                const double s = t0 + half * (1.0 + u);
                const double base =
                    half * legendre_.weights[q] * std::pow(s - anchor_, sigma_ - 1.0);
                const double hat_r = hat_right(p, u, s);
                const double hat_l = 1.0 - hat_r;
                const double qv = 0.5 * u;
                double qk = 1.0;
                for (std::size_t k = 0; k < nk; ++k) {
                    moments_left_[p * nk + k] += base * hat_l * qk;
                    moments_right_[p * nk + k] += base * hat_r * qk;
                    qk *= qv;
                }
            }
        }
    }
}

bool ProductRule::anchor_panel(std::size_t p) const {
    return p == 0 && nodes_[0] == anchor_ && (sigma_ != 1.0 || omega_ != 1.0);
}

double ProductRule::hat_right(std::size_t p, double u, double s) const {
    if (omega_ == 1.0) {
        return 0.5 * (1.0 + u);
    }
    return (std::pow(s - anchor_, omega_) - snodes_[p]) / (snodes_[p + 1] - snodes_[p]);
}

ProductRule::PanelWeights ProductRule::direct(std::size_t p, double x) const {
    const double t0 = nodes_[p];
    const double t1 = nodes_[p + 1];
    const double h = t1 - t0;
    const double half = 0.5 * h;
    const bool singular_right = (x == t1 && order_ != 1.0);

    if (anchor_panel(p)) {
        const QuadratureRule& rt = singular_right ? jacobi_both_ : jacobi_left_;
        const QuadratureRule& rr = singular_right ? jacobi_both_hat_ : jacobi_left_hat_;
        const double ko = singular_right ? order_ - 1.0 : 0.0;
        const double st = half * std::pow(half, ko + sigma_ - 1.0);
        const double sr = half * std::pow(half, ko + sigma_ + omega_ - 1.0) / std::pow(h, omega_);
        double total = 0.0;
        double right = 0.0;
        for (std::size_t q = 0; q < kNearPoints; ++q) {
            double ft = rt.weights[q];
            double fr = rr.weights[q];
            if (!singular_right) {
                ft *= std::pow(x - (t0 + half * (1.0 + rt.nodes[q])), order_ - 1.0);
                fr *= std::pow(x - (t0 + half * (1.0 + rr.nodes[q])), order_ - 1.0);
            }
            total += ft;
            right += fr;
        }
        total *= st * inv_gamma_order_;
        right *= sr * inv_gamma_order_;
        return {total - right, right};
    }

    const QuadratureRule& rule = singular_right ? jacobi_right_ : legendre_;
    const double scale = singular_right ? half * std::pow(half, order_ - 1.0) : half;
    double wl = 0.0;
    double wr = 0.0;
    for (std::size_t q = 0; q < rule.nodes.size(); ++q) {
        const double u = rule.nodes[q];
        const double s = t0 + half * (1.0 + u);
        double f = rule.weights[q];
        if (!singular_right) {
            f *= std::pow(x - s, order_ - 1.0);
        }
        if (sigma_ != 1.0) {
            f *= std::pow(s - anchor_, sigma_ - 1.0);
        }
        const double hat_r = hat_right(p, u, s);
        wl += f * (1.0 - hat_r);
        wr += f * hat_r;
    }
    const double c = scale * inv_gamma_order_;
    return {wl * c, wr * c};
}

ProductRule::PanelWeights ProductRule::weights(std::size_t p, double x) const {
    const double t0 = nodes_[p];
    const double t1 = nodes_[p + 1];
    const double h = t1 - t0;
    if (!use_expansion_ || (x - t1) < kFarPanels * h) {
        return direct(p, x);
    }
    const double mid = 0.5 * (t0 + t1);
    const double dist = x - mid;
    const double r = h / dist;
    const std::size_t nk = coef_.size();
    const double* ml = &moments_left_[p * nk];
    const double* mr = &moments_right_[p * nk];
    double wl = 0.0;
    double wr = 0.0;
    double rk = 1.0;
    for (std::size_t k = 0; k < nk; ++k) {
        const double c = coef_[k] * rk;
        wl += c * ml[k];
        wr += c * mr[k];
        rk *= r;
    }
    const double kernel = std::pow(dist, order_ - 1.0) * inv_gamma_order_;
    return {wl * kernel, wr * kernel};
}

double ProductRule::integrate(double x, std::span<const double> g, std::size_t p_begin,
                              std::size_t p_end) const {
    double sum = 0.0;
    for (std::size_t p = p_begin; p < p_end; ++p) {
        const auto pw = weights(p, x);
        sum += pw.left * g[p] + pw.right * g[p + 1];
    }
    return sum;
}

std::vector<double> ProductRule::integrate_all(std::span<const double> g) const {
    if (g.size() != nodes_.size()) {
        throw DomainError("ProductRule: value count does not match node count");
    }
    std::vector<double> out(nodes_.size(), 0.0);
    for (std::size_t i = 1; i < nodes_.size(); ++i) {
        out[i] = integrate(nodes_[i], g, 0, i);
    }
    return out;
}

} // namespace hilfer
