#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace hilfer {

struct QuadratureRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};

/// n-point Gauss-Jacobi rule for the weight (1-u)^a (1+u)^b on [-1, 1],
/// a, b > -1, via the Golub-Welsch eigenvalue method.
QuadratureRule gauss_jacobi(int n, double a, double b);

inline QuadratureRule gauss_legendre(int n) { return gauss_jacobi(n, 0.0, 0.0); }

/// Product-integration rule for the fractional integral
///
///   (1/Gamma(mu)) * int_{anchor}^{x} (x - s)^(mu - 1) (s - anchor)^(sigma - 1) G(s) ds
///
/// where G is interpolated piecewise linearly in the variable (s - anchor)^omega
/// (omega = 1 is ordinary linear interpolation; omega = alpha reproduces the
/// leading (s - anchor)^alpha behaviour of fractional solutions). Both weight
/// factors are integrated against the hat functions without approximation:
/// Gauss-Jacobi rules absorb the endpoint singularities on the panels that
/// touch them, Gauss-Legendre covers panels near the evaluation point, and
/// far panels use a binomial expansion of the kernel against per-panel
/// moments computed once at construction.
///
/// Immutable after construction; safe to share across threads.
class ProductRule {
public:
    ProductRule(std::span<const double> nodes, double anchor, double order, double sigma,
                double omega = 1.0);

    struct PanelWeights {
        double left;
        double right;
    };

    /// Weights of the two hat functions of panel p for evaluation at x,
    /// x >= nodes[p + 1]. The kernel singularity is treated exactly when
    /// x coincides with nodes[p + 1].
    PanelWeights weights(std::size_t p, double x) const;

    /// Integral at x over panels [p_begin, p_end), companion values g
    /// indexed like the nodes.
    double integrate(double x, std::span<const double> g, std::size_t p_begin,
                     std::size_t p_end) const;

    /// Integral at every node (entry 0 is the empty integral, 0).
    std::vector<double> integrate_all(std::span<const double> g) const;

    double order() const noexcept { return order_; }
    double sigma() const noexcept { return sigma_; }
    double omega() const noexcept { return omega_; }
    std::size_t size() const noexcept { return nodes_.size(); }

private:
    PanelWeights direct(std::size_t p, double x) const;
    double hat_right(std::size_t p, double u, double s) const;
    bool anchor_panel(std::size_t p) const;

    std::vector<double> nodes_;
    double anchor_;
    double order_;
    double sigma_;
    double omega_;
    std::vector<double> snodes_; // (node - anchor)^omega
    double inv_gamma_order_;

    // Far-field expansion: (1 - r q)^(order-1) = sum_k coef_[k] r^k q^k,
    // with moments_[p][k] = int q^k (s - anchor)^(sigma-1) hat(s) ds over panel p.
    std::vector<double> coef_;
    std::vector<double> moments_left_;
    std::vector<double> moments_right_;
    bool use_expansion_ = false;

    QuadratureRule legendre_;
    QuadratureRule jacobi_right_; // (1-u)^(order-1)
    QuadratureRule jacobi_left_;  // (1+u)^(sigma-1)
    QuadratureRule jacobi_both_;
    // anchor panel with omega != 1: the right hat carries an extra (1+u)^omega
    QuadratureRule jacobi_left_hat_;
    QuadratureRule jacobi_both_hat_;
};

} // namespace hilfer
