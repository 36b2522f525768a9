#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "hilfer/error.hpp"
#include "hilfer/mesh.hpp"
#include "hilfer/quadrature.hpp"
#include "hilfer/special_fn.hpp"

#include <cmath>
#include <numeric>

using hilfer::Mesh;
using hilfer::ProductRule;

namespace {

// (1/Gamma(mu)) int_0^x (x-t)^{mu-1} t^{sigma-1} t^kappa dt
double power_oracle(double mu, double sigma, double kappa, double x) {
    return std::exp(std::lgamma(sigma + kappa) - std::lgamma(sigma + kappa + mu)) *
           std::pow(x, sigma + kappa + mu - 1.0);
}

double max_error(const Mesh& m, double mu, double sigma, double kappa, double omega) {
    const ProductRule rule(m.nodes(), m.a(), mu, sigma, omega);
    std::vector<double> g(m.size());
    for (std::size_t i = 0; i < m.size(); ++i) {
        g[i] = std::pow(m[i], kappa);
    }
    const auto out = rule.integrate_all(g);
    double e = 0.0;
    for (std::size_t i = 1; i < m.size(); ++i) {
        // compare in the weighted scale x^{1 - min(1, sigma + mu)}
        const double scale = std::pow(m[i], 1.0 - std::min(1.0, sigma + mu));
        e = std::max(e, scale * std::abs(out[i] - power_oracle(mu, sigma, kappa, m[i])));
    }
    return e;
}

} // namespace

TEST_CASE("Gauss-Legendre integrates polynomials exactly") {
    const auto r = hilfer::gauss_legendre(8);
    CHECK(std::accumulate(r.weights.begin(), r.weights.end(), 0.0) == doctest::Approx(2.0));
    double s = 0.0;
    for (std::size_t i = 0; i < r.nodes.size(); ++i) {
        s += r.weights[i] * std::pow(r.nodes[i], 14);
    }
    CHECK(s == doctest::Approx(2.0 / 15.0).epsilon(1e-13));
}

TEST_CASE("Gauss-Jacobi moments") {
    // int (1-u)^a (1+u)^b du = 2^{a+b+1} B(a+1, b+1)
    for (double a : {-0.6, 0.0, 0.3}) {
        for (double b : {-0.4, 0.5}) {
            const auto r = hilfer::gauss_jacobi(10, a, b);
            double s0 = 0.0;
            double s1 = 0.0;
            for (std::size_t i = 0; i < r.nodes.size(); ++i) {
                s0 += r.weights[i];
                s1 += r.weights[i] * (1.0 + r.nodes[i]);
            }
            const double lb = std::lgamma(a + 1) + std::lgamma(b + 1) - std::lgamma(a + b + 2);
            CHECK(s0 == doctest::Approx(std::exp((a + b + 1) * std::log(2.0) + lb)).epsilon(1e-12));
            const double lb1 = std::lgamma(a + 1) + std::lgamma(b + 2) - std::lgamma(a + b + 3);
            CHECK(s1 == doctest::Approx(std::exp((a + b + 2) * std::log(2.0) + lb1)).epsilon(1e-12));
        }
    }
    CHECK_THROWS_AS(hilfer::gauss_jacobi(0, 0.0, 0.0), hilfer::DomainError);
    CHECK_THROWS_AS(hilfer::gauss_jacobi(4, -1.0, 0.0), hilfer::DomainError);
}

TEST_CASE("constant companion is integrated to round-off") {
    const Mesh m = Mesh::uniform(0.0, 1.0, 300);
    for (double mu : {0.2, 0.5, 0.9, 1.0, 2.7}) {
        for (double sigma : {0.3, 0.75, 1.0}) {
            for (double omega : {1.0, 0.4}) {
                CHECK(max_error(m, mu, sigma, 0.0, omega) <= 1e-12);
            }
        }
    }
}

TEST_CASE("companion linear in the interpolation variable is exact") {
    const Mesh m = Mesh::uniform(0.0, 1.0, 200);
    CHECK(max_error(m, 0.6, 0.8, 1.0, 1.0) <= 1e-12);
    CHECK(max_error(m, 0.6, 0.8, 0.35, 0.35) <= 1e-12);
    CHECK(max_error(m, 0.3, 1.0, 0.7, 0.7) <= 1e-12);
}

TEST_CASE("refinement converges for curved companions") {
    for (double kappa : {0.5, 2.0}) {
        for (double mu : {0.3, 0.8}) {
            const double e1 = max_error(Mesh::uniform(0.0, 1.0, 128), mu, 0.6, kappa, 1.0);
            const double e2 = max_error(Mesh::uniform(0.0, 1.0, 256), mu, 0.6, kappa, 1.0);
            CAPTURE(kappa);
            CAPTURE(mu);
            CHECK(e2 < e1);
            CHECK(e1 / e2 >= 1.3);
        }
    }
    // kappa = 2 is smooth: close to second order
    const double e1 = max_error(Mesh::uniform(0.0, 1.0, 128), 0.5, 1.0, 2.0, 1.0);
    const double e2 = max_error(Mesh::uniform(0.0, 1.0, 256), 0.5, 1.0, 2.0, 1.0);
    CHECK(e1 / e2 >= 3.0);
}

TEST_CASE("far-field expansion agrees with direct quadrature") {
    // order whose kernel expansion is used vs. a tiny grid where it is not
    const Mesh m = Mesh::uniform(0.0, 1.0, 400);
    const Mesh coarse = Mesh::uniform(0.0, 1.0, 8);
    CHECK(max_error(m, 0.45, 0.7, 1.5, 1.0) <= 1e-5);
    CHECK(max_error(coarse, 0.45, 0.7, 0.0, 1.0) <= 1e-13);
}

TEST_CASE("nonuniform nodes and interior anchor") {
    std::vector<double> nodes;
    for (int i = 0; i <= 64; ++i) {
        nodes.push_back(1.0 + std::pow(i / 64.0, 2.0));
    }
    const ProductRule rule(nodes, 0.5, 0.7, 0.6);
    std::vector<double> g(nodes.size(), 1.0);
    // I^{0.7}[(t - 0.5)^{-0.4}] restricted to [1, x] = full integral minus [0.5, 1]
    const ProductRule whole(std::vector<double>{0.5, 1.0, 2.0}, 0.5, 0.7, 0.6);
    const double lo = rule.integrate(2.0, g, 0, nodes.size() - 1);
    const double full = power_oracle(0.7, 0.6, 0.0, 1.5);
    const double head = whole.weights(0, 2.0).left + whole.weights(0, 2.0).right;
    CHECK(lo + head == doctest::Approx(full).epsilon(1e-10));
}

TEST_CASE("product rule argument checks") {
    const std::vector<double> nodes{0.0, 0.5, 1.0};
    CHECK_THROWS_AS(ProductRule(std::vector<double>{0.0}, 0.0, 0.5, 1.0), hilfer::DomainError);
    CHECK_THROWS_AS(ProductRule(nodes, 0.0, 0.0, 1.0), hilfer::DomainError);
    CHECK_THROWS_AS(ProductRule(nodes, 0.0, 0.5, 0.0), hilfer::DomainError);
    CHECK_THROWS_AS(ProductRule(nodes, 0.1, 0.5, 1.0), hilfer::DomainError);
    CHECK_THROWS_AS(ProductRule(nodes, 0.0, 0.5, 1.0, 1.5), hilfer::DomainError);
    const ProductRule r(nodes, 0.0, 0.5, 1.0);
    CHECK_THROWS_AS(r.integrate_all(std::vector<double>{1.0}), hilfer::DomainError);
}
