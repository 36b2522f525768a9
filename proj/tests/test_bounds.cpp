#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "hilfer/bounds.hpp"
#include "hilfer/error.hpp"
#include "hilfer/special_fn.hpp"

#include <cmath>
#include <sstream>

using hilfer::FracOrder;
using hilfer::Mesh;
using hilfer::ProblemSpec;
using hilfer::SolverConfig;

namespace {

ProblemSpec linear(double lambda, double alpha, double beta, double y_a = 1.0) {
    ProblemSpec s;
    s.ord = FracOrder::make(alpha, beta);
    s.y_a = y_a;
    s.rhs = hilfer::Rhs::linear(lambda);
    s.lipschitz_A = std::abs(lambda);
    return s;
}

std::vector<double> filled(const Mesh& m, double v) { return std::vector<double>(m.size(), v); }

} // namespace

TEST_CASE("Gronwall envelope of zero data") {
    const Mesh m = Mesh::uniform(0.0, 1.0, 64);
    for (double v : hilfer::gronwall_envelope(filled(m, 0.0), filled(m, 1.0), 0.5, m)) {
        CHECK(v == 0.0);
    }
}

TEST_CASE("Gronwall envelope with constant inputs is a Mittag-Leffler function") {
    const Mesh m = Mesh::uniform(0.0, 1.0, 256);
    for (double beta : {0.3, 0.5, 0.8, 1.0}) {
        for (double g0 : {0.2, 1.0}) {
            const double a0 = 1.5;
            const auto env = hilfer::gronwall_envelope(filled(m, a0), filled(m, g0), beta, m);
            for (std::size_t i = 0; i < m.size(); ++i) {
                const double z = g0 * hilfer::gamma(beta) * std::pow(m[i], beta);
                CAPTURE(beta);
                CAPTURE(m[i]);
                // small beta grows like exp(z^(1/beta)): relative beyond unit size
                const double ref = a0 * hilfer::mittag_leffler({beta, 1.0}, z);
                CHECK(std::abs(env[i] - ref) <= 1e-8 * std::max(1.0, ref));
            }
        }
    }
    const Mesh unit = Mesh::uniform(0.0, 1.0, 32);
    const auto e = hilfer::gronwall_envelope(filled(unit, 1.0), filled(unit, 1.0), 1.0, unit);
    CHECK(e.back() == doctest::Approx(std::exp(1.0)).epsilon(1e-10));
}

TEST_CASE("Gronwall envelope with singular data") {
    // a = t^{sigma-1}: sum_n (g Gamma(b))^n I^{nb} a = Gamma(sigma) t^{sigma-1} E_{b,sigma}(g Gamma(b) t^b)
    const Mesh m = Mesh::uniform(0.0, 1.0, 128);
    const double sigma = 0.6;
    const double beta = 0.7;
    const double g = 0.9;
    const hilfer::WeightedGridFunction a(m, sigma, filled(m, 1.0));
    const auto env = hilfer::gronwall_envelope(a, filled(m, g), beta);
    CHECK(std::isinf(env[0]));
    for (std::size_t i = 1; i < m.size(); ++i) {
        const double t = m[i];
        const double z = g * hilfer::gamma(beta) * std::pow(t, beta);
        const double ref = hilfer::gamma(sigma) * std::pow(t, sigma - 1.0) *
                           hilfer::mittag_leffler({beta, sigma}, z);
        CHECK(env[i] == doctest::Approx(ref).epsilon(1e-9));
    }
}

TEST_CASE("Gronwall envelope is monotone in its data") {
    const Mesh m = Mesh::uniform(0.0, 1.0, 64);
    std::vector<double> a(m.size());
    std::vector<double> g(m.size());
    for (std::size_t i = 0; i < m.size(); ++i) {
        a[i] = 1.0 + std::sin(4.0 * m[i]) * 0.5;
        g[i] = 0.5 + m[i];
    }
    const auto base = hilfer::gronwall_envelope(a, g, 0.6, m);
    for (std::size_t k : {std::size_t{0}, std::size_t{20}, std::size_t{63}}) {
        auto a2 = a;
        a2[k] += 0.3;
        const auto up = hilfer::gronwall_envelope(a2, g, 0.6, m);
        for (std::size_t i = 0; i < m.size(); ++i) {
            CHECK(up[i] >= base[i]);
        }
    }
    auto g2 = g;
    for (double& v : g2) {
        v += 0.1;
    }
    const auto up = hilfer::gronwall_envelope(a, g2, 0.6, m);
    for (std::size_t i = 1; i < m.size(); ++i) {
        CHECK(up[i] > base[i]);
    }
}

TEST_CASE("Gronwall envelope input checks") {
    const Mesh m = Mesh::uniform(0.0, 1.0, 8);
    auto g = filled(m, 1.0);
    g[4] = 0.5;
    CHECK_THROWS_AS(hilfer::gronwall_envelope(filled(m, 1.0), g, 0.5, m), hilfer::ValidationError);
    CHECK_THROWS_AS(hilfer::gronwall_envelope(filled(m, -1.0), filled(m, 1.0), 0.5, m),
                    hilfer::ValidationError);
    CHECK_THROWS_AS(hilfer::gronwall_envelope(filled(m, 1.0), filled(m, 1.0), 0.0, m),
                    hilfer::ValidationError);
    CHECK_THROWS_AS(hilfer::gronwall_envelope(filled(m, 1.0), std::vector<double>(3, 1.0), 0.5, m),
                    hilfer::ValidationError);
    hilfer::GronwallOptions opt;
    opt.max_series_terms = 2;
    CHECK_THROWS_AS(hilfer::gronwall_envelope(filled(m, 1.0), filled(m, 5.0), 0.5, m, opt),
                    hilfer::ConvergenceError);
}

TEST_CASE("initial-condition bound examples") {
    const FracOrder o = FracOrder::make(0.6, 0.4);
    CHECK(hilfer::ic_perturbation_bound(0.0, 2.0, o, 0.5) == 0.0);
    CHECK(hilfer::ic_perturbation_bound(0.3, 1e-300, o, 0.5) ==
          doctest::Approx(0.3 * std::pow(0.5, o.gamma_w - 1.0) / hilfer::gamma(o.gamma_w)));
    CHECK(hilfer::ic_perturbation_bound(-0.3, 1.0, o, 0.5) == hilfer::ic_perturbation_bound(0.3, 1.0, o, 0.5));
    const FracOrder one{1.0, 1.0, 1.0};
    CHECK(hilfer::ic_perturbation_bound(0.1, 1.0, one, 1.0) == doctest::Approx(0.271828).epsilon(1e-6));
    CHECK_THROWS_AS(hilfer::ic_perturbation_bound(0.1, 1.0, o, 0.0), hilfer::DomainError);
}

TEST_CASE("order-perturbation B examples") {
    const FracOrder o = FracOrder::make(0.7, 0.3);
    for (double t : {0.1, 0.5, 1.0}) {
        CHECK(hilfer::order_perturbation_B(1.2, 1.2, o, 0.0, 3.0, t) == doctest::Approx(0.0));
        CHECK(hilfer::order_perturbation_B(1.0, 1.5, o, 0.0, 3.0, t) ==
              doctest::Approx(0.5 * std::pow(t, o.gamma_w - 1.0) / hilfer::gamma(o.gamma_w)));
    }
    const FracOrder c = FracOrder::make(0.8, 1.0);
    const double term2 = std::abs(1.0 / hilfer::gamma(1.6) - 1.0 / (0.6 * hilfer::gamma(0.8)));
    const double term3 = std::abs(1.0 / (0.6 * hilfer::gamma(0.8)) - 1.0 / hilfer::gamma(1.8));
    CHECK(hilfer::order_perturbation_B(1.0, 1.0, c, 0.2, 1.0, 1.0) ==
          doctest::Approx(term2 + term3).epsilon(1e-12));
    // companion form agrees away from the anchor
    const double t = 0.3;
    const double gh = o.gamma_w + 0.1 * (o.beta_type - 1.0);
    CHECK(hilfer::order_perturbation_B_companion(1.0, 1.1, o, 0.1, 2.0, t) ==
          doctest::Approx(std::pow(t, 1.0 - gh) * hilfer::order_perturbation_B(1.0, 1.1, o, 0.1, 2.0, t)));
    CHECK(std::isfinite(hilfer::order_perturbation_B_companion(1.0, 1.1, o, 0.1, 2.0, 0.0)));
    CHECK_THROWS_AS(hilfer::order_perturbation_B(1.0, 1.0, o, 0.7, 1.0, 1.0), hilfer::ValidationError);
    CHECK_THROWS_AS(hilfer::order_perturbation_B(1.0, 1.0, o, -0.1, 1.0, 1.0), hilfer::ValidationError);
}

TEST_CASE("initial-condition certificate") {
    const SolverConfig cfg;
    const auto cert = hilfer::ic_perturbation_certificate(linear(-1.0, 0.6, 0.4), 0.1, cfg);
    REQUIRE(cert.observed);
    CHECK(cert.xs.size() == cert.bound.size());
    CHECK(cert.observed->size() == cert.bound.size());
    CHECK(cert.node_satisfied.size() == cert.bound.size());
    CHECK(cert.satisfied);
    CHECK(cert.xs.front() > 0.0);
    CHECK(cert.lipschitz_A == 1.0);

    // the bound is attained for a positive linear rate
    const auto tight = hilfer::ic_perturbation_certificate(linear(1.0, 0.6, 0.4), 0.1, cfg);
    CHECK(tight.observed->back() == doctest::Approx(tight.bound.back()).epsilon(0.05));

    const auto zero = hilfer::ic_perturbation_certificate(linear(1.0, 0.6, 0.4), 0.0, cfg);
    CHECK(zero.satisfied);
    for (double v : *zero.observed) {
        CHECK(v == 0.0);
    }
}

TEST_CASE("order-perturbation envelope") {
    const SolverConfig cfg;
    const ProblemSpec s = linear(1.0, 0.8, 0.5);
    const Mesh grid = Mesh::uniform(0.0, 1.0, 256);

    const auto same = hilfer::order_perturbation_envelope(s, 0.0, s.y_a, grid, cfg);
    CHECK(same.satisfied);
    for (std::size_t i = 0; i < same.xs.size(); ++i) {
        CHECK(same.bound[i] <= 1e-12);
        CHECK((*same.observed)[i] <= 1e-12);
    }

    const auto small = hilfer::order_perturbation_envelope(s, 0.05, s.y_a, grid, cfg);
    CHECK(small.satisfied);
    CHECK(small.f_norm > 0.0);

    // data-only perturbation reproduces the initial-condition bound
    const double eps = 0.1;
    const auto data = hilfer::order_perturbation_envelope(s, 0.0, s.y_a + eps, grid, cfg);
    CHECK(data.satisfied);
    for (std::size_t i = 0; i < data.xs.size(); i += 17) {
        const double ref = hilfer::ic_perturbation_bound(eps, s.lipschitz_A, s.ord, data.xs[i]);
        CHECK(data.bound[i] == doctest::Approx(ref).epsilon(0.1));
    }

    CHECK_THROWS_AS(hilfer::order_perturbation_envelope(s, 0.8, s.y_a, grid, cfg), hilfer::ValidationError);
    CHECK_THROWS_AS(hilfer::order_perturbation_envelope(s, 0.1, s.y_a, Mesh::uniform(0.5, 1.0, 8), cfg),
                    hilfer::MeshMismatchError);
}

TEST_CASE("bounds shrink with the perturbation") {
    const SolverConfig cfg;
    const ProblemSpec s = linear(0.5, 0.7, 0.6);
    const Mesh grid = Mesh::uniform(0.0, 1.0, 128);
    const double l = 0.25;
    const auto big = hilfer::order_perturbation_envelope(s, 0.1, s.y_a, grid, cfg);
    const auto half = hilfer::order_perturbation_envelope(s, 0.05, s.y_a, grid, cfg);
    for (std::size_t i = 0; i < grid.size(); ++i) {
        if (big.xs[i] >= l) {
            CHECK(half.bound[i] < big.bound[i]);
            CHECK(hilfer::ic_perturbation_bound(0.05, 0.5, s.ord, big.xs[i]) <
                  hilfer::ic_perturbation_bound(0.1, 0.5, s.ord, big.xs[i]));
        }
    }
}

TEST_CASE("certificate csv") {
    hilfer::BoundCertificate cert;
    cert.xs = {0.5, 1.0};
    cert.bound = {0.25, 0.5};
    cert.node_satisfied = {true, false};
    std::ostringstream plain;
    write_certificate_csv(plain, cert);
    CHECK(plain.str() == "x,bound,observed,satisfied\n0.5,0.25,,1\n1,0.5,,0\n");
    cert.observed = std::vector<double>{0.125, 0.75};
    std::ostringstream full;
    write_certificate_csv(full, cert);
    CHECK(full.str() == "x,bound,observed,satisfied\n0.5,0.25,0.125,1\n1,0.5,0.75,0\n");
}
