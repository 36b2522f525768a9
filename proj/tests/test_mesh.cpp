#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "hilfer/error.hpp"
#include "hilfer/mesh.hpp"
#include "hilfer/special_fn.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

using hilfer::Mesh;
using hilfer::WeightedGridFunction;

namespace {

WeightedGridFunction constant(const Mesh& m, double gamma_w, double c) {
    return WeightedGridFunction(m, gamma_w, std::vector<double>(m.size(), c));
}

WeightedGridFunction random_fn(const Mesh& m, double gamma_w, std::mt19937& rng) {
    std::uniform_real_distribution<double> u(-5.0, 5.0);
    std::vector<double> w(m.size());
    for (double& v : w) {
        v = u(rng);
    }
    return WeightedGridFunction(m, gamma_w, std::move(w));
}

} // namespace

TEST_CASE("mesh construction") {
    const Mesh m = Mesh::uniform(0.0, 2.0, 4);
    CHECK(m.size() == 5);
    CHECK(m.panels() == 4);
    CHECK(m.a() == 0.0);
    CHECK(m.b() == 2.0);
    CHECK(m[2] == doctest::Approx(1.0));
    CHECK(m.locate(0.0) == 0);
    CHECK(m.locate(0.6) == 1);
    CHECK(m.locate(2.0) == 3);
    CHECK_THROWS_AS(Mesh({0.0}), hilfer::ValidationError);
    CHECK_THROWS_AS(Mesh({0.0, 1.0, 1.0}), hilfer::ValidationError);
    CHECK_THROWS_AS(Mesh::uniform(1.0, 0.0, 3), hilfer::ValidationError);
    CHECK_THROWS_AS(m.locate(2.5), hilfer::DomainError);
}

TEST_CASE("weighted grid function invariants") {
    const Mesh m = Mesh::uniform(0.0, 1.0, 3);
    CHECK_THROWS_AS(WeightedGridFunction(m, 0.0, std::vector<double>(4, 1.0)), hilfer::ValidationError);
    CHECK_THROWS_AS(WeightedGridFunction(m, 1.2, std::vector<double>(4, 1.0)), hilfer::ValidationError);
    CHECK_THROWS_AS(WeightedGridFunction(m, 0.5, std::vector<double>(3, 1.0)), hilfer::ValidationError);
    CHECK_THROWS_AS(WeightedGridFunction(m, 0.5, {1.0, NAN, 1.0, 1.0}), hilfer::ValidationError);
    const WeightedGridFunction f = constant(m, 0.5, 2.0);
    CHECK_THROWS_AS(f.y(0), hilfer::DomainError);
    CHECK(f.y(3) == doctest::Approx(2.0));
}

TEST_CASE("eval_weighted examples") {
    const Mesh m = Mesh::uniform(0.0, 1.0, 8);
    const WeightedGridFunction c = constant(m, 0.7, 3.5);
    for (double x : {0.0, 0.13, 0.5, 0.999, 1.0}) {
        CHECK(eval_weighted(c, x) == doctest::Approx(3.5));
    }
    std::vector<double> w(m.size());
    for (std::size_t i = 0; i < m.size(); ++i) {
        w[i] = 2.0 * m[i] - 1.0;
    }
    const WeightedGridFunction lin(m, 1.0, w);
    for (std::size_t i = 0; i < m.size(); ++i) {
        CHECK(eval_weighted(lin, m[i]) == w[i]);
    }
    const double mid = 0.5 * (m[2] + m[3]);
    CHECK(eval_weighted(lin, mid) == doctest::Approx(0.5 * (w[2] + w[3])));
    CHECK_THROWS_AS(eval_weighted(lin, -0.1), hilfer::DomainError);
    CHECK_THROWS_AS(eval_weighted(lin, 1.1), hilfer::DomainError);
}

TEST_CASE("eval_y examples") {
    const Mesh m = Mesh::uniform(0.0, 8.0, 8);
    CHECK(eval_y(constant(m, 1.0, 1.0), 3.3) == doctest::Approx(1.0));
    CHECK(eval_y(constant(m, 0.5, 1.0), 4.0) == doctest::Approx(0.5));
    CHECK_THROWS_AS(eval_y(constant(m, 0.5, 1.0), 0.0), hilfer::DomainError);
    CHECK(eval_y(constant(m, 1.0, 2.0), 0.0) == doctest::Approx(2.0));

    // w = y_a / Gamma(gamma) is the first Picard iterate
    const double g = 0.76;
    const double ya = 1.5;
    const WeightedGridFunction y0 = constant(m, g, ya / hilfer::gamma(g));
    for (double x : {0.5, 2.0, 7.0}) {
        CHECK(eval_y(y0, x) == doctest::Approx(ya * std::pow(x, g - 1.0) / hilfer::gamma(g)));
    }
    CHECK(weighted_norm(y0) == doctest::Approx(ya / hilfer::gamma(g)));
}

TEST_CASE("nonzero anchor") {
    const Mesh m = Mesh::uniform(1.0, 2.0, 4);
    const WeightedGridFunction f(m, 0.5, std::vector<double>(5, 1.0), 0.0);
    CHECK(f.anchor() == 0.0);
    CHECK(f.y(0) == doctest::Approx(1.0));
    CHECK(eval_y(f, 1.5) == doctest::Approx(1.0 / std::sqrt(1.5)));
    CHECK_THROWS_AS(WeightedGridFunction(m, 0.5, std::vector<double>(5, 1.0), 1.5),
                    hilfer::ValidationError);
}

TEST_CASE("weighted norm and distance examples") {
    const Mesh m({0.0, 0.5, 1.0});
    CHECK(weighted_norm(constant(m, 0.5, 0.0)) == 0.0);
    CHECK(weighted_norm(WeightedGridFunction(m, 0.5, {1.0, -3.0, 2.0})) == 3.0);
    const Mesh m2({0.0, 1.0});
    const WeightedGridFunction f(m2, 1.0, {1.0, 1.0});
    const WeightedGridFunction g(m2, 1.0, {0.0, 3.0});
    CHECK(weighted_distance(f, f) == 0.0);
    CHECK(weighted_distance(f, g) == 2.0);
    CHECK_THROWS_AS(weighted_distance(f, constant(m, 1.0, 0.0)), hilfer::MeshMismatchError);
    CHECK_THROWS_AS(weighted_distance(f, WeightedGridFunction(m2, 0.5, {0.0, 0.0})),
                    hilfer::MeshMismatchError);
}

TEST_CASE("metric axioms and interpolation bounds on random data") {
    std::mt19937 rng(42);
    std::uniform_real_distribution<double> ux(0.0, 1.0);
    const Mesh m = Mesh::uniform(0.0, 1.0, 17);
    for (int trial = 0; trial < 100; ++trial) {
        const auto f = random_fn(m, 0.6, rng);
        const auto g = random_fn(m, 0.6, rng);
        const auto h = random_fn(m, 0.6, rng);
        const double dfg = weighted_distance(f, g);
        CHECK(dfg >= 0.0);
        CHECK(dfg == weighted_distance(g, f));
        CHECK(weighted_distance(f, h) <= dfg + weighted_distance(g, h) + 1e-15);

        const auto [lo, hi] = std::minmax_element(f.w().begin(), f.w().end());
        for (int k = 0; k < 20; ++k) {
            const double v = eval_weighted(f, ux(rng));
            CHECK(v >= *lo);
            CHECK(v <= *hi);
        }
    }
}

TEST_CASE("from_values inverts the weight map") {
    const Mesh m = Mesh::uniform(0.0, 1.0, 10);
    const double g = 0.3;
    std::vector<double> y(m.size());
    for (std::size_t i = 1; i < m.size(); ++i) {
        y[i] = std::pow(m[i], g - 1.0) * (1.0 + m[i]);
    }
    const WeightedGridFunction f = from_values(m, g, y, 1.0);
    CHECK(f.w(0) == 1.0);
    for (std::size_t i = 1; i < m.size(); ++i) {
        CHECK(f.w(i) == doctest::Approx(1.0 + m[i]));
        CHECK(f.y(i) == doctest::Approx(y[i]));
        CHECK(eval_y(f, m[i]) == doctest::Approx(y[i]));
    }
}

TEST_CASE("reweight keeps point values") {
    const Mesh m = Mesh::uniform(0.0, 1.0, 6);
    std::vector<double> w(m.size());
    for (std::size_t i = 0; i < m.size(); ++i) {
        w[i] = 1.0 + m[i];
    }
    const WeightedGridFunction f(m, 0.9, w);
    const WeightedGridFunction r = reweight(f, 0.4);
    CHECK(r.gamma_w() == 0.4);
    CHECK(r.w(0) == 0.0);
    for (std::size_t i = 1; i < m.size(); ++i) {
        CHECK(r.y(i) == doctest::Approx(f.y(i)));
    }
    CHECK_THROWS_AS(reweight(r, 0.9), hilfer::DomainError);
}

TEST_CASE("csv round trip is exact") {
    std::mt19937 rng(3);
    const Mesh m({0.0, 0.1, 0.30000000000000004, 0.7, 1.0});
    const auto f = random_fn(m, 0.45, rng);
    std::stringstream ss;
    write_csv(ss, f);
    const std::string text = ss.str();
    CHECK(text.rfind("x,w,y\n", 0) == 0);
    // y is empty at the anchor for gamma < 1
    CHECK(text.find(",\n") != std::string::npos);
    const WeightedGridFunction back = hilfer::read_csv(ss, 0.45);
    CHECK(back.mesh() == m);
    for (std::size_t i = 0; i < m.size(); ++i) {
        CHECK(back.w(i) == f.w(i));
    }
}

TEST_CASE("csv read errors") {
    std::istringstream empty("");
    CHECK_THROWS_AS(hilfer::read_csv(empty, 1.0), hilfer::ValidationError);
    std::istringstream header_only("x,w,y\n");
    CHECK_THROWS_AS(hilfer::read_csv(header_only, 1.0), hilfer::ValidationError);
    std::istringstream bad_header("a,b,c\n0,1,1\n1,1,1\n");
    CHECK_THROWS_AS(hilfer::read_csv(bad_header, 1.0), hilfer::ValidationError);
    std::istringstream bad_number("x,w,y\n0,1,1\n1,abc,1\n");
    CHECK_THROWS_AS(hilfer::read_csv(bad_number, 1.0), hilfer::ValidationError);
    std::istringstream not_increasing("x,w,y\n0,1,1\n0,1,1\n");
    CHECK_THROWS_AS(hilfer::read_csv(not_increasing, 1.0), hilfer::ValidationError);
}
