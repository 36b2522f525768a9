#pragma once

#include <cstddef>
#include <iosfwd>
#include <span>
#include <vector>

namespace hilfer {

/// Strictly increasing node set on [a, b] with at least two nodes.
class Mesh {
public:
    explicit Mesh(std::vector<double> nodes);

    /// `panels` equal subdivisions of [a, b].
    static Mesh uniform(double a, double b, std::size_t panels);

    double a() const noexcept { return nodes_.front(); }
    double b() const noexcept { return nodes_.back(); }
    std::size_t size() const noexcept { return nodes_.size(); }
    std::size_t panels() const noexcept { return nodes_.size() - 1; }
    double operator[](std::size_t i) const noexcept { return nodes_[i]; }
    std::span<const double> nodes() const noexcept { return nodes_; }

    /// Index of the panel [x_k, x_{k+1}] containing x (last panel for x = b).
    std::size_t locate(double x) const;

    friend bool operator==(const Mesh&, const Mesh&) = default;

private:
    std::vector<double> nodes_;
};

/// A function y on (anchor, b] stored through its weighted companion
/// w(x) = (x - anchor)^(1 - gamma_w) y(x), sampled at the mesh nodes.
///
/// The anchor is the point where y may be singular. It defaults to the
/// first mesh node; subinterval pieces of a solution keep the global
/// left endpoint as anchor so that their companions stitch together.
class WeightedGridFunction {
public:
    WeightedGridFunction(Mesh mesh, double gamma_w, std::vector<double> w);
    WeightedGridFunction(Mesh mesh, double gamma_w, std::vector<double> w, double anchor);

    const Mesh& mesh() const noexcept { return mesh_; }
    double gamma_w() const noexcept { return gamma_w_; }
    double anchor() const noexcept { return anchor_; }
    std::span<const double> w() const noexcept { return w_; }
    double w(std::size_t i) const noexcept { return w_[i]; }
    std::size_t size() const noexcept { return w_.size(); }

    /// y at node i; throws DomainError at the anchor when gamma_w < 1.
    double y(std::size_t i) const;

private:
    Mesh mesh_;
    double gamma_w_;
    double anchor_;
    std::vector<double> w_;
};

/// Companion from point values y(x_i); y at the anchor is never read when
/// gamma_w < 1 (pass the companion limit through `w_at_anchor` instead).
WeightedGridFunction from_values(const Mesh& mesh, double gamma_w, std::span<const double> y,
                                 double w_at_anchor);

/// Piecewise-linear interpolant of the companion.
double eval_weighted(const WeightedGridFunction& f, double x);

/// y(x) = (x - anchor)^(gamma_w - 1) * eval_weighted(f, x).
double eval_y(const WeightedGridFunction& f, double x);

/// max_i |w_i|, the nodal version of the C_{1-gamma} norm.
double weighted_norm(const WeightedGridFunction& f);

double weighted_distance(const WeightedGridFunction& f, const WeightedGridFunction& g);

/// Same function expressed with a smaller weight exponent:
/// w'(x) = (x - anchor)^(gamma_w - new_gamma) w(x). Requires new_gamma <= gamma_w.
WeightedGridFunction reweight(const WeightedGridFunction& f, double new_gamma);

/// CSV with header `x,w,y`; `y` is left empty where it is singular.
/// Values carry 17 significant digits so a read reproduces them exactly.
void write_csv(std::ostream& os, const WeightedGridFunction& f);

/// Reads `x,w,y` rows (the y column is ignored). The mesh is taken from x.
WeightedGridFunction read_csv(std::istream& is, double gamma_w);

} // namespace hilfer
