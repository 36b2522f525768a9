#include "hilfer/mesh.hpp"

#include "hilfer/error.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>
#include <string>

namespace hilfer {

Mesh::Mesh(std::vector<double> nodes) : nodes_(std::move(nodes)) {
    if (nodes_.size() < 2) {
        throw ValidationError("mesh", "needs at least two nodes");
    }
    for (std::size_t i = 0; i < nodes_.size(); ++i) {
        if (!std::isfinite(nodes_[i])) {
            throw ValidationError("mesh", "non-finite node at index " + std::to_string(i));
        }
        if (i > 0 && !(nodes_[i] > nodes_[i - 1])) {
            throw ValidationError("mesh", "nodes not strictly increasing at index " +
                                              std::to_string(i));
        }
    }
}

Mesh Mesh::uniform(double a, double b, std::size_t panels) {
    if (!(a < b)) {
        throw ValidationError("mesh", "requires a < b");
    }
    if (panels == 0) {
        throw ValidationError("mesh", "requires at least one panel");
    }
    std::vector<double> nodes(panels + 1);
    const double h = (b - a) / static_cast<double>(panels);
    for (std::size_t i = 0; i < panels; ++i) {
        nodes[i] = a + static_cast<double>(i) * h;
    }
    nodes[panels] = b;
    return Mesh(std::move(nodes));
}

std::size_t Mesh::locate(double x) const {
    if (x < a() || x > b()) {
        throw DomainError("mesh: x = " + std::to_string(x) + " outside [" + std::to_string(a()) +
                          ", " + std::to_string(b()) + "]");
    }
    const auto it = std::upper_bound(nodes_.begin(), nodes_.end(), x);
    const auto k = static_cast<std::size_t>(it - nodes_.begin());
    return std::min(k == 0 ? 0 : k - 1, panels() - 1);
}

WeightedGridFunction::WeightedGridFunction(Mesh mesh, double gamma_w, std::vector<double> w)
    : WeightedGridFunction(mesh, gamma_w, std::move(w), mesh.a()) {}

WeightedGridFunction::WeightedGridFunction(Mesh mesh, double gamma_w, std::vector<double> w,
                                           double anchor)
    : mesh_(std::move(mesh)), gamma_w_(gamma_w), anchor_(anchor), w_(std::move(w)) {
    if (!(gamma_w_ > 0.0 && gamma_w_ <= 1.0)) {
        throw ValidationError("gamma_w", "must lie in (0, 1], got " + std::to_string(gamma_w_));
    }
    if (w_.size() != mesh_.size()) {
        throw ValidationError("w", "length " + std::to_string(w_.size()) +
                                       " does not match node count " +
                                       std::to_string(mesh_.size()));
    }
    if (anchor_ > mesh_.a()) {
        throw ValidationError("anchor", "must not lie to the right of the first node");
    }
    for (std::size_t i = 0; i < w_.size(); ++i) {
        if (!std::isfinite(w_[i])) {
            throw ValidationError("w", "non-finite value at node " + std::to_string(i));
        }
    }
}

double WeightedGridFunction::y(std::size_t i) const {
    const double d = mesh_[i] - anchor_;
    if (gamma_w_ == 1.0) {
        return w_[i];
    }
    if (d <= 0.0) {
        throw DomainError("y is singular at the anchor for gamma_w < 1");
    }
    return std::pow(d, gamma_w_ - 1.0) * w_[i];
}

WeightedGridFunction from_values(const Mesh& mesh, double gamma_w, std::span<const double> y,
                                 double w_at_anchor) {
    if (y.size() != mesh.size()) {
        throw ValidationError("y", "length does not match mesh");
    }
    std::vector<double> w(mesh.size());
    for (std::size_t i = 0; i < mesh.size(); ++i) {
        const double d = mesh[i] - mesh.a();
        w[i] = (i == 0 && gamma_w < 1.0) ? w_at_anchor : std::pow(d, 1.0 - gamma_w) * y[i];
    }
    return WeightedGridFunction(mesh, gamma_w, std::move(w));
}

double eval_weighted(const WeightedGridFunction& f, double x) {
    const Mesh& m = f.mesh();
    const std::size_t k = m.locate(x);
    const double t = (x - m[k]) / (m[k + 1] - m[k]);
    if (t == 0.0) {
        return f.w(k);
    }
    if (t == 1.0) {
        return f.w(k + 1);
    }
    return (1.0 - t) * f.w(k) + t * f.w(k + 1);
}

double eval_y(const WeightedGridFunction& f, double x) {
    const double w = eval_weighted(f, x);
    if (f.gamma_w() == 1.0) {
        return w;
    }
    const double d = x - f.anchor();
    if (d <= 0.0) {
        throw DomainError("eval_y: singular at x = a for gamma_w < 1");
    }
    return std::pow(d, f.gamma_w() - 1.0) * w;
}

double weighted_norm(const WeightedGridFunction& f) {
    double m = 0.0;
    for (double v : f.w()) {
        m = std::max(m, std::abs(v));
    }
    return m;
}

double weighted_distance(const WeightedGridFunction& f, const WeightedGridFunction& g) {
    if (f.mesh() != g.mesh()) {
        throw MeshMismatchError("weighted_distance: functions live on different meshes");
    }
    if (f.gamma_w() != g.gamma_w() || f.anchor() != g.anchor()) {
        throw MeshMismatchError("weighted_distance: different weights");
    }
    double d = 0.0;
    for (std::size_t i = 0; i < f.size(); ++i) {
        d = std::max(d, std::abs(f.w(i) - g.w(i)));
    }
    return d;
}

WeightedGridFunction reweight(const WeightedGridFunction& f, double new_gamma) {
    if (new_gamma > f.gamma_w()) {
        throw DomainError("reweight: cannot raise the weight exponent");
    }
    if (new_gamma == f.gamma_w()) {
        return f;
    }
    const double shift = f.gamma_w() - new_gamma;
    std::vector<double> w(f.size());
    for (std::size_t i = 0; i < f.size(); ++i) {
        w[i] = std::pow(f.mesh()[i] - f.anchor(), shift) * f.w(i);
    }
    return WeightedGridFunction(f.mesh(), new_gamma, std::move(w), f.anchor());
}

void write_csv(std::ostream& os, const WeightedGridFunction& f) {
    std::ostringstream buf;
    buf.precision(17);
    buf << "x,w,y\n";
    for (std::size_t i = 0; i < f.size(); ++i) {
        buf << f.mesh()[i] << ',' << f.w(i) << ',';
        if (f.gamma_w() == 1.0 || f.mesh()[i] > f.anchor()) {
            buf << f.y(i);
        }
        buf << '\n';
    }
    os << buf.str();
}

namespace {

double parse_field(const std::string& s, std::size_t line, const char* what) {
    try {
        std::size_t used = 0;
        const double v = std::stod(s, &used);
        if (used != s.size()) {
            throw std::invalid_argument(s);
        }
        return v;
    } catch (const std::exception&) {
        throw ValidationError("csv", std::string("line ") + std::to_string(line) + ": bad " +
                                         what + " value '" + s + "'");
    }
}

} // namespace

WeightedGridFunction read_csv(std::istream& is, double gamma_w) {
    std::string line;
    if (!std::getline(is, line)) {
        throw ValidationError("csv", "empty input");
    }
    if (!line.empty() && line.back() == '\r') {
        line.pop_back();
    }
    if (line != "x,w,y") {
        throw ValidationError("csv", "expected header 'x,w,y', got '" + line + "'");
    }
    std::vector<double> xs;
    std::vector<double> ws;
    std::size_t lineno = 1;
    while (std::getline(is, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') {
            line.pop_back();
        }
        if (line.empty()) {
            continue;
        }
        const auto c1 = line.find(',');
        const auto c2 = c1 == std::string::npos ? c1 : line.find(',', c1 + 1);
        if (c2 == std::string::npos) {
            throw ValidationError("csv", "line " + std::to_string(lineno) + ": expected 3 columns");
        }
        xs.push_back(parse_field(line.substr(0, c1), lineno, "x"));
        ws.push_back(parse_field(line.substr(c1 + 1, c2 - c1 - 1), lineno, "w"));
    }
    if (xs.size() < 2) {
        throw ValidationError("csv", "need at least two data rows");
    }
    return WeightedGridFunction(Mesh(std::move(xs)), gamma_w, std::move(ws));
}

} // namespace hilfer
