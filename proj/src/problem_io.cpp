#include "hilfer/problem_io.hpp"

#include "hilfer/error.hpp"
#include "hilfer/special_fn.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iterator>
#include <limits>
#include <set>
#include <sstream>
#include <system_error>

#include <unistd.h>

namespace hilfer {

namespace {

using nlohmann::json;

double number(const json& doc, const std::string& key, const std::string& field) {
    const json& v = doc.at(key);
    if (!v.is_number()) {
        throw ValidationError(field, "expected a number");
    }
    const double d = v.get<double>();
    if (!std::isfinite(d)) {
        throw ValidationError(field, "not finite");
    }
    return d;
}

std::size_t count(const json& doc, const std::string& key, const std::string& field) {
    const json& v = doc.at(key);
    if (!v.is_number_integer() || v.get<long long>() < 0) {
        throw ValidationError(field, "expected a nonnegative integer");
    }
    return static_cast<std::size_t>(v.get<long long>());
}

void reject_unknown(const json& obj, const std::set<std::string>& known, const std::string& where) {
    for (auto it = obj.begin(); it != obj.end(); ++it) {
        if (!known.count(it.key())) {
            throw ValidationError(where + it.key(), "unknown field");
        }
    }
}

// y_0 = y_a (x-a)^{gamma-1}/Gamma(gamma) sampled on (a, b], widened by twice
// its spread (at least 1) on both sides.
Interval lipschitz_y_range(const ProblemSpec& spec) {
    double lo = std::numeric_limits<double>::infinity();
    double hi = -lo;
    const double g = gamma(spec.ord.gamma_w);
    for (int i = 1; i <= 64; ++i) {
        const double d = (spec.b - spec.a) * i / 64.0;
        const double y0 = spec.y_a * std::pow(d, spec.ord.gamma_w - 1.0) / g;
        lo = std::min(lo, y0);
        hi = std::max(hi, y0);
    }
    const double span = std::max(hi - lo, 1.0);
    return {lo - 2.0 * span, hi + 2.0 * span};
}

} // namespace

LoadedProblem parse_problem(std::string_view json_text) {
    json doc;
    try {
        doc = json::parse(json_text.begin(), json_text.end());
    } catch (const json::parse_error& e) {
        throw ValidationError("document", std::string("invalid JSON: ") + e.what());
    }
    if (!doc.is_object()) {
        throw ValidationError("document", "expected a JSON object");
    }
    reject_unknown(doc, {"a", "b", "alpha", "beta", "y_a", "rhs", "lipschitz", "solver"}, "");
    for (const char* key : {"alpha", "beta", "y_a", "rhs"}) {
        if (!doc.contains(key)) {
            throw ValidationError(key, "missing");
        }
    }

    LoadedProblem out;
    ProblemSpec& spec = out.spec;
    if (doc.contains("a")) {
        spec.a = number(doc, "a", "a");
    }
    if (doc.contains("b")) {
        spec.b = number(doc, "b", "b");
    }
    if (!(spec.a < spec.b)) {
        throw ValidationError("b", "must exceed a");
    }
    spec.ord = FracOrder::make(number(doc, "alpha", "alpha"), number(doc, "beta", "beta"));
    spec.y_a = number(doc, "y_a", "y_a");
    if (!doc.at("rhs").is_string()) {
        throw ValidationError("rhs", "expected a string");
    }
    spec.rhs = Rhs::parse(doc.at("rhs").get<std::string>());

    SolverConfig& cfg = out.cfg;
    if (doc.contains("solver")) {
        const json& s = doc.at("solver");
        if (!s.is_object()) {
            throw ValidationError("solver", "expected an object");
        }
        reject_unknown(s, {"q", "nodes", "tol", "max_iter"}, "solver.");
        if (s.contains("q")) {
            cfg.contraction_q = number(s, "q", "solver.q");
        }
        if (s.contains("nodes")) {
            cfg.nodes_per_interval = count(s, "nodes", "solver.nodes");
        }
        if (s.contains("tol")) {
            cfg.tol_picard = number(s, "tol", "solver.tol");
        }
        if (s.contains("max_iter")) {
            cfg.max_iter = count(s, "max_iter", "solver.max_iter");
        }
    }
    cfg.validate();

    if (doc.contains("lipschitz")) {
        spec.lipschitz_A = number(doc, "lipschitz", "lipschitz");
        if (!(spec.lipschitz_A > 0.0)) {
            throw ValidationError("lipschitz", "must be positive");
        }
    } else {
        const Interval xr{spec.a, spec.b};
        const Interval yr = lipschitz_y_range(spec);
        double A = estimate_lipschitz(spec.rhs, xr, yr, 400);
        std::ostringstream os;
        os << "lipschitz not given; sampled estimate " << A << " over x in [" << xr.lo << ", "
           << xr.hi << "], y in [" << yr.lo << ", " << yr.hi << "] (heuristic, not a proof)";
        if (!(A > 0.0)) {
            A = 1e-12;
            os << "; clamped to " << A;
        }
        spec.lipschitz_A = A;
        spec.lipschitz_estimated = true;
        out.warnings.push_back(os.str());
    }
    spec.validate();
    return out;
}

LoadedProblem load_problem(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw ValidationError("path", "cannot open " + path.string());
    }
    const std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return parse_problem(text);
}

void write_file_atomic(const std::filesystem::path& path, const std::string& content) {
    std::filesystem::path tmp = path;
    tmp += ".tmp" + std::to_string(::getpid());
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) {
            throw Error("cannot write " + tmp.string());
        }
        out << content;
        out.flush();
        if (!out) {
            std::error_code ec;
            std::filesystem::remove(tmp, ec);
            throw Error("write failed for " + tmp.string());
        }
    }
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    if (ec) {
        std::filesystem::remove(tmp, ec);
        throw Error("cannot replace " + path.string() + ": " + ec.message());
    }
}

} // namespace hilfer
