#pragma once

#include "hilfer/picard_solver.hpp"
#include "hilfer/problem.hpp"

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace hilfer {

struct LoadedProblem {
    ProblemSpec spec;
    SolverConfig cfg;
    std::vector<std::string> warnings;
};

/// Problem document:
///
///   {"a": 0, "b": 1, "alpha": 0.6, "beta": 0.4, "y_a": 1, "rhs": "y",
///    "lipschitz": 1, "solver": {"q": 0.5, "nodes": 256, "tol": 1e-8, "max_iter": 200}}
///
/// a and b default to 0 and 1; lipschitz and solver are optional. Unknown
/// keys are rejected. Without lipschitz the constant is estimated by
/// sampling and a warning is recorded.
///
/// Throws ValidationError (field, reason) on schema or range problems and
/// ParseError for a malformed rhs.
LoadedProblem parse_problem(std::string_view json_text);

LoadedProblem load_problem(const std::filesystem::path& path);

/// Writes to a temporary sibling then renames over `path`.
void write_file_atomic(const std::filesystem::path& path, const std::string& content);

} // namespace hilfer
