#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>

namespace hilfer {

enum ExitCode : int {
    kExitOk = 0,
    kExitInput = 1,
    kExitNonConvergence = 2,
    kExitCheckFailed = 3,
};

/// Differential residual tolerance used by `verify` at default resolution.
inline constexpr double kVerifyResidualTol = 1e-2;

/// Solve and write the x,w,y CSV to out_path. Summary on `out`, diagnostics
/// on `err`. The output file is untouched unless the solve converges.
int cmd_solve(const std::filesystem::path& problem, const std::filesystem::path& out_path,
              std::ostream& out, std::ostream& err);

/// Recompute Volterra and differential residuals of a stored solution.
/// Passes when Volterra <= 10 tol_picard and differential <= kVerifyResidualTol.
int cmd_verify(const std::filesystem::path& problem, const std::filesystem::path& solution_csv,
               std::ostream& out, std::ostream& err);

struct BoundsRequest {
    enum class Mode { ic, order };
    Mode mode = Mode::ic;
    double epsilon = 0.0;
    double delta = 0.0;
    double y_hat_a = 0.0;
    std::filesystem::path out_path = "bounds.csv";
    /// evaluation grid panels for the order envelope
    std::size_t grid_panels = 512;
};

int cmd_bounds(const std::filesystem::path& problem, const BoundsRequest& req, std::ostream& out,
               std::ostream& err);

/// Prints E_{alpha,beta}(z) with 15 significant digits.
int cmd_ml(double alpha, double beta, double z, std::ostream& out, std::ostream& err);

} // namespace hilfer
