#include "hilfer/commands.hpp"

#include "hilfer/bounds.hpp"
#include "hilfer/error.hpp"
#include "hilfer/frac_ops.hpp"
#include "hilfer/picard_solver.hpp"
#include "hilfer/problem_io.hpp"
#include "hilfer/special_fn.hpp"

#include <algorithm>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>

namespace hilfer {

namespace {

LoadedProblem load_and_warn(const std::filesystem::path& problem, std::ostream& err) {
    LoadedProblem lp = load_problem(problem);
    for (const auto& w : lp.warnings) {
        err << "warning: " << w << '\n';
    }
    return lp;
}

// Maps the exception taxonomy onto exit codes.
template <class Fn>
int guarded(std::ostream& err, Fn&& fn) {
    try {
        return fn();
    } catch (const NonConvergenceError& e) {
        err << "error: " << e.what() << '\n';
        return kExitNonConvergence;
    } catch (const ConvergenceError& e) {
        err << "error: " << e.what() << '\n';
        return kExitNonConvergence;
    } catch (const ValidationError& e) {
        err << "error: invalid " << e.what() << '\n';
        return kExitInput;
    } catch (const ParseError& e) {
        err << "error: rhs syntax at " << e.what() << '\n';
        return kExitInput;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kExitInput;
    }
}

void print_report(std::ostream& out, const SolveReport& r) {
    out << std::setprecision(10);
    out << "breakpoints:";
    for (double b : r.breakpoints) {
        out << ' ' << b;
    }
    out << '\n';
    out << "interval iterations final_increment apriori_bound\n";
    for (std::size_t j = 0; j < r.iterations.size(); ++j) {
        out << j << ' ' << r.iterations[j] << ' '
            << (j < r.final_increment.size() ? r.final_increment[j] : 0.0) << ' '
            << (j < r.apriori_bounds.size() ? r.apriori_bounds[j] : 0.0) << '\n';
    }
}

} // namespace

int cmd_solve(const std::filesystem::path& problem, const std::filesystem::path& out_path,
              std::ostream& out, std::ostream& err) {
    return guarded(err, [&] {
        const LoadedProblem lp = load_and_warn(problem, err);
        Solution sol = [&] {
            try {
                return solve(lp.spec, lp.cfg);
            } catch (const NonConvergenceError& e) {
                print_report(out, e.partial());
                const auto& inc = e.partial().final_increment;
                if (!inc.empty()) {
                    out << "last increment: " << inc.back() << '\n';
                }
                throw;
            }
        }();
        std::ostringstream csv;
        write_csv(csv, sol.y);
        write_file_atomic(out_path, csv.str());
        print_report(out, sol.report);
        out << "volterra_residual: " << sol.report.volterra_residual << '\n';
        out << "residual: " << sol.report.residual << '\n';
        out << "written: " << out_path.string() << '\n';
        return static_cast<int>(kExitOk);
    });
}

int cmd_verify(const std::filesystem::path& problem, const std::filesystem::path& solution_csv,
               std::ostream& out, std::ostream& err) {
    return guarded(err, [&] {
        const LoadedProblem lp = load_and_warn(problem, err);
        std::ifstream in(solution_csv);
        if (!in) {
            throw ValidationError("csv", "cannot open " + solution_csv.string());
        }
        const WeightedGridFunction y = read_csv(in, lp.spec.ord.gamma_w);
        const Mesh& m = y.mesh();
        if (m.a() != lp.spec.a || m.b() != lp.spec.b) {
            throw MeshMismatchError("solution grid [" + std::to_string(m.a()) + ", " +
                                    std::to_string(m.b()) + "] does not span the problem interval");
        }
        const double volterra = volterra_residual(lp.spec, y);
        const double diff = residual(lp.spec, y);
        const double vtol = 10.0 * lp.cfg.tol_picard;
        out << std::setprecision(6);
        out << "volterra_residual: " << volterra << " (tolerance " << vtol << ")\n";
        out << "residual: " << diff << " (tolerance " << kVerifyResidualTol << ")\n";
        const bool ok = volterra <= vtol && diff <= kVerifyResidualTol;
        out << (ok ? "verified" : "FAILED") << '\n';
        return static_cast<int>(ok ? kExitOk : kExitCheckFailed);
    });
}

int cmd_bounds(const std::filesystem::path& problem, const BoundsRequest& req, std::ostream& out,
               std::ostream& err) {
    return guarded(err, [&] {
        const LoadedProblem lp = load_and_warn(problem, err);
        const ProblemSpec& spec = lp.spec;
        BoundCertificate cert;
        if (req.mode == BoundsRequest::Mode::order) {
            if (!(req.delta >= 0.0 && req.delta < spec.ord.alpha)) {
                std::ostringstream os;
                os << "order perturbation requires 0 < alpha - delta <= alpha, i.e. 0 <= delta < "
                   << spec.ord.alpha << "; got delta = " << req.delta;
                throw ValidationError("delta", os.str());
            }
            const Mesh grid = Mesh::uniform(spec.a, spec.b, req.grid_panels);
            cert = order_perturbation_envelope(spec, req.delta, req.y_hat_a, grid, lp.cfg);
        } else {
            cert = ic_perturbation_certificate(spec, req.epsilon, lp.cfg);
        }
        std::ostringstream csv;
        write_certificate_csv(csv, cert);
        write_file_atomic(req.out_path, csv.str());

        out << std::setprecision(6);
        out << "lipschitz A: " << cert.lipschitz_A
            << (spec.lipschitz_estimated ? " (estimated)" : " (as supplied, not verified)") << '\n';
        if (req.mode == BoundsRequest::Mode::order) {
            out << "max |f| on grid: " << cert.f_norm << " (grid-measured)\n";
        }
        double worst = 0.0;
        std::size_t failed = 0;
        for (std::size_t i = 0; i < cert.xs.size(); ++i) {
            if (cert.observed && cert.bound[i] > 0.0) {
                worst = std::max(worst, (*cert.observed)[i] / cert.bound[i]);
            }
            failed += cert.node_satisfied[i] ? 0 : 1;
        }
        out << "nodes compared: " << cert.xs.size() << ", violations: " << failed << '\n';
        out << "max observed/bound: " << worst << '\n';
        out << "satisfied: " << (cert.satisfied ? "yes" : "no") << '\n';
        out << "written: " << req.out_path.string() << '\n';
        return static_cast<int>(cert.satisfied ? kExitOk : kExitCheckFailed);
    });
}

int cmd_ml(double alpha, double beta, double z, std::ostream& out, std::ostream& err) {
    return guarded(err, [&] {
        const double v = mittag_leffler({alpha, beta}, z);
        out << std::setprecision(15) << v << '\n';
        return static_cast<int>(kExitOk);
    });
}

} // namespace hilfer
