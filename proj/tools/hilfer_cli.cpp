#include "hilfer/commands.hpp"

#include <CLI11.hpp>

#include <iostream>
#include <optional>
#include <string>

int main(int argc, char** argv) {
    CLI::App app{"Hilfer fractional Cauchy problems: Picard solver and dependence bounds"};
    app.require_subcommand(1);

    std::string problem;
    std::string output;
    std::string solution;

    auto* solve = app.add_subcommand("solve", "solve a problem file, write x,w,y CSV");
    solve->add_option("problem", problem, "problem JSON")->required();
    solve->add_option("-o,--output", output, "solution CSV")->required();

    auto* verify = app.add_subcommand("verify", "recheck residuals of a stored solution");
    verify->add_option("problem", problem, "problem JSON")->required();
    verify->add_option("solution", solution, "solution CSV")->required();

    hilfer::BoundsRequest req;
    std::optional<double> eps;
    std::optional<double> delta;
    std::optional<double> yhat;
    std::string bounds_out = "bounds.csv";
    auto* bounds = app.add_subcommand("bounds", "continuous-dependence certificate");
    bounds->add_option("problem", problem, "problem JSON")->required();
    auto* ic_opt = bounds->add_option("--ic", eps, "perturb the weighted initial value by eps");
    auto* order_opt = bounds->add_option("--order", delta, "lower the order by delta");
    bounds->add_option("--yhat", yhat, "initial value of the order-perturbed problem");
    bounds->add_option("-o,--output", bounds_out, "certificate CSV")->capture_default_str();
    ic_opt->excludes(order_opt);

    double alpha = 0.0;
    double beta = 1.0;
    double z = 0.0;
    auto* ml = app.add_subcommand("ml", "evaluate the Mittag-Leffler function E_{alpha,beta}(z)");
    ml->add_option("--alpha", alpha)->required();
    ml->add_option("--beta", beta)->capture_default_str();
    ml->add_option("--z", z)->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : hilfer::kExitInput;
    }

    if (solve->parsed()) {
        return hilfer::cmd_solve(problem, output, std::cout, std::cerr);
    }
    if (verify->parsed()) {
        return hilfer::cmd_verify(problem, solution, std::cout, std::cerr);
    }
    if (bounds->parsed()) {
        if (eps) {
            req.mode = hilfer::BoundsRequest::Mode::ic;
            req.epsilon = *eps;
        } else if (delta) {
            if (!yhat) {
                std::cerr << "error: --order needs --yhat\n";
                return hilfer::kExitInput;
            }
            req.mode = hilfer::BoundsRequest::Mode::order;
            req.delta = *delta;
            req.y_hat_a = *yhat;
        } else {
            std::cerr << "error: bounds needs --ic <eps> or --order <delta> --yhat <v>\n";
            return hilfer::kExitInput;
        }
        req.out_path = bounds_out;
        return hilfer::cmd_bounds(problem, req, std::cout, std::cerr);
    }
    return hilfer::cmd_ml(alpha, beta, z, std::cout, std::cerr);
}
