#include "dbvp/cli.hpp"

#include <CLI11.hpp>

#include <cstdint>
#include <iostream>
#include <string>
#include <vector>

int main(int argc, char** argv) {
    CLI::App app{"Green's-function solver and condition checker for three-point delay boundary value problems"};
    app.require_subcommand(1);

    std::string solve_config;
    auto* solve = app.add_subcommand("solve", "Solve the problem in a config file (Picard, Newton fallback)");
    solve->add_option("config", solve_config, "problem config file")->required();

    std::uint64_t seed = 42;
    int cases = 100;
    double k1_scale = 1.0;
    auto* verify = app.add_subcommand("verify", "Randomized check of the kernel inequalities");
    verify->add_option("--seed", seed, "random seed");
    verify->add_option("--cases", cases, "number of random parameter tuples");
    verify->add_option("--corrupt-k1", k1_scale, "scale k1 before checking (mutation test hook)")->group("");

    std::string check_config;
    auto* check = app.add_subcommand("check", "Evaluate the sufficient existence conditions");
    check->add_option("config", check_config, "problem config file")->required();

    std::string sweep_config;
    std::vector<std::string> axes;
    auto* sweep = app.add_subcommand("sweep", "Sweep one or two parameters and tabulate the outcome");
    sweep->add_option("config", sweep_config, "problem config file")->required();
    sweep->add_option("--axis", axes, "name:lo:hi:steps with name in {lambda, alpha, beta, eta, tau}")
        ->required()
        ->take_all();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : dbvp::cli::kConfigError;
    }

    if (*solve) return dbvp::cli::cmd_solve(solve_config, std::cout, std::cerr);
    if (*verify) return dbvp::cli::cmd_verify(seed, cases, std::cout, std::cerr, k1_scale);
    if (*check) return dbvp::cli::cmd_check(check_config, std::cout, std::cerr);
    return dbvp::cli::cmd_sweep(sweep_config, axes, std::cout, std::cerr);
}
