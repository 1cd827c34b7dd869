#include <cstdlib>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <Eigen/Core>

#include "blab/scenario.hpp"

int main(int argc, char** argv) {
    if (const char* threads = std::getenv("BLAB_THREADS")) {
        int n = std::atoi(threads);
        if (n > 0) Eigen::setNbThreads(n);
    }

    CLI::App app{"Bergman kernel calculus for line bundles over the projective line"};
    app.require_subcommand(1);

    std::string scenario_path;
    std::string out_dir = "out";
    CLI::App* run = app.add_subcommand("run", "run a scenario file");
    run->add_option("scenario", scenario_path, "scenario JSON file")->required();
    run->add_option("--out", out_dir, "output directory");

    int degree = 4;
    std::vector<double> t_values{1.0, 0.5, 0.25, 0.0};
    std::string ex_out = "out";
    CLI::App* ex62 = app.add_subcommand(
        "example62", "classify the degenerating family diag(1,1,t^2,1,...,1)");
    ex62->add_option("--d", degree, "bundle degree (>= 4)");
    ex62->add_option("--t", t_values, "t values, descending toward 0")
        ->delimiter(',');
    ex62->add_option("--out", ex_out, "output directory");

    CLI11_PARSE(app, argc, argv);

    int code = 0;
    if (run->parsed()) {
        code = blab::run_scenario(scenario_path, out_dir);
    } else if (ex62->parsed()) {
        code = blab::run_example62(degree, t_values, ex_out);
    }
    if (code != 0)
        std::cerr << "blab: finished with exit code " << code
                  << " (see report.json)\n";
    return code;
}
