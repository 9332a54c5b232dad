#include <CLI11.hpp>

#include <iostream>
#include <string>

#include "fedosov/job.hpp"

int main(int argc, char** argv) {
    CLI::App app{"Computes a star product of two phase-space functions to a fixed h order"};

    std::string config_path;
    std::string output = "human";
    int hpower_override = 0;
    bool print_intermediate = false;
    bool timing = false;

    app.add_option("--config", config_path, "job description file (JSON)")->required();
    app.add_option("--hpower", hpower_override, "override the truncation order from the config")
        ->check(CLI::PositiveNumber);
    app.add_option("--output", output, "report style")
        ->check(CLI::IsMember({"human", "json", "json-like"}));
    app.add_flag("--print-intermediate", print_intermediate,
                 "include the connection, curvature, correction and both sections");
    app.add_flag("--timing", timing, "print per-stage wall-clock times to stderr");

    CLI11_PARSE(app, argc, argv);

    try {
        fedosov::JobConfig cfg = fedosov::load_config(config_path);
        if (hpower_override > 0)
            cfg.hpower = hpower_override;
        cfg.print_intermediate = print_intermediate;
        cfg.output = output == "human" ? fedosov::OutputMode::human
                                       : fedosov::OutputMode::machine;

        fedosov::JobReport report = fedosov::run_job(cfg);
        std::cout << report.text;
        if (timing)
            std::cerr << report.timing;
        return 0;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
