#include <cstdlib>
#include <iostream>

#include "CLI11.hpp"

#include "nlft/cli.hpp"
#include "nlft/errors.hpp"

int main(int argc, char** argv) {
    CLI::App app{"Dyadic/d-adic nonlinear Fourier transform toolkit"};
    app.require_subcommand(1);
    app.option_defaults()->always_capture_default();

    nlft::RunConfig config;
    std::string p_grid;
    if (const char* env = std::getenv("NLFT_THREADS")) {
        try {
            config.threads = static_cast<unsigned>(std::stoul(env));
        } catch (const std::exception&) {
            std::cerr << "error: NLFT_THREADS must be a positive integer\n";
            return 2;
        }
    }

    const char* commands[][2] = {
        {"transform", "Print the top-layer transform of a step function"},
        {"oracle-check", "Compare every tile against the direct ordered product"},
        {"plancherel", "Tabulate the truncated Plancherel defect"},
        {"hy-scan", "Scan Hausdorff-Young ratios over an exponent grid"},
        {"scale", "Report the scale functional across the pyramid"},
        {"bellman", "Audit the threshold and the Bellman function"},
        {"fuzz", "Seeded fuzzing of the swapping inequality or its case lemmas"},
    };
    for (const auto& [name, help] : commands) {
        auto* sub = app.add_subcommand(name, help);
        sub->add_option("--d", config.d, "Radix");
        sub->add_option("--nx", config.nx, "Support exponent of generated functions");
        sub->add_option("--nxi", config.nxi, "Frequency exponent");
        sub->add_option("--cell-exponent", config.cell_exponent, "Cell exponent of generated functions");
        sub->add_option("--seed", config.seed, "Random seed");
        sub->add_option("--trials", config.trials, "Fuzz trials");
        sub->add_option("--p-grid", p_grid, "Comma-separated exponents");
        sub->add_option("--input", config.input, "Step function JSON file");
        sub->add_option("--out", config.output, "Output file (default stdout)");
        sub->add_option("--format", config.format, "csv or json");
        sub->add_option("--threads", config.threads, "Worker threads");
        sub->add_option("--regime", config.regime, "case1, case2, case3 or mixed");
        sub->add_option("--kind", config.fuzz_kind, "swap or cases");
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }
    config.command = app.get_subcommands().front()->get_name();
    if (!p_grid.empty()) {
        try {
            config.p_grid = nlft::parse_p_grid(p_grid);
        } catch (const std::exception& e) {
            std::cerr << "error: " << e.what() << '\n';
            return 2;
        }
    }
    return nlft::run(config, std::cout, std::cerr);
}
