#include <CLI11.hpp>
#include <fstream>
#include <iostream>

#include "xpjost/commands.hpp"
#include "xpjost/errors.hpp"

int main(int argc, char** argv) {
    CLI::App app{"Spectral tools for the interacting xp model"};
    app.require_subcommand(1);

    xpjost::RunConfig cfg;
    std::string range;
    double mesh = 0.0, window = 0.0, length = 0.0;
    int series_m = 0, grid_n = 0;

    auto add_common = [&](CLI::App* sub, bool needs_model) {
        auto* opt = sub->add_option("--model", cfg.model, "Model config: JSON file path or inline JSON");
        if (needs_model) opt->required();
        sub->add_option("--out", cfg.out, "Output file (default: stdout)");
        sub->add_option("--range", range, "Energy range a:b");
        sub->add_option("--mesh", mesh, "Grid spacing")->check(CLI::PositiveNumber);
    };

    auto* eval = app.add_subcommand("eval", "CSV of F(E) over a real range");
    add_common(eval, true);
    eval->add_option("--window", window, "Dispersion window half-width d");
    eval->add_option("--length", length, "Cutoff L (overrides an infinite model L)");

    auto* spectrum = app.add_subcommand("spectrum", "JSON spectrum report");
    add_common(spectrum, true);
    spectrum->add_option("--length", length, "Cutoff L");

    auto* zeta = app.add_subcommand("zeta", "CSV of theta, Z, zeta and the smooth count");
    add_common(zeta, false);

    auto* fz = app.add_subcommand("fz", "CSV of F_Z by the integral and the series");
    add_common(fz, false);
    fz->add_option("--window", window, "Principal-value window half-width d");
    fz->add_option("--series-m", series_m, "Series truncation M");

    auto* oracle = app.add_subcommand("oracle", "JSON matrix cross-check");
    add_common(oracle, true);
    oracle->add_option("--grid-n", grid_n, "Grid size n");
    oracle->add_option("--length", length, "Cutoff L");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        cfg.subcommand = app.get_subcommands().front()->get_name();
        const CLI::App* sub = app.get_subcommands().front();
        if (!range.empty()) cfg.range = xpjost::parse_range(range);
        if (sub->count("--mesh")) cfg.mesh = mesh;
        if (sub->get_option_no_throw("--window") && sub->count("--window")) cfg.window = window;
        if (sub->get_option_no_throw("--length") && sub->count("--length")) cfg.length = length;
        if (sub->get_option_no_throw("--series-m") && sub->count("--series-m")) cfg.series_m = series_m;
        if (sub->get_option_no_throw("--grid-n") && sub->count("--grid-n")) cfg.grid_n = grid_n;

        const std::string text = xpjost::run_command(cfg);
        if (cfg.out.empty()) {
            std::cout << text;
        } else {
            std::ofstream out(cfg.out, std::ios::binary);
            if (!out) throw xpjost::ConfigError("cannot write '" + cfg.out + "'");
            out << text;
        }
        return 0;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return xpjost::exit_code_for(e);
    }
}
