// main.cpp — quasirelax command-line entry point
#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>

#include "app.hpp"

using namespace quasirelax;

namespace {

struct Overrides {
    std::optional<std::string> out;
    std::optional<double> tmax, rho, temp1, temp2, nu_max;
    std::optional<int> points;
    bool force = false, naive = false;

    void attach(CLI::App* cmd) {
        cmd->add_option("--out", out, "Output directory");
        cmd->add_option("--tmax", tmax, "Final time in units of 1/gamma1");
        cmd->add_option("--points", points, "Number of grid points");
        cmd->add_option("--rho", rho, "Dimensionless coupling coefficient");
        cmd->add_option("--temp1", temp1, "Bath 1 temperature [K]");
        cmd->add_option("--temp2", temp2, "Bath 2 temperature [K]");
        cmd->add_option("--nu-max", nu_max, "Bath cutoff in units of omega01");
        cmd->add_flag("--force", force, "Skip the weak-coupling gate");
        cmd->add_flag("--naive", naive, "Evaluate the literal table formulas");
    }

    void apply(app::RunConfig& c) const {
        if (tmax) c.t_max = *tmax;
        if (points) c.points = *points;
        if (rho) c.rho = *rho, c.lambda.reset();
        if (temp1) c.osc1.temperature = *temp1;
        if (temp2) c.osc2.temperature = *temp2;
        if (nu_max) c.nu_max1 = c.nu_max2 = *nu_max;
        if (force) c.force = true;
        if (naive) c.naive = true;
    }
};

void list(const std::vector<std::string>& files) {
    for (const auto& f : files) std::cout << f << '\n';
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App cli{"Relaxation of two coupled damped quantum oscillators with separate thermal baths"};
    cli.require_subcommand(1);
    cli.set_version_flag("--version", app::version);

    std::string config, preset_name, figure_name;
    Overrides sim_o, fig_o, orc_o;

    auto* sim = cli.add_subcommand("simulate", "Compute a trajectory from a config file or preset");
    sim->add_option("--config", config, "JSON config file");
    sim->add_option("--preset", preset_name, "Start from a single-run figure preset");
    sim_o.attach(sim);

    auto* fig = cli.add_subcommand("figure", "Run a figure preset");
    fig->add_option("name", figure_name, "Preset name")->required();
    fig_o.attach(fig);

    auto* orc = cli.add_subcommand("oracle-compare", "Compare against the discretized-bath oracle");
    orc->add_option("--config", config, "JSON config file")->required();
    orc_o.attach(orc);

    CLI11_PARSE(cli, argc, argv);

    try {
        if (*sim) {
            app::RunConfig c;
            if (!preset_name.empty()) {
                auto f = app::preset(preset_name);
                if (f.runs.size() != 1) throw app::ConfigError("preset '" + preset_name + "' is a sweep; use figure");
                c = f.runs.front();
            }
            if (!config.empty()) {
                c = preset_name.empty() ? app::load_config(config)
                                        : app::config_from_json(nlohmann::json::parse(std::ifstream(config)), c);
            }
            sim_o.apply(c);
            if (sim_o.out) c.out = *sim_o.out;
            list(app::run_simulate(c).files);
            return 0;
        }
        if (*fig) {
            auto f = app::preset(figure_name);
            for (auto& c : f.runs) fig_o.apply(c);
            list(app::run_figure(f, fig_o.out ? *fig_o.out : "out").files);
            return 0;
        }
        if (*orc) {
            auto c = app::load_config(config);
            orc_o.apply(c);
            if (orc_o.out) c.out = *orc_o.out;
            const auto r = app::run_oracle_compare(c);
            list(r.files);
            const auto& e = r.report;
            std::cout << "max rel err x1x1 " << e.max_err_var1 << ", x2x2 " << e.max_err_var2 << ", cross "
                      << e.cross_rel << (e.cross_sign_agrees ? "" : " (sign mismatch)") << " -> "
                      << (r.passed ? "PASS" : "FAIL") << '\n';
            return r.passed ? 0 : 2;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
