// app.hpp — run configuration, figure presets and output writers for the CLI
#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "quasirelax/density.hpp"
#include "quasirelax/model.hpp"
#include "quasirelax/oracle.hpp"

namespace quasirelax::app {

inline constexpr const char* version = "0.1.0";

// Oscillator in physical units: g, rad/s, K. The initial variance is given as
// a multiple of hbar / 2 M omega0 unless sigma0_sq [cm^2] is set.
struct OscillatorInput {
    double mass = 1e-23;
    double omega0 = 1e13;
    double gamma = 1e11;
    double temperature = 300.0;
    double sigma0_factor = 1.0;
    std::optional<double> sigma0_sq;
};

struct RunConfig {
    std::string name = "run";
    OscillatorInput osc1;
    OscillatorInput osc2{3e-23, 2e13, 2e11, 300.0, 1.0, std::nullopt};
    double nu_max1 = 50.0;  // multiples of omega01
    double nu_max2 = 50.0;
    std::optional<double> rho = 0.02;
    std::optional<double> lambda;  // g / s^2, overrides rho
    double t_max = 10.0;           // multiples of 1/gamma1
    int points = 201;
    bool log_grid = false;
    QuadratureConfig quad;
    bool force = false;
    bool naive = false;
    int threads = 0;  // 0: QUASIRELAX_THREADS or hardware concurrency
    struct Oracle {
        bool enabled = false;
        int modes = 400;
        BathGrid grid = BathGrid::resonant;
        Propagation method = Propagation::normal_modes;
        ComparisonThresholds thresholds;
    } oracle;
    std::filesystem::path out = "out";
    std::vector<std::string> formats{"csv", "json"};
    nlohmann::json notes = nlohmann::json::object();

    bool wants(const std::string& f) const;
};

class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Unknown keys are rejected so typos do not pass silently.
RunConfig config_from_json(const nlohmann::json& j, RunConfig base = {});
RunConfig load_config(const std::filesystem::path& file);
nlohmann::json config_to_json(const RunConfig& c);
void check(const RunConfig& c);

SystemSpec physical_spec(const RunConfig& c);
std::vector<double> time_grid(const RunConfig& c);  // internal units (1/omega01)
int resolve_threads(int requested);

const std::vector<std::string>& preset_names();
// A figure run is one or more configs written to sub-directories.
struct FigureRun {
    std::string name;
    std::vector<RunConfig> runs;
    std::string series_key;  // "", "temperature" or "rho"
};
FigureRun preset(const std::string& name);

struct SimulateResult {
    Trajectory trajectory;
    InternalSystem system;
    std::vector<std::string> files;
};
SimulateResult run_simulate(const RunConfig& c);

struct OracleCompareResult {
    ErrorReport report;
    bool passed = false;
    std::vector<std::string> files;
};
OracleCompareResult run_oracle_compare(const RunConfig& c);

struct FigureResult {
    std::vector<SimulateResult> runs;
    std::vector<std::string> files;
};
// Each run goes to out/<figure>/<run name> when the figure has several runs.
FigureResult run_figure(const FigureRun& fig, const std::filesystem::path& out);

// Writers.
std::string format_double(double v);  // 17 significant digits, "inf"/"-inf"/"nan"
void write_trajectory_csv(const std::filesystem::path& file, const Trajectory& tr,
                          const units::Scale& scale, double gamma1_internal);
void write_comparison_csv(const std::filesystem::path& file, const ErrorReport& rep,
                          const units::Scale& scale);

struct SvgSeries {
    std::string label;
    std::vector<double> x, y;
};
struct SvgChart {
    std::string title, xlabel, ylabel;
    bool log_x = false;
    std::vector<SvgSeries> series;
};
std::string render_svg(const SvgChart& chart);

}  // namespace quasirelax::app
