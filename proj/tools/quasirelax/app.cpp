// app.cpp — configuration parsing, presets, simulate/figure/oracle runs
#include "app.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <thread>

namespace quasirelax::app {

namespace fs = std::filesystem;
using nlohmann::json;

bool RunConfig::wants(const std::string& f) const {
    return std::find(formats.begin(), formats.end(), f) != formats.end();
}

namespace {

void reject_unknown(const json& j, std::initializer_list<const char*> keys, const std::string& where) {
    if (!j.is_object()) throw ConfigError(where + ": expected an object");
    std::set<std::string> ok(keys.begin(), keys.end());
    for (auto it = j.begin(); it != j.end(); ++it)
        if (!ok.count(it.key())) throw ConfigError(where + ": unknown key '" + it.key() + "'");
}

template <class T>
void read(const json& j, const char* key, T& dst, const std::string& where) {
    if (!j.contains(key)) return;
    try {
        dst = j.at(key).get<T>();
    } catch (const json::exception&) {
        throw ConfigError(where + "." + key + ": wrong type");
    }
}

OscillatorInput read_osc(const json& j, OscillatorInput o, const std::string& where) {
    reject_unknown(j, {"mass", "omega0", "gamma", "temperature", "sigma0_factor", "sigma0_sq"}, where);
    read(j, "mass", o.mass, where);
    read(j, "omega0", o.omega0, where);
    read(j, "gamma", o.gamma, where);
    read(j, "temperature", o.temperature, where);
    read(j, "sigma0_factor", o.sigma0_factor, where);
    if (j.contains("sigma0_sq")) {
        if (j["sigma0_sq"].is_null()) o.sigma0_sq.reset();
        else o.sigma0_sq = j["sigma0_sq"].get<double>();
    }
    return o;
}

json osc_json(const OscillatorInput& o) {
    json j{{"mass", o.mass}, {"omega0", o.omega0}, {"gamma", o.gamma},
           {"temperature", o.temperature}, {"sigma0_factor", o.sigma0_factor}};
    j["sigma0_sq"] = o.sigma0_sq ? json(*o.sigma0_sq) : json(nullptr);
    return j;
}

// json numbers cannot hold inf; store them as strings.
json num(double v) { return std::isfinite(v) ? json(v) : json(format_double(v)); }

void write_text(const fs::path& file, const std::string& text) {
    std::ofstream os(file, std::ios::binary);
    if (!os) throw std::runtime_error("cannot open " + file.string() + " for writing");
    os << text;
    if (!os) throw std::runtime_error("write failed: " + file.string());
}

RunConfig base_config(const std::string& name) {
    RunConfig c;
    c.name = name;
    c.formats = {"csv", "json", "svg"};
    return c;
}

}  // namespace

RunConfig config_from_json(const json& j, RunConfig c) {
    reject_unknown(j, {"preset", "name", "osc1", "osc2", "nu_max", "rho", "lambda", "grid", "quadrature",
                       "force", "naive", "threads", "oracle", "outputs"},
                   "config");
    read(j, "name", c.name, "config");
    if (j.contains("osc1")) c.osc1 = read_osc(j["osc1"], c.osc1, "osc1");
    if (j.contains("osc2")) c.osc2 = read_osc(j["osc2"], c.osc2, "osc2");
    if (j.contains("nu_max")) {
        const auto& v = j["nu_max"];
        if (v.is_number()) c.nu_max1 = c.nu_max2 = v.get<double>();
        else if (v.is_array() && v.size() == 2) c.nu_max1 = v[0].get<double>(), c.nu_max2 = v[1].get<double>();
        else throw ConfigError("config.nu_max: expected a number or a pair");
    }
    if (j.contains("rho")) {
        c.rho = j["rho"].get<double>();
        c.lambda.reset();
    }
    if (j.contains("lambda")) {
        c.lambda = j["lambda"].get<double>();
        c.rho.reset();
    }
    if (j.contains("grid")) {
        const auto& g = j["grid"];
        reject_unknown(g, {"t_max", "points", "log"}, "grid");
        read(g, "t_max", c.t_max, "grid");
        read(g, "points", c.points, "grid");
        read(g, "log", c.log_grid, "grid");
    }
    if (j.contains("quadrature")) {
        const auto& q = j["quadrature"];
        reject_unknown(q, {"rel_tol", "abs_tol", "max_panels"}, "quadrature");
        read(q, "rel_tol", c.quad.omega_rel_tol, "quadrature");
        read(q, "abs_tol", c.quad.omega_abs_tol, "quadrature");
        read(q, "max_panels", c.quad.max_panels, "quadrature");
    }
    read(j, "force", c.force, "config");
    read(j, "naive", c.naive, "config");
    read(j, "threads", c.threads, "config");
    if (j.contains("oracle")) {
        const auto& o = j["oracle"];
        reject_unknown(o, {"enabled", "modes", "grid", "method", "variance_threshold", "cross_threshold"},
                       "oracle");
        read(o, "enabled", c.oracle.enabled, "oracle");
        read(o, "modes", c.oracle.modes, "oracle");
        if (o.contains("grid")) {
            const auto g = o["grid"].get<std::string>();
            if (g == "resonant") c.oracle.grid = BathGrid::resonant;
            else if (g == "uniform") c.oracle.grid = BathGrid::uniform;
            else throw ConfigError("oracle.grid: expected 'resonant' or 'uniform'");
        }
        if (o.contains("method")) {
            const auto m = o["method"].get<std::string>();
            if (m == "normal_modes") c.oracle.method = Propagation::normal_modes;
            else if (m == "expm") c.oracle.method = Propagation::expm;
            else throw ConfigError("oracle.method: expected 'normal_modes' or 'expm'");
        }
        read(o, "variance_threshold", c.oracle.thresholds.variance, "oracle");
        read(o, "cross_threshold", c.oracle.thresholds.cross, "oracle");
    }
    if (j.contains("outputs")) {
        const auto& o = j["outputs"];
        reject_unknown(o, {"directory", "formats"}, "outputs");
        if (o.contains("directory")) c.out = o["directory"].get<std::string>();
        read(o, "formats", c.formats, "outputs");
    }
    return c;
}

RunConfig load_config(const fs::path& file) {
    std::ifstream is(file);
    if (!is) throw ConfigError("cannot read config file " + file.string());
    json j;
    try {
        j = json::parse(is, nullptr, true, true);
    } catch (const json::parse_error& e) {
        throw ConfigError(file.string() + ": " + e.what());
    }
    RunConfig base;
    if (j.contains("preset")) {
        const auto fig = preset(j["preset"].get<std::string>());
        if (fig.runs.size() != 1)
            throw ConfigError("preset '" + fig.name + "' is a sweep; run it with the figure command");
        base = fig.runs.front();
    }
    return config_from_json(j, base);
}

json config_to_json(const RunConfig& c) {
    json j;
    j["name"] = c.name;
    j["osc1"] = osc_json(c.osc1);
    j["osc2"] = osc_json(c.osc2);
    j["nu_max"] = {c.nu_max1, c.nu_max2};
    if (c.lambda) j["lambda"] = *c.lambda;
    else if (c.rho) j["rho"] = *c.rho;
    j["grid"] = {{"t_max", c.t_max}, {"points", c.points}, {"log", c.log_grid}};
    j["quadrature"] = {{"rel_tol", c.quad.omega_rel_tol},
                       {"abs_tol", c.quad.omega_abs_tol},
                       {"max_panels", c.quad.max_panels}};
    j["force"] = c.force;
    j["naive"] = c.naive;
    j["threads"] = c.threads;
    j["oracle"] = {{"enabled", c.oracle.enabled},
                   {"modes", c.oracle.modes},
                   {"grid", c.oracle.grid == BathGrid::resonant ? "resonant" : "uniform"},
                   {"method", c.oracle.method == Propagation::expm ? "expm" : "normal_modes"},
                   {"variance_threshold", c.oracle.thresholds.variance},
                   {"cross_threshold", c.oracle.thresholds.cross}};
    j["outputs"] = {{"directory", c.out.string()}, {"formats", c.formats}};
    return j;
}

SystemSpec physical_spec(const RunConfig& c) {
    SystemSpec s;
    s.hbar = units::hbar;
    s.k_B = units::k_B;
    auto fill = [&](const OscillatorInput& in, OscillatorSpec& o) {
        o.mass = in.mass;
        o.omega0 = in.omega0;
        o.gamma = in.gamma;
        o.temperature = in.temperature;
        o.sigma0_sq = in.sigma0_sq ? *in.sigma0_sq : in.sigma0_factor * ground_variance(o, s.hbar);
    };
    fill(c.osc1, s.osc1);
    fill(c.osc2, s.osc2);
    s.bath1.nu_max = c.nu_max1 * c.osc1.omega0;
    s.bath2.nu_max = c.nu_max2 * c.osc1.omega0;
    if (c.lambda) s.lambda = *c.lambda;
    else if (c.rho) s.lambda = lambda_from_rho(s, *c.rho);
    return s;
}

void check(const RunConfig& c) {
    if (c.points < 2) throw ConfigError("grid.points must be >= 2");
    if (!(c.t_max > 0)) throw ConfigError("grid.t_max must be > 0");
    if (c.formats.empty()) throw ConfigError("outputs.formats must name at least one format");
    for (const auto& f : c.formats)
        if (f != "csv" && f != "json" && f != "svg") throw ConfigError("unknown output format '" + f + "'");
    if (c.oracle.modes < 1) throw ConfigError("oracle.modes must be >= 1");
    const auto s = physical_spec(c);
    validate(s);
    if (!c.force) {
        const auto wc = validate_weak_coupling(s);
        if (!wc.pass) {
            std::ostringstream os;
            os << "weak-coupling condition violated: |w02^2 - w01^2| / (2 w01 w02 rho) = " << wc.ratio
               << " < kappa = " << wc.kappa << " (use --force to override)";
            throw SpecError(os.str());
        }
    }
}

std::vector<double> time_grid(const RunConfig& c) {
    const auto in = to_internal_units(physical_spec(c));
    const double tmax = c.t_max / in.spec.osc1.gamma;
    std::vector<double> g(c.points);
    if (c.log_grid) {
        // t = 0, then geometric from 1e-3 / omega01.
        const double t0 = std::min(1e-3, tmax / 10);
        g[0] = 0.0;
        for (int i = 1; i < c.points; ++i)
            g[i] = c.points == 2 ? tmax : t0 * std::pow(tmax / t0, double(i - 1) / (c.points - 2));
    } else {
        for (int i = 0; i < c.points; ++i) g[i] = tmax * i / (c.points - 1);
    }
    return g;
}

int resolve_threads(int requested) {
    int n = requested > 0 ? requested : static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
    if (const char* cap = std::getenv("QUASIRELAX_THREADS")) {
        char* end = nullptr;
        const long v = std::strtol(cap, &end, 10);
        if (end != cap && v > 0) n = std::min<int>(n, static_cast<int>(v));
    }
    return n;
}

const std::vector<std::string>& preset_names() {
    static const std::vector<std::string> names{"fig2a", "fig2b", "fig3a", "fig3b", "fig4a",
                                                "fig4b", "fig5a", "fig5b", "fig6"};
    return names;
}

FigureRun preset(const std::string& name) {
    FigureRun f;
    f.name = name;
    auto pair = [&](double T1, double T2, double k1, double k2) {
        RunConfig c = base_config(name);
        c.osc1.temperature = T1;
        c.osc2.temperature = T2;
        c.osc1.sigma0_factor = k1;
        c.osc2.sigma0_factor = k2;
        c.notes["rho"] = "not stated for this figure; variances do not depend on it";
        return c;
    };
    if (name == "fig2a") f.runs = {pair(300, 300, 1, 1)};
    else if (name == "fig2b") f.runs = {pair(300, 300, 1, 10)};
    else if (name == "fig3a") f.runs = {pair(200, 700, 1, 1)};
    else if (name == "fig3b") f.runs = {pair(200, 700, 1, 10)};
    else if (name == "fig4a") f.runs = {pair(0, 0, 1, 1)};
    else if (name == "fig4b") f.runs = {pair(0, 0, 2, 0.5)};
    else if (name == "fig5a" || name == "fig5b") {
        f.series_key = "temperature";
        for (double T : {10.0, 100.0, 300.0, 1000.0}) {
            RunConfig c = pair(T, T, 1, 1);
            c.osc2 = {5e-23, 3e13, 3e11, T, 1.0, std::nullopt};
            c.name = "T" + std::to_string(static_cast<int>(T));
            f.runs.push_back(c);
        }
    } else if (name == "fig6") {
        f.series_key = "rho";
        for (double r : {0.01, 0.02, 0.05}) {
            RunConfig c = pair(200, 700, 1, 1);
            c.rho = r;
            std::ostringstream os;
            os << "rho" << r;
            c.name = os.str();
            c.notes["rho"] = "sweep {0.01, 0.02, 0.05} chosen inside the weak-coupling window; "
                             "the figure inserts give no values";
            f.runs.push_back(c);
        }
    } else {
        std::string all;
        for (const auto& n : preset_names()) all += (all.empty() ? "" : ", ") + n;
        throw ConfigError("unknown preset '" + name + "' (expected one of: " + all + ")");
    }
    return f;
}

std::string format_double(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    if (v == 0.0) return "0";
    char buf[64];
    const auto r = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 17);
    return std::string(buf, r.ptr);
}

void write_trajectory_csv(const fs::path& file, const Trajectory& tr, const units::Scale& sc,
                          double gamma1) {
    std::string out =
        "t,t_gamma1,sigma1_sq,sigma2_sq,beta12,sigma1_norm,sigma2_norm,beta12_norm,x1x2_moment\n";
    const double L = sc.length_sq();
    for (std::size_t i = 0; i < tr.grid.size(); ++i) {
        const auto& s = tr.states[i];
        const double fields[] = {tr.grid[i] * sc.time(),
                                 tr.grid[i] * gamma1,
                                 s.sigma1_sq * L,
                                 s.sigma2_sq * L,
                                 s.beta12() * L,
                                 tr.sigma1_norm(i),
                                 tr.sigma2_norm(i),
                                 tr.beta12_norm(i),
                                 tr.x1x2(i) * L};
        for (std::size_t k = 0; k < std::size(fields); ++k) {
            if (k) out += ',';
            out += format_double(fields[k]);
        }
        out += '\n';
    }
    write_text(file, out);
}

void write_comparison_csv(const fs::path& file, const ErrorReport& rep, const units::Scale& sc) {
    std::string out =
        "t,analytic_x1x1,oracle_x1x1,rel_err_x1x1,analytic_x2x2,oracle_x2x2,rel_err_x2x2,"
        "analytic_x1x2,oracle_x1x2,abs_err_x1x2,in_window\n";
    const double L = sc.length_sq();
    for (const auto& r : rep.rows) {
        const double f[] = {r.t * sc.time(), r.a11 * L, r.o11 * L, r.e11, r.a22 * L, r.o22 * L,
                            r.e22, r.a12 * L, r.o12 * L, std::abs(r.a12 - r.o12) * L};
        for (double v : f) out += format_double(v) + ',';
        out += r.in_window ? "1\n" : "0\n";
    }
    write_text(file, out);
}

namespace {

json modes_json(const NormalModes& m, const units::Scale& sc) {
    return {{"Omega1", m.Omega1 * sc.frequency}, {"Omega2", m.Omega2 * sc.frequency},
            {"delta1", m.delta1 * sc.frequency}, {"delta2", m.delta2 * sc.frequency},
            {"r1", m.r1}, {"r2", m.r2}, {"rho", m.rho},
            {"lambda", m.lambda * sc.stiffness()}};
}

SvgChart variance_chart(const std::string& title, const std::vector<const Trajectory*>& trs,
                        const std::vector<std::string>& labels, double gamma1, int which) {
    SvgChart ch;
    ch.title = title;
    ch.xlabel = "gamma1 t";
    ch.ylabel = which == 3 ? "normalized correlation" : "sigma^2 / sigma^2(FDT)";
    for (std::size_t k = 0; k < trs.size(); ++k) {
        const auto& tr = *trs[k];
        for (int osc : {1, 2}) {
            if (which != 0 && which != osc && !(which == 3 && osc == 1)) continue;
            SvgSeries s;
            s.label = labels[k] + (which == 3 ? "" : (osc == 1 ? " osc 1" : " osc 2"));
            for (std::size_t i = 0; i < tr.grid.size(); ++i) {
                s.x.push_back(tr.grid[i] * gamma1);
                s.y.push_back(which == 3 ? tr.beta12_norm(i) : osc == 1 ? tr.sigma1_norm(i) : tr.sigma2_norm(i));
            }
            ch.series.push_back(std::move(s));
        }
    }
    return ch;
}

}  // namespace

SimulateResult run_simulate(const RunConfig& c) {
    check(c);
    SimulateResult res;
    res.system = to_internal_units(physical_spec(c));
    const auto grid = time_grid(c);
    DensityOptions opt;
    opt.quad = c.quad;
    opt.naive = c.naive;
    const int threads = resolve_threads(c.threads);
    res.trajectory = trajectory(res.system.spec, grid, opt, threads);
    const auto& tr = res.trajectory;
    const auto& sc = res.system.scale;
    const double g1 = res.system.spec.osc1.gamma;

    fs::create_directories(c.out);
    if (c.wants("csv")) {
        write_trajectory_csv(c.out / "trajectory.csv", tr, sc, g1);
        res.files.push_back((c.out / "trajectory.csv").string());
    }
    // meta.json is always written so every output directory is reproducible.
    {
        double max_err = 0;
        for (const auto& s : tr.states) max_err = std::max(max_err, s.abs_error);
        const auto phys = physical_spec(c);
        const auto wc = validate_weak_coupling(phys);
        json m;
        m["tool"] = "quasirelax";
        m["version"] = version;
        m["config"] = config_to_json(c);
        m["notes"] = c.notes;
        m["spec"] = {{"hbar", phys.hbar}, {"k_B", phys.k_B}, {"lambda", phys.lambda},
                     {"sigma0_sq", {phys.osc1.sigma0_sq, phys.osc2.sigma0_sq}},
                     {"nu_max", {phys.bath1.nu_max, phys.bath2.nu_max}}};
        m["normal_modes_exact"] = modes_json(derive_normal_modes(res.system.spec), sc);
        m["normal_modes_used"] = modes_json(density_modes(res.system.spec, opt.modes), sc);
        m["weak_coupling"] = {{"ratio", num(wc.ratio)}, {"kappa", wc.kappa}, {"pass", wc.pass}};
        m["sigma_fdt"] = {tr.sigma1_fdt * sc.length_sq(), tr.sigma2_fdt * sc.length_sq()};
        m["quadrature"] = {{"max_abs_error_internal", max_err}};
        m["units"] = {{"t", "s"}, {"sigma_sq", "cm^2"}, {"beta12", "cm^2"}, {"x1x2_moment", "cm^2"}};
        m["threads"] = threads;
        m["wall_seconds"] = tr.wall_seconds;
        write_text(c.out / "meta.json", m.dump(2) + "\n");
        res.files.push_back((c.out / "meta.json").string());
    }
    if (c.wants("svg")) {
        write_text(c.out / "variances.svg", render_svg(variance_chart(c.name, {&tr}, {c.name}, g1, 0)));
        res.files.push_back((c.out / "variances.svg").string());
    }
    return res;
}

OracleCompareResult run_oracle_compare(const RunConfig& c) {
    if (!c.oracle.enabled) throw ConfigError("oracle not enabled (set oracle.enabled = true)");
    check(c);
    const auto in = to_internal_units(physical_spec(c));
    const auto grid = time_grid(c);
    DensityOptions opt;
    opt.quad = c.quad;
    opt.naive = c.naive;
    const int threads = resolve_threads(c.threads);
    const auto tr = trajectory(in.spec, grid, opt, threads);
    OracleConfig oc;
    oc.bath.modes = c.oracle.modes;
    oc.bath.grid = c.oracle.grid;
    oc.method = c.oracle.method;
    oc.threads = threads;
    const auto run = run_oracle(in.spec, grid, oc);

    OracleCompareResult res;
    res.report = compare(tr, run, c.oracle.thresholds);
    res.passed = res.report.variance_pass() && res.report.cross_pass();
    fs::create_directories(c.out);
    write_comparison_csv(c.out / "oracle_compare.csv", res.report, in.scale);
    const auto& r = res.report;
    json j;
    j["tool"] = "quasirelax";
    j["version"] = version;
    j["config"] = config_to_json(c);
    j["window"] = {{"t_rec", run.t_rec * in.scale.time()},
                   {"t_rec_coarse", run.t_rec_coarse * in.scale.time()},
                   {"valid_until", r.window_end * in.scale.time()}};
    j["errors"] = {{"max_rel_x1x1", r.max_err_var1}, {"max_rel_x2x2", r.max_err_var2},
                   {"mean_rel_x1x1", r.mean_err_var1}, {"mean_rel_x2x2", r.mean_err_var2},
                   {"cross_rel", r.cross_rel}, {"cross_sign_agrees", r.cross_sign_agrees}};
    j["thresholds"] = {{"variance", r.thresholds.variance}, {"cross", r.thresholds.cross}};
    j["pass"] = {{"variance", r.variance_pass()}, {"cross", r.cross_pass()}, {"overall", res.passed}};
    j["warnings"] = run.warnings;
    j["notes"] = {{"initial_momentum",
                   "system starts in the minimum-uncertainty Gaussian, momentum variance hbar^2 / 4 sigma0^2"}};
    write_text(c.out / "oracle_report.json", j.dump(2) + "\n");
    res.files = {(c.out / "oracle_compare.csv").string(), (c.out / "oracle_report.json").string()};
    return res;
}

FigureResult run_figure(const FigureRun& fig, const fs::path& out) {
    FigureResult res;
    const fs::path dir = out / fig.name;
    for (auto c : fig.runs) {
        c.out = fig.runs.size() == 1 ? dir : dir / c.name;
        auto r = run_simulate(c);
        res.files.insert(res.files.end(), r.files.begin(), r.files.end());
        res.runs.push_back(std::move(r));
    }
    if (fig.runs.size() > 1 && fig.runs.front().wants("svg")) {
        std::vector<const Trajectory*> trs;
        std::vector<std::string> labels;
        for (std::size_t k = 0; k < res.runs.size(); ++k) {
            trs.push_back(&res.runs[k].trajectory);
            labels.push_back(fig.runs[k].name);
        }
        const int which = fig.name == "fig5a" ? 1 : fig.name == "fig5b" ? 2 : fig.name == "fig6" ? 3 : 0;
        const double g1 = res.runs.front().system.spec.osc1.gamma;
        const auto file = dir / (fig.name + ".svg");
        write_text(file, render_svg(variance_chart(fig.name, trs, labels, g1, which)));
        res.files.push_back(file.string());
    }
    return res;
}

std::string render_svg(const SvgChart& ch) {
    const double W = 720, H = 460, l = 70, r = 170, t = 40, b = 50;
    const double pw = W - l - r, ph = H - t - b;
    double x0 = INFINITY, x1 = -INFINITY, y0 = INFINITY, y1 = -INFINITY;
    for (const auto& s : ch.series)
        for (std::size_t i = 0; i < s.x.size(); ++i) {
            if (!std::isfinite(s.y[i]) || (ch.log_x && !(s.x[i] > 0))) continue;
            x0 = std::min(x0, s.x[i]), x1 = std::max(x1, s.x[i]);
            y0 = std::min(y0, s.y[i]), y1 = std::max(y1, s.y[i]);
        }
    if (!std::isfinite(x0)) x0 = 0, x1 = 1, y0 = 0, y1 = 1;
    if (y1 - y0 < 1e-12 * std::max(1.0, std::abs(y1))) y0 -= 0.5, y1 += 0.5;
    const double pad = 0.05 * (y1 - y0);
    y0 -= pad, y1 += pad;
    if (x1 <= x0) x1 = x0 + 1;
    auto fx = [&](double x) {
        const double u = ch.log_x ? (std::log10(x) - std::log10(x0)) / (std::log10(x1) - std::log10(x0))
                                  : (x - x0) / (x1 - x0);
        return l + u * pw;
    };
    auto fy = [&](double y) { return t + (1 - (y - y0) / (y1 - y0)) * ph; };
    auto fmt = [](double v) {
        std::ostringstream os;
        os.imbue(std::locale::classic());
        os.precision(4);
        os << v;
        return os.str();
    };
    std::ostringstream os;
    os.imbue(std::locale::classic());
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H
       << "\" font-family=\"sans-serif\" font-size=\"12\">\n"
       << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
       << "<text x=\"" << l << "\" y=\"24\" font-size=\"15\">" << ch.title << "</text>\n"
       << "<rect x=\"" << l << "\" y=\"" << t << "\" width=\"" << pw << "\" height=\"" << ph
       << "\" fill=\"none\" stroke=\"black\"/>\n";
    for (int k = 0; k <= 5; ++k) {
        const double yv = y0 + (y1 - y0) * k / 5;
        os << "<text x=\"" << l - 6 << "\" y=\"" << fy(yv) + 4 << "\" text-anchor=\"end\">" << fmt(yv)
           << "</text>\n";
        double xv = ch.log_x ? std::pow(10.0, std::log10(x0) + (std::log10(x1) - std::log10(x0)) * k / 5)
                             : x0 + (x1 - x0) * k / 5;
        os << "<text x=\"" << fx(xv) << "\" y=\"" << t + ph + 18 << "\" text-anchor=\"middle\">" << fmt(xv)
           << "</text>\n";
    }
    os << "<text x=\"" << l + pw / 2 << "\" y=\"" << H - 10 << "\" text-anchor=\"middle\">" << ch.xlabel
       << "</text>\n"
       << "<text x=\"16\" y=\"" << t + ph / 2 << "\" transform=\"rotate(-90 16 " << t + ph / 2
       << ")\" text-anchor=\"middle\">" << ch.ylabel << "</text>\n";
    static const char* colors[] = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd", "#8c564b",
                                   "#e377c2", "#17becf"};
    for (std::size_t k = 0; k < ch.series.size(); ++k) {
        const auto& s = ch.series[k];
        const char* col = colors[k % std::size(colors)];
        os << "<polyline fill=\"none\" stroke=\"" << col << "\" stroke-width=\"1.5\" points=\"";
        for (std::size_t i = 0; i < s.x.size(); ++i) {
            if (!std::isfinite(s.y[i]) || (ch.log_x && !(s.x[i] > 0))) continue;
            os << fx(s.x[i]) << ',' << fy(s.y[i]) << ' ';
        }
        os << "\"/>\n";
        const double ly = t + 16 + 18 * k;
        os << "<line x1=\"" << W - r + 12 << "\" y1=\"" << ly << "\" x2=\"" << W - r + 36 << "\" y2=\"" << ly
           << "\" stroke=\"" << col << "\" stroke-width=\"2\"/>\n"
           << "<text x=\"" << W - r + 42 << "\" y=\"" << ly + 4 << "\">" << s.label << "</text>\n";
    }
    os << "</svg>\n";
    return os.str();
}

}  // namespace quasirelax::app
