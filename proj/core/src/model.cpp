// model.cpp — parameter validation, unit conversion and normal modes
#include "quasirelax/model.hpp"

#include <cmath>
#include <limits>

namespace quasirelax {

namespace {

void check_oscillator(const OscillatorSpec& o, const char* tag) {
    auto fail = [&](const char* what) {
        throw SpecError(std::string(tag) + ": " + what);
    };
    if (!(o.mass > 0)) fail("mass > 0 violated");
    if (!(o.omega0 > 0)) fail("omega0 > 0 violated");
    if (!(o.gamma >= 0)) fail("gamma >= 0 violated");
    if (!(o.temperature >= 0)) fail("temperature >= 0 violated");
    if (!(o.sigma0_sq > 0)) fail("sigma0_sq > 0 violated");
    if (!(o.gamma < o.omega0)) fail("underdamped gamma < omega0 violated");
}

}  // namespace

double friction(const OscillatorSpec& osc) { return 2.0 * osc.mass * osc.gamma; }

double counter_term(const OscillatorSpec& osc, const BathSpec& bath) {
    return 2.0 * friction(osc) * bath.nu_max / M_PI;
}

double ground_variance(const OscillatorSpec& osc, double hbar) {
    return hbar / (2.0 * osc.mass * osc.omega0);
}

double coupling_coefficient(const SystemSpec& s) {
    const auto& a = s.osc1;
    const auto& b = s.osc2;
    return s.lambda / (a.omega0 * std::sqrt(a.mass * b.mass * a.omega0 * b.omega0));
}

double lambda_from_rho(const SystemSpec& s, double rho) {
    const auto& a = s.osc1;
    const auto& b = s.osc2;
    return rho * a.omega0 * std::sqrt(a.mass * b.mass * a.omega0 * b.omega0);
}

void validate(const SystemSpec& s) {
    check_oscillator(s.osc1, "osc1");
    check_oscillator(s.osc2, "osc2");
    if (!(s.bath1.nu_max > 0)) throw SpecError("bath1: nu_max > 0 violated");
    if (!(s.bath2.nu_max > 0)) throw SpecError("bath2: nu_max > 0 violated");
    if (!std::isfinite(s.lambda)) throw SpecError("lambda must be finite");
    if (!(s.hbar > 0) || !(s.k_B > 0)) throw SpecError("hbar, k_B > 0 violated");
    const double w1 = s.osc1.omega0, w2 = s.osc2.omega0;
    if (std::abs(w2 * w2 - w1 * w1) < degenerate_tolerance * w1 * w1)
        throw DegenerateModesError();
    const double c = s.lambda * s.lambda / (s.osc1.mass * s.osc2.mass);
    if (c >= w1 * w1 * w2 * w2) throw OvercriticalCouplingError();
}

WeakCouplingReport validate_weak_coupling(const SystemSpec& s, double kappa) {
    WeakCouplingReport r;
    r.kappa = kappa;
    const double w1 = s.osc1.omega0, w2 = s.osc2.omega0;
    const double rho = std::abs(coupling_coefficient(s));
    const double gap = std::abs(w2 * w2 - w1 * w1) / (2.0 * w1 * w2);
    r.ratio = rho == 0.0 ? std::numeric_limits<double>::infinity() : gap / rho;
    r.pass = r.ratio >= kappa;
    return r;
}

InternalSystem to_internal_units(const SystemSpec& p) {
    InternalSystem out;
    out.scale.mass = p.osc1.mass;
    out.scale.frequency = p.osc1.omega0;
    out.scale.hbar = p.hbar;
    out.scale.k_B = p.k_B;
    const auto& sc = out.scale;

    auto conv = [&](const OscillatorSpec& o) {
        OscillatorSpec r;
        r.mass = o.mass / sc.mass;
        r.omega0 = o.omega0 / sc.frequency;
        r.gamma = o.gamma / sc.frequency;
        r.temperature = o.temperature / sc.temperature();
        r.sigma0_sq = o.sigma0_sq / sc.length_sq();
        return r;
    };
    SystemSpec& s = out.spec;
    s.osc1 = conv(p.osc1);
    s.osc2 = conv(p.osc2);
    s.bath1.nu_max = p.bath1.nu_max / sc.frequency;
    s.bath2.nu_max = p.bath2.nu_max / sc.frequency;
    s.lambda = p.lambda / sc.stiffness();
    s.hbar = 1.0;
    s.k_B = 1.0;
    return out;
}

SystemSpec from_internal_units(const InternalSystem& in) {
    const auto& sc = in.scale;
    auto conv = [&](const OscillatorSpec& o) {
        OscillatorSpec r;
        r.mass = o.mass * sc.mass;
        r.omega0 = o.omega0 * sc.frequency;
        r.gamma = o.gamma * sc.frequency;
        r.temperature = o.temperature * sc.temperature();
        r.sigma0_sq = o.sigma0_sq * sc.length_sq();
        return r;
    };
    SystemSpec p;
    p.osc1 = conv(in.spec.osc1);
    p.osc2 = conv(in.spec.osc2);
    p.bath1.nu_max = in.spec.bath1.nu_max * sc.frequency;
    p.bath2.nu_max = in.spec.bath2.nu_max * sc.frequency;
    p.lambda = in.spec.lambda * sc.stiffness();
    p.hbar = sc.hbar;
    p.k_B = sc.k_B;
    return p;
}

NormalModes derive_normal_modes(const SystemSpec& s) {
    validate(s);
    const double M1 = s.osc1.mass, M2 = s.osc2.mass;
    const double w1s = s.osc1.omega0 * s.osc1.omega0;
    const double w2s = s.osc2.omega0 * s.osc2.omega0;
    const double g1 = s.osc1.gamma, g2 = s.osc2.gamma;
    const double lam = s.lambda;
    const double c = lam * lam / (M1 * M2);
    const double Delta = w2s - w1s;
    const double sgn = Delta > 0 ? 1.0 : -1.0;
    const double h = std::abs(Delta) / 2.0;
    // Level shift written without the cancelling difference h - sqrt(h^2 + c).
    const double q = c / (h + std::sqrt(h * h + c));

    NormalModes m;
    m.lambda = lam;
    m.rho = coupling_coefficient(s);
    const double O1s = w1s - sgn * q;
    const double O2s = w2s + sgn * q;
    m.Omega1 = std::sqrt(O1s);
    m.Omega2 = std::sqrt(O2s);

    // Mode 1: a = Omega1^2 - w01^2, b = Omega1^2 - w02^2.
    const double a1 = -sgn * q, b1 = -Delta - sgn * q;
    m.delta1 = (b1 * g1 + a1 * g2) / (a1 + b1);
    m.r1 = (lam / M2) / (-b1);
    // Mode 2: a = Omega2^2 - w02^2, b = Omega2^2 - w01^2.
    const double a2 = sgn * q, b2 = Delta + sgn * q;
    m.delta2 = (a2 * g1 + b2 * g2) / (a2 + b2);
    m.r2 = (lam / M1) / (-b2);
    return m;
}

NormalModes linearized_modes(const SystemSpec& s) {
    validate(s);
    const double w1s = s.osc1.omega0 * s.osc1.omega0;
    const double w2s = s.osc2.omega0 * s.osc2.omega0;
    NormalModes m;
    m.lambda = s.lambda;
    m.rho = coupling_coefficient(s);
    m.Omega1 = s.osc1.omega0;
    m.Omega2 = s.osc2.omega0;
    m.delta1 = s.osc1.gamma;
    m.delta2 = s.osc2.gamma;
    m.r1 = s.lambda / (s.osc2.mass * (w2s - w1s));
    m.r2 = -s.lambda / (s.osc1.mass * (w2s - w1s));
    return m;
}

}  // namespace quasirelax
