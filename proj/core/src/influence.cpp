// influence.cpp — omega quadratures of the bath kernels
#include "quasirelax/influence.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace quasirelax {

using cplx = std::complex<double>;

double coth_stable(double x) {
    const double ax = std::abs(x);
    if (ax < 1e-4) return 1.0 / x + x / 3.0;
    if (ax > 20.0) return x > 0 ? 1.0 : -1.0;
    return 1.0 / std::tanh(x);
}

double bath_weight(double omega, double temperature, double hbar, double k_B) {
    if (temperature <= 0.0) return omega;
    const double kT = k_B * temperature;
    if (omega == 0.0) return 2.0 * kT / hbar;
    const double x = hbar * omega / (2.0 * kT);
    if (x < 1e-4) return 2.0 * kT / hbar + omega * x / 3.0;
    return omega * coth_stable(x);
}

cplx exp_integral(cplx z, double t) {
    const cplx w = z * t;
    if (std::abs(w) < 1e-3) {
        return t * (1.0 + w / 2.0 + w * w / 6.0 + w * w * w / 24.0 + w * w * w * w / 120.0);
    }
    const double a = w.real(), b = w.imag();
    const double sb2 = std::sin(b / 2);
    const cplx em1(std::expm1(a) * std::cos(b) - 2.0 * sb2 * sb2, std::exp(a) * std::sin(b));
    return em1 / z;
}

namespace {

constexpr cplx I(0.0, 1.0);

double re_dot(cplx a, cplx b) { return (a * std::conj(b)).real(); }

}  // namespace

TrigTransform growing_transform(double w, double t, double W, double d) {
    const cplx ep = exp_integral(cplx(d, w + W), t);
    const cplx em = exp_integral(cplx(d, w - W), t);
    return {(ep - em) / (2.0 * I), (ep + em) / 2.0};
}

TrigTransform response_transform(double w, double t, double W, double d) {
    const cplx ep = exp_integral(cplx(-d, W - w), t);
    const cplx em = exp_integral(cplx(-d, -W - w), t);
    return {(ep - em) / (2.0 * I), (ep + em) / 2.0};
}

std::vector<double> omega_breaks(double nu_max, std::initializer_list<double> resonances,
                                 std::initializer_list<double> widths, double t) {
    std::vector<double> pts{0.0, nu_max};
    auto wit = widths.begin();
    for (double W : resonances) {
        double width = wit != widths.end() ? *wit++ : 0.0;
        if (t > 0) width = std::max(width, 1.0 / t);
        width = std::max(width, 1e-6 * W);
        for (double k : {-20.0, -5.0, -1.0, 0.0, 1.0, 5.0, 20.0}) pts.push_back(W + k * width);
        for (double k : {2.0, 5.0, 10.0}) pts.push_back(k * W);
    }
    std::vector<double> out;
    for (double p : pts)
        if (p >= 0.0 && p <= nu_max) out.push_back(p);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

std::complex<double> eval_alpha(double t, const OscillatorSpec& osc, const BathSpec& bath,
                                double hbar, double k_B, const QuadratureConfig& q) {
    const double eta = friction(osc);
    auto f = [&](double w) {
        return std::array<double, 2>{
            eta * bath_weight(w, osc.temperature, hbar, k_B) * std::cos(w * t) / M_PI,
            -eta * w * std::sin(w * t) / M_PI};
    };
    std::vector<double> br{0.0, bath.nu_max};
    if (t > 0) {
        const double period = 2 * M_PI / t;
        const int n = static_cast<int>(std::min(2000.0, bath.nu_max / period));
        for (int i = 1; i < n; ++i) br.push_back(i * bath.nu_max / n);
    }
    auto r = integrate<2>(f, br, q);
    return {r.value[0], r.value[1]};
}

InnerABC abc_inner(double w, double t, double W, double d) {
    const auto F = growing_transform(w, t, W, d);
    const double sn = std::sin(W * t), cs = std::cos(W * t);
    const cplx G = sn * F.c - cs * F.s;  // int sin(W(t - tau)) e^{d tau} e^{i w tau}
    const double s2 = sn * sn;
    InnerABC r;
    r.A = std::exp(-2 * d * t) * std::norm(F.s) / s2;
    r.B = 2 * std::exp(-d * t) * re_dot(F.s, G) / s2;
    r.C = std::norm(G) / s2;
    return r;
}

InnerABC abc_inner_hat(double w, double t, double W, double d) {
    const auto g = response_transform(w, t, W, d);
    const double sn = std::sin(W * t), cs = std::cos(W * t);
    const cplx h = sn * g.c - cs * g.s;  // int sin(W(t - u)) e^{-d u} e^{-i w u}
    InnerABC r;
    r.A = std::norm(h);
    r.B = 2 * re_dot(h, g.s);
    r.C = std::norm(g.s);
    return r;
}

ABCKernels eval_ABC(double t, int osc, const SystemSpec& spec, const NormalModes& md,
                    const QuadratureConfig& q, double node_eps) {
    const auto& o = spec.osc(osc);
    const double W = md.Omega(osc), d = md.delta(osc);
    const double T = o.temperature;
    auto f = [&](double w) {
        const double bw = bath_weight(w, T, spec.hbar, spec.k_B);
        const auto k = abc_inner_hat(w, t, W, d);
        return std::array<double, 3>{bw * k.A, bw * k.B, bw * k.C};
    };
    const auto br = omega_breaks(spec.bath(osc).nu_max, {W}, {d}, t);
    const auto r = integrate<3>(f, br, q);
    const double pref = o.mass * o.gamma / M_PI;
    ABCKernels out;
    out.A_hat = pref * r.value[0];
    out.B_hat = pref * r.value[1];
    out.C_hat = pref * r.value[2];
    out.abs_error = pref * r.abs_error;
    const double sn = std::sin(W * t);
    if (std::abs(sn) < node_eps) {
        out.A = out.B = out.C = std::numeric_limits<double>::quiet_NaN();
    } else {
        const double s2 = sn * sn;
        out.A = out.A_hat / s2;
        out.B = out.B_hat * std::exp(d * t) / s2;
        out.C = out.C_hat * std::exp(2 * d * t) / s2;
    }
    return out;
}

std::array<double, 8> e_inner(double w, double t, const NormalModes& md) {
    const double W1 = md.Omega1, W2 = md.Omega2;
    const auto a = growing_transform(w, t, W1, md.delta1);
    const auto b = growing_transform(w, t, W2, md.delta2);
    const double s1 = std::sin(W1 * t), s2 = std::sin(W2 * t);
    const double nb1 = std::exp(-md.delta1 * t) / s1, nb2 = std::exp(-md.delta2 * t) / s2;
    const double m1 = std::cos(W1 * t) / s1, m2 = std::cos(W2 * t) / s2;
    // F_k = nbar_k sin(W_k tau) e^{d_k tau}, G_k = (cos - m_k sin)(W_k tau) e^{d_k tau}
    const cplx F1 = nb1 * a.s, F2 = nb2 * b.s;
    const cplx G1 = a.c - m1 * a.s, G2 = b.c - m2 * b.s;
    const double G12 = re_dot(G1, G2), F2G1 = re_dot(F2, G1), F1G2 = re_dot(F1, G2);
    const double F12 = re_dot(F1, F2);
    return {G12 - std::norm(G1),       G12 - std::norm(G2),
            F2G1 - re_dot(F1, G1),     F2G1 - re_dot(F2, G2),
            F1G2 - re_dot(F1, G1),     F1G2 - re_dot(F2, G2),
            F12 - std::norm(F1),       F12 - std::norm(F2)};
}

ECoefficients eval_E(double t, const SystemSpec& spec, const NormalModes& md,
                     const QuadratureConfig& q, double node_eps) {
    if (std::abs(std::sin(md.Omega1 * t)) < node_eps) throw NodeProximityError(1, t);
    if (std::abs(std::sin(md.Omega2 * t)) < node_eps) throw NodeProximityError(2, t);
    ECoefficients out;
    if (md.r1 == 0.0 && md.r2 == 0.0) return out;
    std::array<double, 4> total{};
    for (int bath = 1; bath <= 2; ++bath) {
        const auto& o = spec.osc(bath);
        const double r = bath == 1 ? md.r2 : md.r1;
        const double pref = 2 * o.mass * o.gamma * r / M_PI;
        if (pref == 0.0) continue;
        auto f = [&](double w) {
            const double bw = bath_weight(w, o.temperature, spec.hbar, spec.k_B);
            const auto k = e_inner(w, t, md);
            const int j = bath - 1;
            return std::array<double, 4>{bw * k[j], bw * k[2 + j], bw * k[4 + j], bw * k[6 + j]};
        };
        const auto br = omega_breaks(spec.bath(bath).nu_max, {md.Omega1, md.Omega2},
                                     {md.delta1, md.delta2}, t);
        const auto res = integrate<4>(f, br, q);
        for (int i = 0; i < 4; ++i) total[i] += pref * res.value[i];
        out.abs_error += std::abs(pref) * res.abs_error;
    }
    out.E1 = total[0], out.E2 = total[1], out.E3 = total[2], out.E4 = total[3];
    return out;
}

FPair eval_f(const KernelTable& k, double C1, double C2, double E1, double a1, double a2,
             double hbar) {
    const double den1 = k.d(4) * k.d(4) + 4 * a1 * hbar * (C1 + hbar * a1);
    const double den2 = k.dp(4) * k.dp(4) + 4 * a2 * hbar * (C2 + hbar * a2);
    FPair f;
    f.f1 = k.d(9) + k.dp(9) + k.pi(6) - k.d(3) * k.d(4) * (k.d(11) + k.dp(11) + k.pi(14)) / den1;
    f.f2 = k.d(10) + k.dp(10) + k.pi(7) -
           (k.dp(3) * k.dp(4) * (k.d(12) + k.dp(12) + k.pi(15)) + 2 * hbar * a2 * E1 * k.dp(3)) /
               den2;
    return f;
}

InfluenceCoefficients eval_influence(double t, const SystemSpec& spec, const NormalModes& md,
                                     const QuadratureConfig& q, const TableOptions& opt) {
    const auto tab = eval_kernels(t, md, spec, opt);
    const auto k1 = eval_ABC(t, 1, spec, md, q, opt.node_eps);
    const auto k2 = eval_ABC(t, 2, spec, md, q, opt.node_eps);
    const auto e = eval_E(t, spec, md, q, opt.node_eps);
    InfluenceCoefficients c;
    c.t = t;
    c.A1 = k1.A, c.B1 = k1.B, c.C1 = k1.C;
    c.A2 = k2.A, c.B2 = k2.B, c.C2 = k2.C;
    c.E1 = e.E1, c.E2 = e.E2, c.E3 = e.E3, c.E4 = e.E4;
    const double a1 = 1.0 / (8 * spec.osc1.sigma0_sq), a2 = 1.0 / (8 * spec.osc2.sigma0_sq);
    const auto f = eval_f(tab, c.C1, c.C2, c.E1, a1, a2, spec.hbar);
    c.f1 = f.f1, c.f2 = f.f2;
    c.abs_error = k1.abs_error + k2.abs_error + e.abs_error;
    return c;
}

FdtResult fdt_variance(const OscillatorSpec& o, double hbar, double k_B,
                       const QuadratureConfig& q) {
    const double w0 = o.omega0, g = o.gamma, M = o.mass;
    if (!(g > 0)) throw SpecError("fdt_variance requires gamma > 0");
    const double W = std::max(50 * w0, w0 + 40 * g);
    auto f = [&](double w) {
        const double d = (w * w - w0 * w0);
        const double den = M * (d * d + 4 * g * g * w * w);
        return bath_weight(w, o.temperature, hbar, k_B) * 2 * g / den * hbar / M_PI;
    };
    std::vector<double> br{0.0, W};
    for (double k : {-30.0, -10.0, -3.0, -1.0, 0.0, 1.0, 3.0, 10.0, 30.0}) {
        const double p = w0 + k * g;
        if (p > 0 && p < W) br.push_back(p);
    }
    for (double k : {2.0, 5.0, 10.0})
        if (k * w0 < W) br.push_back(k * w0);
    const auto r = integrate_scalar(f, br, q);
    FdtResult out;
    out.cutoff = W;
    const double coth_w = bath_weight(W, o.temperature, hbar, k_B) / W;
    out.tail = hbar * g * coth_w / (M_PI * M * W * W);
    out.value = r.value[0] + out.tail;
    out.abs_error = r.abs_error + out.tail * (std::abs(coth_w - 1.0) + 4 * w0 * w0 / (W * W));
    return out;
}

}  // namespace quasirelax
