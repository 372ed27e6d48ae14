// test_influence.cpp — bath kernels, cross kernels, f factors and FDT variance
#include <doctest.h>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <cmath>
#include <complex>

#include "kernel_checks.hpp"
#include "quasirelax/density.hpp"
#include "quasirelax/influence.hpp"

using namespace quasirelax;
using quasirelax::testing::close;
using quasirelax::testing::gk;
using quasirelax::testing::RandomSpecs;

namespace {

SystemSpec fixed_spec(double rho, double T1 = 1.0, double T2 = 1.0) {
    SystemSpec s;
    s.osc1 = {1.0, 1.0, 0.01, T1, 0.5};
    s.osc2 = {3.0, 2.0, 0.02, T2, 0.5 / 6.0};
    s.lambda = lambda_from_rho(s, rho);
    return s;
}

}  // namespace

TEST_CASE("coth and bath weight limits") {
    CHECK(coth_stable(1e-6) == doctest::Approx(1e6).epsilon(1e-12));
    CHECK(coth_stable(1e-4 * (1 - 1e-12)) == doctest::Approx(1.0 / std::tanh(1e-4)).epsilon(1e-12));
    CHECK(coth_stable(50.0) == 1.0);
    CHECK(coth_stable(-50.0) == -1.0);
    CHECK(bath_weight(2.5, 0.0, 1.0, 1.0) == 2.5);
    CHECK(bath_weight(0.0, 3.0, 1.0, 1.0) == doctest::Approx(6.0));
    CHECK(bath_weight(1e-9, 3.0, 1.0, 1.0) == doctest::Approx(6.0).epsilon(1e-12));
    CHECK(bath_weight(100.0, 1.0, 1.0, 1.0) == doctest::Approx(100.0).epsilon(1e-15));
    CHECK(bath_weight(1.3, 0.7, 1.0, 1.0) == doctest::Approx(1.3 / std::tanh(1.3 / 1.4)).epsilon(1e-14));
}

TEST_CASE("exp_integral against the closed form and its series") {
    using C = std::complex<double>;
    for (C z : {C(0.3, 2.0), C(-0.02, 5.0), C(1e-5, -3.0), C(-4.0, 0.1)}) {
        const double t = 1.7;
        const C ref = (std::exp(z * t) - 1.0) / z;
        CHECK(std::abs(exp_integral(z, t) - ref) <= 1e-13 * std::abs(ref));
    }
    // Small arguments against a long series, on both sides of the branch switch.
    for (double mag : {1e-6, 9.9e-4, 1.01e-3, 5e-3}) {
        const C z = mag * C(0.6, 0.8);
        const double t = 1.0;
        C ref = 0, term = t;
        for (int k = 1; k < 20; ++k) {
            ref += term;
            term *= z * t / double(k + 1);
        }
        CHECK(std::abs(exp_integral(z, t) - ref) <= 1e-14);
    }
    CHECK(std::abs(exp_integral(C(0, 0), 2.0) - C(2.0, 0)) == 0.0);
}

TEST_CASE("bath correlation function") {
    OscillatorSpec o{1.0, 1.0, 0.01, 0.0, 0.5};
    const BathSpec b{50.0};
    const double eta = friction(o);
    const auto a0 = eval_alpha(0.0, o, b, 1.0, 1.0);
    CHECK(a0.real() == doctest::Approx(eta * 50.0 * 50.0 / (2 * M_PI)).epsilon(1e-10));
    CHECK(a0.imag() == 0.0);

    // The imaginary part is temperature independent.
    auto hot = o;
    hot.temperature = 7.0;
    for (double t : {0.13, 0.9, 2.4}) {
        const auto c = eval_alpha(t, o, b, 1.0, 1.0), h = eval_alpha(t, hot, b, 1.0, 1.0);
        CHECK(h.imag() == doctest::Approx(c.imag()).epsilon(1e-9));
        const double ref = -eta / M_PI * (std::sin(50 * t) / (t * t) - 50 * std::cos(50 * t) / t);
        CHECK(c.imag() == doctest::Approx(ref).epsilon(1e-8));
    }

    // High temperature: coth(x) -> 1/x + x/3.
    auto classical = o;
    classical.temperature = 1e4;
    const double t = 0.37, nu = 50.0, T = classical.temperature;
    const double w2cos = nu * nu * std::sin(nu * t) / t + 2 * nu * std::cos(nu * t) / (t * t) -
                         2 * std::sin(nu * t) / (t * t * t);
    const double ref = eta / M_PI * (2 * T * std::sin(nu * t) / t + w2cos / (6 * T));
    CHECK(eval_alpha(t, classical, b, 1.0, 1.0).real() == doctest::Approx(ref).epsilon(1e-6));
}

TEST_CASE("A, B, C inner kernels equal their double time integrals") {
    RandomSpecs gen(71);
    for (int i = 0; i < 200; ++i) {
        const double W = gen.uniform(0.5, 3.5), d = gen.uniform(0.0, 0.05);
        const double t = gen.uniform(0.1, 12.0);
        if (std::abs(std::sin(W * t)) < 0.05) continue;
        const double w = gen.uniform(0.0, 6.0);
        const double sn = std::sin(W * t);
        const auto [A, B, C] = quasirelax::testing::abc_reference(w, t, W, d);
        const auto k = abc_inner(w, t, W, d);
        INFO("case ", i, " W=", W, " d=", d, " t=", t, " w=", w);
        const double scale = std::max({std::abs(A), std::abs(C)});
        CHECK(close(k.A, A, 1e-9, scale));
        CHECK(close(k.B, B, 1e-9, scale));
        CHECK(close(k.C, C, 1e-9, scale));
        CHECK(k.A >= 0);
        CHECK(k.C >= 0);

        const auto h = abc_inner_hat(w, t, W, d);
        CHECK(close(h.A, k.A * sn * sn, 1e-11, scale * sn * sn));
        CHECK(close(h.B, k.B * sn * sn * std::exp(-d * t), 1e-11, scale * sn * sn));
        CHECK(close(h.C, k.C * sn * sn * std::exp(-2 * d * t), 1e-11, scale * sn * sn));
    }
}

TEST_CASE("E inner kernels equal the triangular integrals as written") {
    RandomSpecs gen(81);
    int cases = 0;
    while (cases < 200) {
        const auto spec = gen.next();
        const auto md = (cases % 2) ? derive_normal_modes(spec) : linearized_modes(spec);
        const double t = gen.time(md, 0.1, 10.0);
        const double w = gen.uniform(0.0, 5.0);
        const auto e = e_inner(w, t, md);
        ++cases;
        // Values and absolute-value integrals (the scale of the cancellation).
        const auto ref = quasirelax::testing::e_reference(w, t, md);
        for (int i = 0; i < 8; ++i) {
            INFO("E", i / 2 + 1, " bath ", i % 2 + 1, " t=", t, " w=", w);
            CHECK(close(e[i], ref[i], 1e-8, ref[8 + i]));
        }
    }
}

TEST_CASE("kernel limits at small and large time") {
    const auto spec = fixed_spec(0.02);
    const auto md = linearized_modes(spec);
    const auto ref = eval_ABC(1.0 / spec.osc1.gamma, 1, spec, md);
    const auto early = eval_ABC(1e-4, 1, spec, md);
    CHECK(std::abs(early.C) <= 1e-6 * std::abs(ref.C));

    const auto e_ref = eval_E(1.0 / spec.osc1.gamma + 0.3, spec, md);
    const auto e_early = eval_E(1e-4, spec, md);
    const double e_scale = std::max({std::abs(e_ref.E1), std::abs(e_ref.E2), std::abs(e_ref.E3), std::abs(e_ref.E4)});
    for (double v : {e_early.E1, e_early.E2, e_early.E3, e_early.E4}) CHECK(std::abs(v) <= 1e-6 * e_scale);

    // Long-time C1 approaches the FDT variance.
    const double fdt = fdt_variance(spec.osc1, 1.0, 1.0).value;
    for (double gt : {5.0, 6.5}) {
        const double t = gt / spec.osc1.gamma;
        const auto k = eval_ABC(t, 1, spec, md);
        const double var = 2 * k.C_hat / (md.Omega1 * md.Omega1);
        CHECK(std::abs(var / fdt - 1) < 0.02);
    }
    // Raw kernels are withheld at a node, hats are finite.
    const auto node = eval_ABC(M_PI / md.Omega1, 1, spec, md);
    CHECK(std::isnan(node.C));
    CHECK(std::isfinite(node.C_hat));
}

TEST_CASE("A and C are non-negative and C grows with temperature") {
    RandomSpecs gen(91);
    for (int i = 0; i < 40; ++i) {
        auto spec = gen.next();
        const auto md = linearized_modes(spec);
        const double t = gen.uniform(0.1, 200.0);
        double prev = -1;
        for (double T : {0.0, 0.5, 2.0, 8.0}) {
            spec.osc1.temperature = T;
            const auto k = eval_ABC(t, 1, spec, md);
            CHECK(k.A_hat >= 0);
            CHECK(k.C_hat >= 0);
            CHECK(k.C_hat >= prev * (1 - 1e-9));
            prev = k.C_hat;
        }
    }
}

TEST_CASE("cross kernels and f vanish without coupling and scale linearly with it") {
    const auto s0 = fixed_spec(0.0);
    const auto e0 = eval_E(3.3, s0, linearized_modes(s0));
    CHECK(e0.E1 == 0.0);
    CHECK(e0.E2 == 0.0);
    CHECK(e0.E3 == 0.0);
    CHECK(e0.E4 == 0.0);
    const auto c0 = eval_influence(3.3, s0, linearized_modes(s0));
    CHECK(c0.f1 == 0.0);
    CHECK(c0.f2 == 0.0);

    for (double t : {3.3, 47.0, 180.0}) {
        const auto s1 = fixed_spec(0.01), s2 = fixed_spec(0.02);
        // First-order modes, as used by the density module.
        const auto a = eval_influence(t, s1, linearized_modes(s1));
        const auto b = eval_influence(t, s2, linearized_modes(s2));
        CHECK(b.f1 / a.f1 == doctest::Approx(2.0).epsilon(0.01));
        CHECK(b.f2 / a.f2 == doctest::Approx(2.0).epsilon(0.01));
        CHECK(b.E1 / a.E1 == doctest::Approx(2.0).epsilon(0.01));
        if (t < 10) {
            // Exact modes shift the frequencies at second order only.
            const auto ea = eval_influence(t, s1, derive_normal_modes(s1));
            const auto eb = eval_influence(t, s2, derive_normal_modes(s2));
            CHECK(eb.f1 / ea.f1 == doctest::Approx(2.0).epsilon(0.01));
            CHECK(eb.f2 / ea.f2 == doctest::Approx(2.0).epsilon(0.01));
        }
        // Single-oscillator kernels do not depend on the coupling (same modes).
        const auto la = eval_influence(t, s1, linearized_modes(s1));
        const auto lb = eval_influence(t, s2, linearized_modes(s2));
        CHECK(la.C1 == lb.C1);
        CHECK(la.A2 == lb.A2);
        // Denominators are positive.
        const auto k = eval_kernels(t, linearized_modes(s1), s1);
        CHECK(k.d(4) * k.d(4) + 4 * 0.25 * (la.C1 + 0.25) > 0);
    }
}

TEST_CASE("FDT variance against semi-infinite quadrature") {
    using boost::math::quadrature::gauss_kronrod;
    RandomSpecs gen(101);
    for (int i = 0; i < 30; ++i) {
        OscillatorSpec o{gen.uniform(0.3, 3.0), gen.uniform(0.5, 3.0), 0.0, gen.uniform(0.0, 5.0), 0.5};
        o.gamma = gen.uniform(0.002, 0.05) * o.omega0;
        auto f = [&](double w) {
            const double x = w * w - o.omega0 * o.omega0;
            return bath_weight(w, o.temperature, 1.0, 1.0) * 2 * o.gamma /
                   (o.mass * (x * x + 4 * o.gamma * o.gamma * w * w)) / M_PI;
        };
        double ref = 0;
        const double w0 = o.omega0, g = o.gamma;
        const double pts[] = {0.0, w0 - 30 * g, w0 - 5 * g, w0 - g, w0, w0 + g, w0 + 5 * g, w0 + 30 * g, 3 * w0};
        for (int k = 0; k + 1 < 9; ++k) ref += gauss_kronrod<double, 61>::integrate(f, pts[k], pts[k + 1], 15, 1e-14);
        ref += gauss_kronrod<double, 61>::integrate(f, 3 * w0, std::numeric_limits<double>::infinity(), 15, 1e-14);
        const auto r = fdt_variance(o, 1.0, 1.0);
        CHECK(r.value == doctest::Approx(ref).epsilon(1e-6));
        CHECK(std::abs(r.value - ref) <= std::max(r.abs_error, 1e-12 * ref) * 10);
    }
}

TEST_CASE("FDT ratios for the reference parameter sets") {
    auto ratio = [](double M, double w0, double T) {
        OscillatorSpec o{M, w0, 0.01 * w0, T, 0.0};
        return ground_variance(o, units::hbar) / fdt_variance(o, units::hbar, units::k_B).value;
    };
    CHECK(std::abs(ratio(1e-23, 1e13, 300) - 0.13) <= 0.01);
    CHECK(std::abs(ratio(3e-23, 2e13, 300) - 0.25) <= 0.01);
    CHECK(std::abs(ratio(1e-23, 1e13, 200) - 0.19) <= 0.01);
    CHECK(std::abs(ratio(3e-23, 2e13, 700) - 0.11) <= 0.01);

    // Narrow line at T = 0 recovers the ground-state variance.
    OscillatorSpec o{1.0, 1.0, 1e-4, 0.0, 0.5};
    CHECK(fdt_variance(o, 1.0, 1.0).value == doctest::Approx(0.5).epsilon(1e-3));
    o.gamma = 0.0;
    CHECK_THROWS_AS(fdt_variance(o, 1.0, 1.0), SpecError);
}

TEST_CASE("equilibrium density approaches the tanh form as damping vanishes") {
    double prev = 1e9;
    for (double g : {0.1, 0.03, 0.01, 0.003, 0.001}) {
        OscillatorSpec o{1.0, 1.0, g, 0.4, 0.5};
        const auto e = equilibrium_density(o, 1.0, 1.0);
        CHECK(e.tanh_variance == doctest::Approx(0.5 / std::tanh(1.0 / 0.8)).epsilon(1e-12));
        CHECK(std::abs(e.relative_gap) < prev);
        prev = std::abs(e.relative_gap);
    }
    CHECK(prev < 2e-3);
}
