// kernel_checks.hpp — quadrature references for trig integrals, action tables and bath kernels
#pragma once

#include <array>
#include <cmath>
#include <functional>
#include <utility>

#include "oracles.hpp"
#include "quasirelax/kernels.hpp"

namespace quasirelax::testing {

using Mat4 = ActionOracle::Mat;

inline double max_abs(const Mat4& m) {
    double s = 0;
    for (const auto& row : m)
        for (double v : row) s = std::max(s, std::abs(v));
    return s;
}

inline double max_diff(const Mat4& a, const Mat4& b) {
    double s = 0;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) s = std::max(s, std::abs(a[i][j] - b[i][j]));
    return s;
}

// Bilinear matrices of the tables: entry (a, b) pairs X component a with xi
// component b, both ordered (initial 1, initial 2, final 1, final 2).
inline std::pair<Mat4, Mat4> table_matrices(const KernelTable& k) {
    Mat4 S{}, P{};
    for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b) {
            Boundary bd;
            double* X[4] = {&bd.Xi1, &bd.Xi2, &bd.Xf1, &bd.Xf2};
            double* Q[4] = {&bd.xii1, &bd.xii2, &bd.xif1, &bd.xif2};
            *X[a] = 1.0;
            *Q[b] = 1.0;
            const auto v = action_bilinear(k, bd);
            S[a][b] = v.single;
            P[a][b] = v.interaction;
        }
    return {S, P};
}

// s1..s14 by direct quadrature of their integrands.
inline std::array<double, 14> s_reference(double t, const NormalModes& m) {
    const double W1 = m.Omega1, W2 = m.Omega2, dm = m.delta1 - m.delta2;
    using F = std::function<double(double)>;
    const F c1 = [&](double x) { return std::cos(W1 * x); };
    const F s1 = [&](double x) { return std::sin(W1 * x); };
    const F c2 = [&](double x) { return std::cos(W2 * x); };
    const F s2 = [&](double x) { return std::sin(W2 * x); };
    const F up = [&](double x) { return std::exp(dm * x); };
    const F dn = [&](double x) { return std::exp(-dm * x); };
    const F one = [](double) { return 1.0; };
    const std::array<std::array<const F*, 3>, 14> terms = {{
        {&one, &c1, &c1}, {&one, &s1, &s1}, {&one, &c2, &c2}, {&one, &s2, &s2},
        {&one, &s1, &c1}, {&one, &s2, &c2},
        {&up, &c1, &c2}, {&up, &c1, &s2}, {&up, &s1, &c2}, {&up, &s1, &s2},
        {&dn, &c1, &c2}, {&dn, &s1, &c2}, {&dn, &c1, &s2}, {&dn, &s1, &s2},
    }};
    std::array<double, 14> out{};
    for (int k = 0; k < 14; ++k) {
        const auto& g = terms[k];
        out[k] = gk([&](double x) { return (*g[0])(x) * (*g[1])(x) * (*g[2])(x); }, 0.0, t, 1e-15);
    }
    return out;
}

// Square-domain integral of a(t') cos(w(t' - t'')) b(t'').
inline double square(const std::function<double(double)>& a, const std::function<double(double)>& b, double w,
                     double t) {
    return gk([&](double x) { return gk([&](double y) { return a(x) * std::cos(w * (x - y)) * b(y); }, 0.0, t, 1e-12); },
              0.0, t, 1e-12);
}

struct AbcReference {
    double A, B, C;
};

// A, B, C inner kernels of one damped mode by 2-D quadrature.
inline AbcReference abc_reference(double w, double t, double W, double d) {
    const double sn = std::sin(W * t);
    auto f = [&](double x) { return std::sin(W * x) * std::exp(d * x); };
    auto g = [&](double x) { return std::sin(W * (t - x)) * std::exp(d * x); };
    return {std::exp(-2 * d * t) / (sn * sn) * square(f, f, w, t),
            2 * std::exp(-d * t) / (sn * sn) * square(f, g, w, t), square(g, g, w, t) / (sn * sn)};
}

// Bracketed integrands of E1..E4 exactly as written, in (tau, s); entry
// 2 (k - 1) + (j - 1) holds E_k for bath j.
inline std::array<double, 8> e_printed(double tau, double s, double w, const NormalModes& md, double t) {
    const double W1 = md.Omega1, W2 = md.Omega2, d1 = md.delta1, d2 = md.delta2;
    const double s1t = std::sin(W1 * t), s2t = std::sin(W2 * t);
    const double m1 = std::cos(W1 * t) / s1t, m2 = std::cos(W2 * t) / s2t;
    const double nb1 = std::exp(-d1 * t) / s1t, nb2 = std::exp(-d2 * t) / s2t;
    const double cw = std::cos(w * (tau - s));
    const double S1t = std::sin(W1 * tau), C1t = std::cos(W1 * tau), S2t = std::sin(W2 * tau), C2t = std::cos(W2 * tau);
    const double S1s = std::sin(W1 * s), C1s = std::cos(W1 * s), S2s = std::sin(W2 * s), C2s = std::cos(W2 * s);
    const double e11 = std::exp(d1 * (tau + s)), e22 = std::exp(d2 * (tau + s));
    const double e21 = std::exp(d2 * tau + d1 * s), e12 = std::exp(d1 * tau + d2 * s);

    const double g1 = m1 * m2 * (S2t * cw * S1s * e21 + S1t * cw * S2s * e12) -
                      m2 * (S2t * cw * C1s * e21 + C1t * cw * S2s * e12) +
                      (C2t * cw * C1s * e21 + C1t * cw * C2s * e12) -
                      m1 * (C2t * cw * S1s * e21 + S1t * cw * C2s * e12);
    const double g2 = -nb2 * m1 * (S2t * cw * S1s * e21 + S1t * cw * S2s * e12) +
                      nb2 * (S2t * cw * C1s * e21 + C1t * cw * S2s * e12);
    const double g3 = -nb1 * m2 * (S2t * cw * S1s * e21 + S1t * cw * S2s * e12) +
                      nb1 * (C2t * cw * S1s * e21 + S1t * cw * C2s * e12);
    const double mixed = S2t * cw * S1s * e21 + S1t * cw * S2s * e12;
    std::array<double, 8> out{};
    for (int j = 1; j <= 2; ++j) {
        const double mm = j == 1 ? m1 : m2, nb = j == 1 ? nb1 : nb2;
        const double SS = j == 1 ? S1t * cw * S1s * e11 : S2t * cw * S2s * e22;
        const double CC = j == 1 ? C1t * cw * C1s * e11 : C2t * cw * C2s * e22;
        const double CS = j == 1 ? (C1t * cw * S1s + S1t * cw * C1s) * e11 : (C2t * cw * S2s + S2t * cw * C2s) * e22;
        out[j - 1] = -2 * (mm * mm * SS + CC) + 2 * mm * CS + g1;
        out[2 + j - 1] = 2 * nb * mm * SS - nb * CS + g2;
        out[4 + j - 1] = 2 * nb * mm * SS - nb * CS + g3;
        out[6 + j - 1] = -2 * nb * nb * SS + nb1 * nb2 * mixed;
    }
    return out;
}

// E inner kernels by Gauss-Legendre over the triangle. Entries 0..7 are the
// values, 8..15 the integrals of their absolute values.
inline std::array<double, 16> e_reference(double w, double t, const NormalModes& md) {
    const int panels = static_cast<int>(std::ceil(t * (md.Omega2 + w + 1.0) / M_PI)) + 2;
    return gl_triangle<16>(
        [&](double tau, double s) {
            const auto x = e_printed(tau, s, w, md, t);
            std::array<double, 16> v{};
            for (int i = 0; i < 8; ++i) v[i] = x[i], v[8 + i] = std::abs(x[i]);
            return v;
        },
        t, panels);
}

}  // namespace quasirelax::testing
