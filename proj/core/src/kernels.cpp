// kernels.cpp — s-functions, action coefficient tables, classical paths
#include "quasirelax/kernels.hpp"

#include <cmath>

namespace quasirelax {

std::array<double, 14> eval_s(double t, const NormalModes& md) {
    std::array<double, 14> s{};
    if (t == 0.0) return s;
    const double O1 = md.Omega1, O2 = md.Omega2;
    const double dm = md.delta1 - md.delta2;
    const double Om = O1 - O2, Op = O1 + O2;
    const double A = dm * dm + Om * Om, B = dm * dm + Op * Op;

    s[0] = t / 2 + std::sin(2 * O1 * t) / (4 * O1);
    s[1] = t / 2 - std::sin(2 * O1 * t) / (4 * O1);
    s[2] = t / 2 + std::sin(2 * O2 * t) / (4 * O2);
    s[3] = t / 2 - std::sin(2 * O2 * t) / (4 * O2);
    s[4] = std::pow(std::sin(O1 * t), 2) / (2 * O1);
    s[5] = std::pow(std::sin(O2 * t), 2) / (2 * O2);

    const double e = std::exp(t * dm), E = std::exp(-t * dm);
    const double cm = std::cos(t * Om), sm = std::sin(t * Om);
    const double cp = std::cos(t * Op), sp = std::sin(t * Op);
    s[6] = 0.5 * (-dm / A - dm / B + e * ((dm * cm + Om * sm) / A + (dm * cp + Op * sp) / B));
    s[7] = 0.5 * (-Om / A + Op / B + e * ((Om * cm - dm * sm) / A + (-Op * cp + dm * sp) / B));
    s[8] = 0.5 * (Om / A + Op / B + e * ((-Om * cm + dm * sm) / A + (-Op * cp + dm * sp) / B));
    s[9] = 0.5 * (-dm / A + dm / B + e * ((dm * cm + Om * sm) / A - (dm * cp + Op * sp) / B));
    s[10] = 0.5 * (dm / A + dm / B + E * ((-dm * cm + Om * sm) / A + (-dm * cp + Op * sp) / B));
    s[11] = 0.5 * (Om / A + Op / B + E * ((-Om * cm - dm * sm) / A - (Op * cp + dm * sp) / B));
    s[12] = 0.5 * (-Om / A + Op / B + E * ((Om * cm + dm * sm) / A - (Op * cp + dm * sp) / B));
    s[13] = 0.5 * (dm / A - dm / B + E * ((-dm * cm + Om * sm) / A + (dm * cp - Op * sp) / B));
    return s;
}

KernelTable eval_kernels(double t, const NormalModes& md, const SystemSpec& spec,
                         const TableOptions& opt) {
    const double sin1 = std::sin(md.Omega1 * t), sin2 = std::sin(md.Omega2 * t);
    if (std::abs(sin1) < opt.node_eps) throw NodeProximityError(1, t);
    if (std::abs(sin2) < opt.node_eps) throw NodeProximityError(2, t);

    KernelTable k;
    k.t = t;
    k.s = eval_s(t, md);
    // 1-based view of s for readability against the tables
    auto s = [&](int i) { return k.s[i - 1]; };

    const double O1 = md.Omega1, O2 = md.Omega2, d1 = md.delta1, d2 = md.delta2;
    const double r1 = md.r1, r2 = md.r2;
    const double w1s = spec.osc1.omega0 * spec.osc1.omega0;
    const double w2s = spec.osc2.omega0 * spec.osc2.omega0;
    const double g1 = spec.osc1.gamma, g2 = spec.osc2.gamma;

    const double n1 = std::exp(d1 * t) / sin1, n2 = std::exp(d2 * t) / sin2;
    const double nb1 = std::exp(-d1 * t) / sin1, nb2 = std::exp(-d2 * t) / sin2;
    const double m1 = std::cos(O1 * t) / sin1, m2 = std::cos(O2 * t) / sin2;
    k.n1 = n1, k.n2 = n2, k.nbar1 = nb1, k.nbar2 = nb2, k.m1 = m1, k.m2 = m2;

    std::array<double, 13> b{}, bp{};
    b[1] = O1 * O1 * s(1) - w1s * s(2) - 2 * O1 * g1 * s(5);
    b[2] = -O1 * O1 * s(5) - w1s * s(5) - O1 * d1 * (s(1) + s(2)) + 2 * O1 * g1 * s(2);
    b[3] = -O1 * O1 * s(5) - w1s * s(5) + O1 * d1 * (s(1) + s(2)) - 2 * O1 * g1 * s(1);
    b[4] = O1 * O1 * s(2) - w1s * s(1) + 2 * O1 * g1 * s(5);
    b[5] = O1 * O2 * s(7) - w1s * s(10) - O1 * d2 * s(8) + O2 * d1 * s(9) - 2 * O2 * g1 * s(9);
    b[6] = -O1 * O2 * s(8) - w1s * s(9) - O1 * d2 * s(7) - O2 * d1 * s(10) + 2 * O2 * g1 * s(10);
    b[7] = -O1 * O2 * s(9) - w1s * s(8) + O1 * d2 * s(10) + O2 * d1 * s(7) - 2 * O2 * g1 * s(7);
    b[8] = O1 * O2 * s(10) - w1s * s(7) + O1 * d2 * s(9) - O2 * d1 * s(8) + 2 * O2 * g1 * s(8);
    b[9] = O1 * O2 * s(11) - w1s * s(14) - O2 * d1 * s(12) + O1 * d2 * s(13) - 2 * O1 * g1 * s(13);
    b[10] = -O1 * O2 * s(12) - w1s * s(13) - O2 * d1 * s(11) - O1 * d2 * s(14) + 2 * O1 * g1 * s(14);
    b[11] = -O1 * O2 * s(13) - w1s * s(12) + O2 * d1 * s(14) + O1 * d2 * s(11) - 2 * O1 * g1 * s(11);
    b[12] = O1 * O2 * s(14) - w1s * s(11) + O2 * d1 * s(13) - O1 * d2 * s(12) + 2 * O1 * g1 * s(12);

    bp[1] = O2 * O2 * s(3) - w2s * s(4) - 2 * O2 * g2 * s(6);
    bp[2] = -O2 * O2 * s(6) - w2s * s(6) - O2 * d2 * (s(3) + s(4)) + 2 * O2 * g2 * s(4);
    bp[3] = -O2 * O2 * s(6) - w2s * s(6) + O2 * d2 * (s(3) + s(4)) - 2 * O2 * g2 * s(3);
    bp[4] = O2 * O2 * s(4) - w2s * s(3) + 2 * O2 * g2 * s(6);
    bp[5] = O1 * O2 * s(7) - w2s * s(10) - O1 * d2 * s(8) + O2 * d1 * s(9) - 2 * O2 * g2 * s(9);
    bp[6] = -O1 * O2 * s(8) - w2s * s(9) - O1 * d2 * s(7) - O2 * d1 * s(10) + 2 * O2 * g2 * s(10);
    bp[7] = O1 * O2 * s(10) - w2s * s(7) + O1 * d2 * s(9) - O2 * d1 * s(8) + 2 * O2 * g2 * s(8);
    bp[8] = -O1 * O2 * s(9) - w2s * s(8) + O1 * d2 * s(10) + O2 * d1 * s(7) - 2 * O2 * g2 * s(7);
    bp[9] = O1 * O2 * s(11) - w2s * s(14) - O2 * d1 * s(12) + O1 * d2 * s(13) - 2 * O1 * g2 * s(13);
    bp[10] = -O1 * O2 * s(12) - w2s * s(13) - O2 * d1 * s(11) - O1 * d2 * s(14) + 2 * O1 * g2 * s(14);
    bp[11] = -O1 * O2 * s(13) - w2s * s(12) + O2 * d1 * s(14) + O1 * d2 * s(11) - 2 * O1 * g2 * s(11);
    bp[12] = O1 * O2 * s(14) - w2s * s(11) + O2 * d1 * s(13) - O1 * d2 * s(12) + 2 * O1 * g2 * s(12);

    if (opt.printed_inner_r) {
        for (int i = 5; i <= 12; ++i) b[i] *= r2;
        for (int i = 5; i <= 11; ++i) bp[i] *= r1;
        bp[12] *= opt.bprime12_uses_r2 ? r2 : r1;
    }

    const double h1 = spec.osc1.mass / 2, h2 = spec.osc2.mass / 2;
    auto& D = k.D;
    auto& Dp = k.Dp;
    D[0] = h1 * n1 * nb1 * b[1];
    D[1] = h1 * (nb1 * b[2] - m1 * nb1 * b[1]);
    D[2] = h1 * (n1 * b[3] - m1 * n1 * b[1]);
    D[3] = h1 * (m1 * m1 * (opt.printed_d4 ? b[2] : b[1]) - m1 * b[2] - m1 * b[3] + b[4]);
    D[4] = r2 * h1 * (n2 * nb1 * b[5] - n1 * nb1 * b[1]);
    D[5] = r2 * h1 * (n1 * nb2 * b[9] - n1 * nb1 * b[1]);
    D[6] = r2 * h1 * (m1 * nb1 * b[1] - nb1 * b[2] - m1 * nb2 * b[9] + nb2 * b[10]);
    D[7] = r2 * h1 * (m1 * nb1 * b[1] - nb1 * b[2] - m2 * nb1 * b[5] + nb1 * b[6]);
    D[8] = r2 * h1 * (n1 * m1 * b[1] - n1 * b[3] - n1 * m2 * b[9] + n1 * b[11]);
    D[9] = r2 * h1 * (n1 * m1 * b[1] - n1 * b[3] - n2 * m1 * b[5] + n2 * b[7]);
    D[10] = r2 * h1 *
            (m1 * b[2] - m1 * m1 * b[1] + m1 * b[3] - b[4] + m1 * m2 * b[9] - m2 * b[10] -
             m1 * b[11] + b[12]);
    D[11] = r2 * h1 *
            (m1 * b[2] - m1 * m1 * b[1] + m1 * b[3] - b[4] + m1 * m2 * b[5] - m1 * b[6] -
             m2 * b[7] + b[8]);

    const double x7 = opt.printed_primed_cross ? n2 : nb2;
    const double x8 = opt.printed_primed_cross ? n1 : nb1;
    Dp[0] = h2 * n2 * nb2 * bp[1];
    Dp[1] = h2 * (nb2 * bp[2] - m2 * nb2 * bp[1]);
    Dp[2] = h2 * (n2 * bp[3] - m2 * n2 * bp[1]);
    Dp[3] = h2 * (m2 * m2 * (opt.printed_d4 ? bp[2] : bp[1]) - m2 * bp[2] - m2 * bp[3] + bp[4]);
    Dp[4] = r1 * h2 * (n2 * nb1 * bp[5] - n2 * nb2 * bp[1]);
    Dp[5] = r1 * h2 * (n1 * nb2 * bp[9] - n2 * nb2 * bp[1]);
    Dp[6] = r1 * h2 * (m2 * nb2 * bp[1] - x7 * bp[2] - m1 * nb2 * bp[9] + nb2 * bp[10]);
    Dp[7] = r1 * h2 * (m2 * nb2 * bp[1] - x7 * bp[2] - m2 * x8 * bp[5] + nb1 * bp[6]);
    Dp[8] = r1 * h2 * (n2 * m2 * bp[1] - n2 * bp[3] - n1 * m2 * bp[9] + n1 * bp[11]);
    Dp[9] = r1 * h2 * (n2 * m2 * bp[1] - n2 * bp[3] - n2 * m1 * bp[5] + n2 * bp[8]);
    Dp[10] = r1 * h2 *
             (m2 * bp[2] - m2 * m2 * bp[1] + m2 * bp[3] - bp[4] + m1 * m2 * bp[9] - m2 * bp[10] -
              m1 * bp[11] + bp[12]);
    Dp[11] = r1 * h2 *
             (m2 * bp[2] - m2 * m2 * bp[1] + m2 * bp[3] - bp[4] + m1 * m2 * bp[5] - m1 * bp[6] -
              m2 * bp[8] + bp[7]);

    const double L = md.lambda / 2;
    const bool pp = opt.printed_pi;
    auto& P = k.Pi;
    P[0] = r1 * L * (2 * n1 * nb1 * s(2) - n1 * nb2 * s(14) - n2 * nb1 * s(10));
    P[1] = L * n1 * nb2 * s(14);
    P[2] = L * n2 * nb1 * s(10);
    P[3] = r2 * L * (2 * n2 * nb2 * s(4) - nb1 * n2 * s(10) - n1 * nb2 * s(14));
    P[4] = r1 * L *
           (2 * n1 * s(5) - 2 * n1 * m1 * s(2) - n2 * s(8) + n2 * m1 * s(10) - n1 * s(12) +
            n1 * m2 * s(14));
    P[5] = L * (n1 * s(12) - n1 * m2 * s(14));
    P[6] = L * (n2 * s(8) - n2 * m1 * s(10));
    P[7] = r2 * L *
           (2 * n2 * s(6) - 2 * n2 * m2 * s(4) - n2 * s(8) + m1 * (pp ? m2 : n2) * s(10) -
            n1 * s(12) + n1 * m2 * s(14));
    P[8] = r1 * L *
           (2 * (pp ? n1 : nb1) * s(5) - 2 * m1 * nb1 * s(2) - nb1 * s(9) + m2 * nb1 * s(10) -
            (pp ? n2 : nb2) * s(13) + m1 * nb2 * s(14));
    P[9] = L * (nb2 * s(13) - m1 * nb2 * s(14));
    P[10] = L * (nb1 * s(9) - nb1 * m2 * s(10));
    P[11] = r2 * L *
            (2 * nb2 * s(6) - 2 * nb2 * m2 * s(4) + m2 * nb1 * s(10) - nb2 * s(13) +
             m1 * nb2 * s(14) - (pp ? n1 : nb1) * s(9));
    P[12] = r1 * L *
            (-s(7) + 2 * m1 * m1 * s(2) - 4 * m1 * s(5) + 2 * s(1) + m2 * s(8) + m1 * s(9) -
             m1 * m2 * s(10) - s(11) + m1 * s(12) + m2 * s(13) - m1 * m2 * s(14));
    P[13] = L * (m1 * m2 * s(14) - m2 * s(13) - m1 * s(12) + s(11));
    P[14] = L * (s(7) - m2 * s(8) - m1 * s(9) + m1 * m2 * s(10));
    P[15] = r2 * L *
            (m2 * s(13) + m1 * s(12) - s(11) - m1 * m2 * s(10) + m1 * s(9) + m2 * s(8) - s(7) +
             2 * m2 * m2 * s(4) - 4 * m2 * s(6) + 2 * s(3) - m1 * m2 * s(14));
    return k;
}

PathPoint classical_paths(double tau, double t, const NormalModes& md, const Boundary& b,
                          double node_eps) {
    const double sin1 = std::sin(md.Omega1 * t), sin2 = std::sin(md.Omega2 * t);
    if (std::abs(sin1) < node_eps) throw NodeProximityError(1, t);
    if (std::abs(sin2) < node_eps) throw NodeProximityError(2, t);
    const double r1 = md.r1, r2 = md.r2, q = 1.0 - r1 * r2;
    const double O1 = md.Omega1, O2 = md.Omega2, d1 = md.delta1, d2 = md.delta2;
    const double cot1 = std::cos(O1 * t) / sin1, cot2 = std::cos(O2 * t) / sin2;

    // Mode amplitudes: sign = -1 for X (decaying), +1 for xi (growing).
    auto mode = [&](double O, double d, double sinOt, double cot, double ui, double uf,
                    double sign) {
        const double lead = uf / (q * sinOt) * std::exp(-sign * d * t) - cot * ui / q;
        return (lead * std::sin(O * tau) + ui / q * std::cos(O * tau)) * std::exp(sign * d * tau);
    };
    const double a1 = mode(O1, d1, sin1, cot1, b.Xi1 - r2 * b.Xi2, b.Xf1 - r2 * b.Xf2, -1.0);
    const double a2 = mode(O2, d2, sin2, cot2, b.Xi2 - r1 * b.Xi1, b.Xf2 - r1 * b.Xf1, -1.0);
    const double c1 = mode(O1, d1, sin1, cot1, b.xii1 - r2 * b.xii2, b.xif1 - r2 * b.xif2, 1.0);
    const double c2 = mode(O2, d2, sin2, cot2, b.xii2 - r1 * b.xii1, b.xif2 - r1 * b.xif1, 1.0);

    PathPoint p;
    p.X1 = a1 + r2 * a2;
    p.X2 = r1 * a1 + a2;
    p.xi1 = c1 + r2 * c2;
    p.xi2 = r1 * c1 + c2;
    return p;
}

ActionParts action_bilinear(const KernelTable& k, const Boundary& b) {
    ActionParts a;
    a.single = k.d(1) * b.Xf1 * b.xif1 + (k.d(5) + k.dp(5)) * b.Xf2 * b.xif1 +
               (k.d(6) + k.dp(6)) * b.Xf1 * b.xif2 + k.dp(1) * b.Xf2 * b.xif2 +
               k.d(2) * b.Xi1 * b.xif1 + k.d(3) * b.Xf1 * b.xii1 + k.d(4) * b.Xi1 * b.xii1 +
               k.dp(2) * b.Xi2 * b.xif2 + k.dp(3) * b.Xf2 * b.xii2 + k.dp(4) * b.Xi2 * b.xii2 +
               (k.d(7) + k.dp(7)) * b.Xi1 * b.xif2 + (k.d(8) + k.dp(8)) * b.Xi2 * b.xif1 +
               (k.d(9) + k.dp(9)) * b.Xf1 * b.xii2 + (k.d(10) + k.dp(10)) * b.Xf2 * b.xii1 +
               (k.d(11) + k.dp(11)) * b.Xi1 * b.xii2 + (k.d(12) + k.dp(12)) * b.Xi2 * b.xii1;
    a.interaction = k.pi(1) * b.Xf1 * b.xif1 + k.pi(2) * b.Xf1 * b.xif2 +
                    k.pi(3) * b.Xf2 * b.xif1 + k.pi(4) * b.Xf2 * b.xif2 +
                    k.pi(5) * b.Xf1 * b.xii1 + k.pi(6) * b.Xf1 * b.xii2 +
                    k.pi(7) * b.Xf2 * b.xii1 + k.pi(8) * b.Xf2 * b.xii2 +
                    k.pi(9) * b.Xi1 * b.xif1 + k.pi(10) * b.Xi1 * b.xif2 +
                    k.pi(11) * b.Xi2 * b.xif1 + k.pi(12) * b.Xi2 * b.xif2 +
                    k.pi(13) * b.Xi1 * b.xii1 + k.pi(14) * b.Xi1 * b.xii2 +
                    k.pi(15) * b.Xi2 * b.xii1 + k.pi(16) * b.Xi2 * b.xii2;
    return a;
}

StableSingle stable_single(double t, int osc, const NormalModes& md, const SystemSpec& spec) {
    const double M = spec.osc(osc).mass;
    const double O = md.Omega(osc), d = md.delta(osc);
    const double e = std::exp(-d * t);
    StableSingle r;
    r.D3_hat = -0.5 * M * O;
    r.D4_hat = 0.5 * M * (O * std::cos(O * t) + d * std::sin(O * t)) * e;
    r.s_hat = std::sin(O * t) * e;
    return r;
}

}  // namespace quasirelax
