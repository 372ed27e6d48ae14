// oracles.hpp — independent reference computations used only by the tests
#pragma once

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <array>
#include <cmath>
#include <functional>
#include <map>
#include <random>
#include <utility>
#include <vector>

#include "quasirelax/model.hpp"

namespace quasirelax::testing {

// Adaptive 61-point Gauss-Kronrod on [a, b].
inline double gk(const std::function<double(double)>& f, double a, double b, double tol = 1e-13) {
    double err = 0;
    return boost::math::quadrature::gauss_kronrod<double, 61>::integrate(f, a, b, 12, tol, &err);
}

// int_0^t int_0^tau f(tau, u) du dtau
inline double gk_triangle(const std::function<double(double, double)>& f, double t, double tol = 1e-12) {
    return gk([&](double tau) { return gk([&](double u) { return f(tau, u); }, 0.0, tau, tol); }, 0.0, t, tol);
}

// Composite 30-point Gauss-Legendre over int_0^t dtau int_0^tau ds f(tau, s)
// for vector-valued f, with `panels` panels per axis.
template <std::size_t N, class F>
std::array<double, N> gl_triangle(F&& f, double t, int panels) {
    using G = boost::math::quadrature::gauss<double, 30>;
    const auto& x = G::abscissa();
    const auto& w = G::weights();
    // Nodes and weights of the rule on [0, 1].
    std::vector<std::pair<double, double>> rule;
    for (std::size_t i = 0; i < x.size(); ++i) {
        rule.emplace_back(0.5 + 0.5 * x[i], 0.5 * w[i]);
        if (x[i] != 0.0) rule.emplace_back(0.5 - 0.5 * x[i], 0.5 * w[i]);
    }
    std::array<double, N> out{};
    const double h = t / panels;
    for (int a = 0; a < panels; ++a)
        for (const auto& [u, wu] : rule) {
            const double tau = (a + u) * h;
            const double hs = tau / panels;
            for (int b = 0; b < panels; ++b)
                for (const auto& [v, wv] : rule) {
                    const auto val = f(tau, (b + v) * hs);
                    for (std::size_t k = 0; k < N; ++k) out[k] += wu * h * wv * hs * val[k];
                }
        }
    return out;
}

// Relative comparison with an absolute floor given by the magnitude of the
// parts that were summed to form the reference.
inline bool close(double a, double ref, double rel, double scale = 0.0) {
    return std::abs(a - ref) <= rel * std::max(std::abs(ref), scale);
}

// Random weakly coupled system in internal units (M1 = omega01 = 1).
struct RandomSpecs {
    std::mt19937_64 rng;
    explicit RandomSpecs(std::uint64_t seed) : rng(seed) {}

    double uniform(double a, double b) { return std::uniform_real_distribution<double>(a, b)(rng); }

    SystemSpec next(bool allow_zero_temperature = true) {
        SystemSpec s;
        s.osc1 = {1.0, 1.0, uniform(0.001, 0.05), allow_zero_temperature && uniform(0, 1) < 0.2 ? 0.0 : uniform(0.05, 10.0), 0.5};
        const double w2 = uniform(1.3, 3.5);
        s.osc2 = {uniform(0.5, 5.0), w2, uniform(0.001, 0.05) * w2, uniform(0.0, 10.0), 0.0};
        s.osc2.sigma0_sq = uniform(0.3, 3.0) * 0.5 / (s.osc2.mass * w2);
        s.osc1.sigma0_sq = uniform(0.3, 3.0) * 0.5;
        s.bath1.nu_max = uniform(20, 80);
        s.bath2.nu_max = uniform(20, 80);
        const double max_rho = (w2 * w2 - 1.0) / (2 * w2) / default_kappa;
        s.lambda = lambda_from_rho(s, uniform(0.0, 0.9) * max_rho);
        return s;
    }

    // t in [lo, hi] with |sin(Omega_i t)| > margin for both modes.
    double time(const NormalModes& m, double lo, double hi, double margin = 0.05) {
        for (;;) {
            const double t = uniform(lo, hi);
            if (std::abs(std::sin(m.Omega1 * t)) > margin && std::abs(std::sin(m.Omega2 * t)) > margin) return t;
        }
    }
};

// Action integral along first-order-in-r classical paths with the
// damping-linearized Lagrangian. Endpoint vectors are ordered
// (Xi1, Xi2, Xf1, Xf2) for X and (xii1, xii2, xif1, xif2) for xi.
class ActionOracle {
public:
    using Vec = std::array<double, 4>;
    using Mat = std::array<std::array<double, 4>, 4>;

    ActionOracle(const SystemSpec& s, const NormalModes& m, double t) : s_(s), m_(m), t_(t) {}

    // Returns (single-oscillator part, interaction part) as bilinear matrices.
    std::pair<Mat, Mat> matrices() const {
        const auto X = paths(-1), Q = paths(+1);
        Mat S{}, P{};
        add(S, X[0], Q[0], 1, false, 1.0);
        add(S, X[1], Q[1], 2, false, 1.0);
        add(P, X[0], Q[1], 0, true, s_.lambda / 2);
        add(P, X[1], Q[0], 0, true, s_.lambda / 2);
        return {S, P};
    }

private:
    // Component key: (mode, is_sin). Each path is {order0, order1}.
    using Terms = std::map<std::pair<int, bool>, Vec>;
    using Path = std::array<Terms, 2>;

    static void accumulate(Terms& dst, const Terms& src) {
        for (const auto& [k, v] : src)
            for (int i = 0; i < 4; ++i) dst[k][i] += v[i];
    }

    // sign = -1 for X (decaying), +1 for xi (growing).
    std::array<Path, 2> paths(int sign) const {
        const double W[3] = {0, m_.Omega1, m_.Omega2};
        const double d[3] = {0, m_.delta1, m_.delta2};
        double n[3], mm[3];
        for (int k = 1; k <= 2; ++k) {
            n[k] = std::exp(-sign * d[k] * t_) / std::sin(W[k] * t_);
            mm[k] = std::cos(W[k] * t_) / std::sin(W[k] * t_);
        }
        auto e = [](int i, double c) {
            Vec v{};
            v[i] = c;
            return v;
        };
        // Amplitude of mode k fixed by start U and end V.
        auto amp = [&](int k, const Vec& U, const Vec& V) {
            Terms r;
            Vec sv, cv;
            for (int i = 0; i < 4; ++i) sv[i] = n[k] * V[i] - mm[k] * U[i], cv[i] = U[i];
            r[{k, true}] = sv;
            r[{k, false}] = cv;
            return r;
        };
        const double r1 = m_.r1, r2 = m_.r2;
        std::array<Path, 2> out;
        out[0][0] = amp(1, e(0, 1), e(2, 1));
        accumulate(out[0][1], amp(1, e(1, -r2), e(3, -r2)));
        accumulate(out[0][1], amp(2, e(1, r2), e(3, r2)));
        out[1][0] = amp(2, e(1, 1), e(3, 1));
        accumulate(out[1][1], amp(2, e(0, -r1), e(2, -r1)));
        accumulate(out[1][1], amp(1, e(0, r1), e(2, r1)));
        return out;
    }

    double pair_integral(int kx, bool sx, int kq, bool sq, int osc, bool interaction) const {
        const double W[3] = {0, m_.Omega1, m_.Omega2};
        const double d[3] = {0, m_.delta1, m_.delta2};
        const double M = osc ? s_.osc(osc).mass : 0.0;
        const double w0 = osc ? s_.osc(osc).omega0 : 0.0;
        const double g = osc ? s_.osc(osc).gamma : 0.0;
        auto trig = [](bool is_sin, double Om, double x) {
            return is_sin ? std::pair{std::sin(Om * x), Om * std::cos(Om * x)}
                          : std::pair{std::cos(Om * x), -Om * std::sin(Om * x)};
        };
        const double dk = d[kx], dl = d[kq];
        return gk(
            [&](double x) {
                const auto [X0, Xd] = trig(sx, W[kx], x);
                const auto [Q0, Qd] = trig(sq, W[kq], x);
                const double e = std::exp((dl - dk) * x);
                if (interaction) return X0 * Q0 * e;
                return M / 2 * (Xd * Qd + dl * Xd * Q0 - dk * X0 * Qd - w0 * w0 * X0 * Q0 - 2 * g * Xd * Q0) * e;
            },
            0.0, t_, 1e-14);
    }

    void add(Mat& out, const Path& X, const Path& Q, int osc, bool interaction, double scale) const {
        const std::pair<const Terms*, const Terms*> orders[3] = {{&X[0], &Q[0]}, {&X[1], &Q[0]}, {&X[0], &Q[1]}};
        for (const auto& [A, B] : orders)
            for (const auto& [kx, cx] : *A)
                for (const auto& [kq, cq] : *B) {
                    const double v = scale * pair_integral(kx.first, kx.second, kq.first, kq.second, osc, interaction);
                    for (int a = 0; a < 4; ++a)
                        for (int b = 0; b < 4; ++b) out[a][b] += v * cx[a] * cq[b];
                }
    }

    SystemSpec s_;
    NormalModes m_;
    double t_;
};

}  // namespace quasirelax::testing
