// quadrature.hpp — globally adaptive Gauss-Kronrod (7/15) for vector integrands
#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <queue>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace quasirelax {

struct QuadratureConfig {
    double omega_rel_tol = 1e-8;
    double omega_abs_tol = 1e-14;
    int max_panels = 20000;
};

class QuadratureError : public std::runtime_error {
public:
    QuadratureError(const std::string& what, double estimate, double value)
        : std::runtime_error(what), error_estimate(estimate), achieved_value(value) {}
    double error_estimate;
    double achieved_value;
};

template <std::size_t N>
struct QuadResult {
    std::array<double, N> value{};
    double abs_error = 0.0;  // max over components
    int panels = 0;
};

namespace detail {

inline constexpr std::array<double, 8> kronrod_x = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
inline constexpr std::array<double, 8> kronrod_w = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
// Gauss weights on the odd Kronrod nodes (x[1], x[3], x[5], x[7]).
inline constexpr std::array<double, 4> gauss_w = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

template <std::size_t N>
struct Panel {
    double a, b;
    std::array<double, N> value;
    double error;
    bool operator<(const Panel& o) const { return error < o.error; }
};

template <std::size_t N, class F>
Panel<N> gk15(F& f, double a, double b) {
    const double c = 0.5 * (a + b), h = 0.5 * (b - a);
    std::array<double, N> k{}, g{};
    auto acc = [&](const std::array<double, N>& v, double wk, double wg) {
        for (std::size_t i = 0; i < N; ++i) {
            k[i] += wk * v[i];
            g[i] += wg * v[i];
        }
    };
    acc(f(c), kronrod_w[7], gauss_w[3]);
    for (int j = 0; j < 7; ++j) {
        const double dx = h * kronrod_x[j];
        const double wg = (j % 2 == 1) ? gauss_w[j / 2] : 0.0;
        acc(f(c - dx), kronrod_w[j], wg);
        acc(f(c + dx), kronrod_w[j], wg);
    }
    Panel<N> p{a, b, {}, 0.0};
    for (std::size_t i = 0; i < N; ++i) {
        p.value[i] = k[i] * h;
        p.error = std::max(p.error, std::abs((k[i] - g[i]) * h));
    }
    return p;
}

}  // namespace detail

// Integrates f over [breaks.front(), breaks.back()], starting from one panel
// per interval between consecutive (sorted, deduplicated) break points.
// f(x) must return std::array<double, N>. Convergence: total error estimate
// below max(abs_tol, rel_tol * max_i |value_i|).
template <std::size_t N, class F>
QuadResult<N> integrate(F&& f, std::span<const double> breaks, const QuadratureConfig& cfg) {
    std::vector<double> pts(breaks.begin(), breaks.end());
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    QuadResult<N> out;
    if (pts.size() < 2) return out;

    std::priority_queue<detail::Panel<N>> heap;
    std::array<double, N> total{};
    double err = 0.0;
    auto push = [&](detail::Panel<N> p) {
        for (std::size_t i = 0; i < N; ++i) total[i] += p.value[i];
        err += p.error;
        heap.push(std::move(p));
    };
    for (std::size_t i = 0; i + 1 < pts.size(); ++i) push(detail::gk15<N>(f, pts[i], pts[i + 1]));
    int panels = static_cast<int>(heap.size());

    auto target = [&] {
        double scale = 0.0;
        for (double v : total) scale = std::max(scale, std::abs(v));
        return std::max(cfg.omega_abs_tol, cfg.omega_rel_tol * scale);
    };
    while (err > target()) {
        if (panels >= cfg.max_panels) {
            double scale = 0.0;
            for (double v : total) scale = std::max(scale, std::abs(v));
            throw QuadratureError("quadrature did not converge: error estimate " +
                                      std::to_string(err) + " vs value scale " +
                                      std::to_string(scale),
                                  err, scale);
        }
        auto worst = heap.top();
        heap.pop();
        for (std::size_t i = 0; i < N; ++i) total[i] -= worst.value[i];
        err -= worst.error;
        const double mid = 0.5 * (worst.a + worst.b);
        if (!(mid > worst.a && mid < worst.b)) {
            throw QuadratureError("quadrature panel below machine resolution", err, 0.0);
        }
        push(detail::gk15<N>(f, worst.a, mid));
        push(detail::gk15<N>(f, mid, worst.b));
        ++panels;
    }
    // Re-sum to remove drift from the running subtraction.
    total = {};
    err = 0.0;
    while (!heap.empty()) {
        const auto& p = heap.top();
        for (std::size_t i = 0; i < N; ++i) total[i] += p.value[i];
        err += p.error;
        heap.pop();
    }
    out.value = total;
    out.abs_error = err;
    out.panels = panels;
    return out;
}

template <class F>
QuadResult<1> integrate_scalar(F&& f, std::span<const double> breaks, const QuadratureConfig& cfg) {
    return integrate<1>([&](double x) { return std::array<double, 1>{f(x)}; }, breaks, cfg);
}

}  // namespace quasirelax
