// density.cpp — variances and cross precision of the reduced Gaussian state
#include "quasirelax/density.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <exception>
#include <limits>
#include <mutex>
#include <thread>

namespace quasirelax {

double GaussianState::beta12() const {
    return inv_beta12 == 0.0 ? std::numeric_limits<double>::infinity() : 1.0 / inv_beta12;
}

SecondMoments second_moments(const GaussianState& s) {
    if (!s.positive_definite()) throw std::domain_error("second_moments: state is not positive definite");
    const double det = s.precision_det();
    SecondMoments m;
    m.x1x1 = (1.0 / s.sigma2_sq) / det;
    m.x2x2 = (1.0 / s.sigma1_sq) / det;
    m.x1x2 = -s.inv_beta12 / det;
    return m;
}

GaussianState from_moments(const SecondMoments& m, double t) {
    const double det = m.x1x1 * m.x2x2 - m.x1x2 * m.x1x2;
    if (!(m.x1x1 > 0 && m.x2x2 > 0 && det > 0))
        throw std::domain_error("from_moments: covariance is not positive definite");
    GaussianState s;
    s.t = t;
    s.sigma1_sq = det / m.x2x2;
    s.sigma2_sq = det / m.x1x1;
    s.inv_beta12 = -m.x1x2 / det;
    s.norm = 1.0 / (2 * M_PI * std::sqrt(det));
    return s;
}

double trace_norm(double s1, double s2, double ib) {
    const double det = 1.0 / (s1 * s2) - ib * ib;
    if (!(det > 0)) return std::numeric_limits<double>::quiet_NaN();
    return std::sqrt(det) / (2 * M_PI);
}

NormalModes density_modes(const SystemSpec& spec, ModeSet set) {
    return set == ModeSet::exact ? derive_normal_modes(spec) : linearized_modes(spec);
}

GaussianState initial_state(const SystemSpec& spec) {
    GaussianState s;
    s.sigma1_sq = spec.osc1.sigma0_sq;
    s.sigma2_sq = spec.osc2.sigma0_sq;
    s.inv_beta12 = 0.0;
    s.norm = trace_norm(s.sigma1_sq, s.sigma2_sq, 0.0);
    return s;
}

namespace {

double a_of(const OscillatorSpec& o) { return 1.0 / (8.0 * o.sigma0_sq); }

// sigma^2 = (D4^2 + 4 a hbar (C + hbar a)) / (8 a D3^2), multiplied through by
// sin^2 e^{-2 delta t} so that every factor stays finite.
double variance_hat(const StableSingle& k, double C_hat, double a, double hbar) {
    const double den = k.D4_hat * k.D4_hat + 4 * a * hbar * (C_hat + hbar * a * k.s_hat * k.s_hat);
    return den / (8 * a * k.D3_hat * k.D3_hat);
}

struct ModeResponse {
    double phi, psi;  // response to initial displacement and to initial velocity
};
ModeResponse mode_response(double t, double W, double d) {
    const double e = std::exp(-d * t);
    return {e * (std::cos(W * t) + d / W * std::sin(W * t)), e * std::sin(W * t) / W};
}

GaussianState stable_state(double t, const SystemSpec& spec, const NormalModes& md,
                           const QuadratureConfig& q) {
    const auto& o1 = spec.osc1;
    const auto& o2 = spec.osc2;
    const double hbar = spec.hbar;
    const double W1 = md.Omega1, W2 = md.Omega2, d1 = md.delta1, d2 = md.delta2;
    const bool coupled = md.r1 != 0.0 || md.r2 != 0.0;

    // Per bath: |g_b|^2 and Re[g1 conj g2] with g_k the response transform.
    std::array<std::array<double, 2>, 2> J{};
    double err = 0.0;
    for (int b = 1; b <= 2; ++b) {
        const auto& o = spec.osc(b);
        auto f = [&](double w) {
            const double bw = bath_weight(w, o.temperature, hbar, spec.k_B);
            const auto g1 = response_transform(w, t, W1, d1).s;
            if (!coupled) {
                const auto& gb = b == 1 ? g1 : response_transform(w, t, W2, d2).s;
                return std::array<double, 2>{bw * std::norm(gb), 0.0};
            }
            const auto g2 = response_transform(w, t, W2, d2).s;
            const auto& gb = b == 1 ? g1 : g2;
            return std::array<double, 2>{bw * std::norm(gb), bw * (g1 * std::conj(g2)).real()};
        };
        const auto br = coupled ? omega_breaks(spec.bath(b).nu_max, {W1, W2}, {d1, d2}, t)
                                : omega_breaks(spec.bath(b).nu_max, {md.Omega(b)}, {md.delta(b)}, t);
        const auto r = integrate<2>(f, br, q);
        J[b - 1] = r.value;
        err += o.mass * o.gamma / M_PI * r.abs_error;
    }

    GaussianState s;
    s.t = t;
    const double C1_hat = o1.mass * o1.gamma / M_PI * J[0][0];
    const double C2_hat = o2.mass * o2.gamma / M_PI * J[1][0];
    s.sigma1_sq = variance_hat(stable_single(t, 1, md, spec), C1_hat, a_of(o1), hbar);
    s.sigma2_sq = variance_hat(stable_single(t, 2, md, spec), C2_hat, a_of(o2), hbar);

    if (coupled) {
        // First-order cross covariance from the mixed mode responses.
        const auto m1 = mode_response(t, W1, d1), m2 = mode_response(t, W2, d2);
        const double r1 = md.r1, r2 = md.r2;
        const double sx1 = o1.sigma0_sq, sx2 = o2.sigma0_sq;
        const double sv1 = hbar * hbar / (4 * sx1 * o1.mass * o1.mass);
        const double sv2 = hbar * hbar / (4 * sx2 * o2.mass * o2.mass);
        double cov12 = m1.phi * r1 * (m1.phi - m2.phi) * sx1 + r2 * (m2.phi - m1.phi) * m2.phi * sx2 +
                       m1.psi * r1 * (m1.psi - m2.psi) * sv1 + r2 * (m2.psi - m1.psi) * m2.psi * sv2;
        // Bath noise, response kernels g_k = sin(W_k u) e^{-d_k u} / W_k.
        const double g11 = 1.0 / (W1 * W1), g22 = 1.0 / (W2 * W2), g12 = 1.0 / (W1 * W2);
        const double k1 = 2 * hbar * o1.gamma / M_PI;
        const double k2 = 2 * hbar * o2.gamma / M_PI;
        cov12 += k1 * (r1 / o1.mass * g11 * J[0][0] + r2 / o2.mass * g12 * J[0][1]);
        cov12 += k2 * (r1 / o1.mass * g12 * J[1][1] + r2 / o2.mass * g22 * J[1][0]);
        s.inv_beta12 = -cov12 / (s.sigma1_sq * s.sigma2_sq);
    }
    s.norm = trace_norm(s.sigma1_sq, s.sigma2_sq, s.inv_beta12);
    s.abs_error = err;
    return s;
}

GaussianState naive_at(double t, const SystemSpec& spec, const NormalModes& md,
                       const DensityOptions& opt) {
    const auto tab = eval_kernels(t, md, spec, opt.tables);
    const auto k1 = eval_ABC(t, 1, spec, md, opt.quad, opt.tables.node_eps);
    const auto k2 = eval_ABC(t, 2, spec, md, opt.quad, opt.tables.node_eps);
    const auto e = eval_E(t, spec, md, opt.quad, opt.tables.node_eps);
    const double hbar = spec.hbar;
    const double a1 = a_of(spec.osc1), a2 = a_of(spec.osc2);
    const double den1 = tab.d(4) * tab.d(4) + 4 * a1 * hbar * (k1.C + hbar * a1);
    const double den2 = tab.dp(4) * tab.dp(4) + 4 * a2 * hbar * (k2.C + hbar * a2);

    GaussianState s;
    s.t = t;
    s.sigma1_sq = 0.5 / (tab.d(3) * tab.d(3) / (hbar * (k1.C + hbar * a1)) * (1 - tab.d(4) * tab.d(4) / den1));
    s.sigma2_sq = 0.5 / (tab.dp(3) * tab.dp(3) / (hbar * (k2.C + hbar * a2)) * (1 - tab.dp(4) * tab.dp(4) / den2));
    const auto f = eval_f(tab, k1.C, k2.C, e.E1, a1, a2, hbar);
    s.inv_beta12 = 2 * tab.dp(3) * f.f1 / (hbar * (k2.C + hbar * a2)) * (1 - tab.dp(4) * tab.dp(4) / den2) +
                   2 * tab.d(3) * f.f2 / (hbar * (k1.C + hbar * a1)) * (1 - tab.d(4) * tab.d(4) / den1);
    s.norm = trace_norm(s.sigma1_sq, s.sigma2_sq, s.inv_beta12);
    s.abs_error = k1.abs_error + k2.abs_error + e.abs_error;
    return s;
}

GaussianState naive_state(double t, const SystemSpec& spec, const NormalModes& md,
                          const DensityOptions& opt) {
    try {
        return naive_at(t, spec, md, opt);
    } catch (const NodeProximityError&) {
        const double h = opt.naive_shift * t;
        const auto lo = naive_at(t - h, spec, md, opt);
        const auto hi = naive_at(t + h, spec, md, opt);
        GaussianState s;
        s.t = t;
        s.sigma1_sq = 0.5 * (lo.sigma1_sq + hi.sigma1_sq);
        s.sigma2_sq = 0.5 * (lo.sigma2_sq + hi.sigma2_sq);
        s.inv_beta12 = 0.5 * (lo.inv_beta12 + hi.inv_beta12);
        s.norm = trace_norm(s.sigma1_sq, s.sigma2_sq, s.inv_beta12);
        s.abs_error = std::max(lo.abs_error, hi.abs_error);
        return s;
    }
}

}  // namespace

GaussianState reduced_state(double t, const SystemSpec& spec, const DensityOptions& opt) {
    if (t < 0) throw std::invalid_argument("reduced_state: t must be >= 0");
    if (t == 0.0) return initial_state(spec);
    const auto md = density_modes(spec, opt.modes);
    return opt.naive ? naive_state(t, spec, md, opt) : stable_state(t, spec, md, opt.quad);
}

double norm_shape(double t, const SystemSpec& spec, const DensityOptions& opt) {
    const auto md = density_modes(spec, opt.modes);
    double out = 1.0;
    for (int i = 1; i <= 2; ++i) {
        const auto& o = spec.osc(i);
        const double a = a_of(o), hbar = spec.hbar;
        const auto k = stable_single(t, i, md, spec);
        const double C_hat = t == 0.0 ? 0.0 : eval_ABC(t, i, spec, md, opt.quad).C_hat;
        out /= std::sqrt(C_hat + hbar * a * k.s_hat * k.s_hat + k.D4_hat * k.D4_hat / (4 * hbar * a));
    }
    return out;
}

double Trajectory::beta12_norm(std::size_t i) const {
    return std::sqrt(sigma1_fdt * sigma2_fdt) * states[i].inv_beta12;
}

double zeroing_time(const Trajectory& tr, double fraction) {
    const std::size_t n = tr.states.size();
    double peak = 0.0;
    for (std::size_t i = 0; i < n; ++i) peak = std::max(peak, std::abs(tr.beta12_norm(i)));
    if (peak == 0.0) return n ? tr.grid.front() : std::numeric_limits<double>::infinity();
    std::size_t k = n;
    while (k > 0 && std::abs(tr.beta12_norm(k - 1)) < fraction * peak) --k;
    return k == n ? std::numeric_limits<double>::infinity() : tr.grid[k];
}

Trajectory trajectory(const SystemSpec& spec, std::span<const double> grid,
                      const DensityOptions& opt, int threads) {
    for (std::size_t i = 1; i < grid.size(); ++i)
        if (!(grid[i] > grid[i - 1])) throw std::invalid_argument("trajectory: grid must be strictly increasing");
    validate(spec);
    const auto start = std::chrono::steady_clock::now();
    Trajectory tr;
    tr.grid.assign(grid.begin(), grid.end());
    tr.states.resize(grid.size());
    tr.sigma1_fdt = fdt_variance(spec.osc1, spec.hbar, spec.k_B, opt.quad).value;
    tr.sigma2_fdt = fdt_variance(spec.osc2, spec.hbar, spec.k_B, opt.quad).value;

    if (threads <= 0) threads = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
    threads = std::min<int>(threads, static_cast<int>(std::max<std::size_t>(1, grid.size())));
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex fail_mutex;
    auto worker = [&] {
        for (std::size_t i = next++; i < grid.size(); i = next++) {
            try {
                tr.states[i] = reduced_state(grid[i], spec, opt);
            } catch (...) {
                std::lock_guard lock(fail_mutex);
                if (!failure) failure = std::current_exception();
                next = grid.size();
            }
        }
    };
    if (threads == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (int k = 0; k < threads; ++k) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }
    if (failure) std::rethrow_exception(failure);
    tr.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return tr;
}

EquilibriumComparison equilibrium_density(const OscillatorSpec& o, double hbar, double k_B,
                                          const QuadratureConfig& q) {
    EquilibriumComparison c;
    const double x = o.temperature > 0 ? hbar * o.omega0 / (2 * k_B * o.temperature)
                                       : std::numeric_limits<double>::infinity();
    const double coth = std::isinf(x) ? 1.0 : coth_stable(x);
    c.tanh_variance = hbar * coth / (2 * o.mass * o.omega0);
    c.fdt_variance = fdt_variance(o, hbar, k_B, q).value;
    c.relative_gap = c.fdt_variance / c.tanh_variance - 1.0;
    return c;
}

}  // namespace quasirelax
