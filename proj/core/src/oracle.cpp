// oracle.cpp — discretized Ohmic baths and exact linear-Gaussian propagation
#include "quasirelax/oracle.hpp"

#include <unsupported/Eigen/MatrixFunctions>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <numbers>
#include <sstream>
#include <thread>

#include "quasirelax/influence.hpp"

namespace quasirelax {

namespace {

constexpr double pi = std::numbers::pi;

BathMode make_mode(double eta, double w, double dw) {
    BathMode m;
    m.omega = w;
    m.width = dw;
    // An undamped oscillator keeps its bath as free modes with zero coupling.
    m.mass = eta > 0 ? 2 * eta * dw / (pi * w * w) : dw / (w * w);
    m.coupling = eta > 0 ? m.mass * w * w : 0.0;
    return m;
}

double thermal_factor(double w, double T, double hbar, double k_B) {
    if (T <= 0) return 1.0;
    return coth_stable(hbar * w / (2 * k_B * T));
}

}  // namespace

DiscreteBath discretize_bath(double gamma, double mass, double nu_max, int n, double temperature) {
    if (n < 1) throw SpecError("discretize_bath: need at least one mode");
    if (!(nu_max > 0)) throw SpecError("discretize_bath: nu_max must be > 0");
    DiscreteBath b;
    b.temperature = temperature;
    b.eta = 2 * mass * gamma;
    const double dw = nu_max / n;
    for (int j = 1; j <= n; ++j) b.modes.push_back(make_mode(b.eta, j * dw, dw));
    b.t_rec = b.t_rec_coarse = 2 * pi / dw;
    return b;
}

DiscreteBath discretize_bath_resonant(double gamma, double mass, double nu_max, int n,
                                      double temperature, std::span<const double> resonances,
                                      double half_width, double window_fraction) {
    if (n < 2) throw SpecError("discretize_bath_resonant: need at least two modes");
    if (!(window_fraction > 0 && window_fraction < 1))
        throw SpecError("discretize_bath_resonant: window_fraction must lie in (0, 1)");
    if (!(half_width > 0) || resonances.empty())
        return discretize_bath(gamma, mass, nu_max, n, temperature);
    // Mode density g(w) = c0 + sum_k 1 / (1 + ((w - W_k)/h)^2); the Lorentzian
    // part carries window_fraction of the modes.
    const double h = half_width;
    auto lor = [&](double w) {
        double g = 0;
        for (double r : resonances) g += h * (std::atan((w - r) / h) + std::atan(r / h));
        return g;
    };
    const double c0 = (1 - window_fraction) / window_fraction * lor(nu_max) / nu_max;
    auto G = [&](double w) { return c0 * w + lor(w); };
    auto g = [&](double w) {
        double v = c0;
        for (double r : resonances) v += 1 / (1 + (w - r) * (w - r) / (h * h));
        return v;
    };
    const double total = G(nu_max);
    auto inverse = [&](double y) {
        double lo = 0, hi = nu_max;
        for (int it = 0; it < 200 && hi - lo > 1e-15 * nu_max; ++it) {
            const double mid = 0.5 * (lo + hi);
            (G(mid) < y ? lo : hi) = mid;
        }
        return 0.5 * (lo + hi);
    };
    DiscreteBath b;
    b.temperature = temperature;
    b.eta = 2 * mass * gamma;
    std::vector<double> edge(n + 1);
    for (int j = 0; j <= n; ++j) edge[j] = j == n ? nu_max : inverse(total * j / n);
    double coarse = 0;
    for (int j = 0; j < n; ++j) {
        const double w = inverse(total * (j + 0.5) / n);
        const double dw = edge[j + 1] - edge[j];
        coarse = std::max(coarse, dw);
        b.modes.push_back(make_mode(b.eta, w, dw));
    }
    double fine = 0;
    for (double r : resonances)
        if (r > 0 && r < nu_max) fine = std::max(fine, total / (n * g(r)));
    b.t_rec = 2 * pi / (fine > 0 ? fine : coarse);
    b.t_rec_coarse = 2 * pi / coarse;
    return b;
}

DiscreteBath discretize_bath(const SystemSpec& spec, int which, const DiscretizationConfig& cfg) {
    const auto& o = spec.osc(which);
    const auto& bs = spec.bath(which);
    if (cfg.grid == BathGrid::uniform)
        return discretize_bath(o.gamma, o.mass, bs.nu_max, cfg.modes, o.temperature);
    const auto md = derive_normal_modes(spec);
    const double res[2] = {md.Omega1, md.Omega2};
    const double hw = cfg.window_gammas * std::max(spec.osc1.gamma, spec.osc2.gamma);
    return discretize_bath_resonant(o.gamma, o.mass, bs.nu_max, cfg.modes, o.temperature, res, hw,
                                    cfg.window_fraction);
}

OracleSystem build_system(const SystemSpec& spec, const DiscreteBath& b1, const DiscreteBath& b2) {
    validate(spec);
    OracleSystem s;
    s.spec = spec;
    s.bath1 = b1;
    s.bath2 = b2;
    const int n1 = static_cast<int>(b1.modes.size()), n2 = static_cast<int>(b2.modes.size());
    const int n = 2 + n1 + n2;
    s.mass.resize(n);
    s.K = Eigen::MatrixXd::Zero(n, n);
    s.mass(0) = spec.osc1.mass;
    s.mass(1) = spec.osc2.mass;
    s.K(0, 0) = spec.osc1.mass * spec.osc1.omega0 * spec.osc1.omega0;
    s.K(1, 1) = spec.osc2.mass * spec.osc2.omega0 * spec.osc2.omega0;
    s.K(0, 1) = s.K(1, 0) = -spec.lambda;
    // (m w^2 / 2)(q - c x / m w^2)^2 carries the counter-term c^2 x^2 / 2 m w^2.
    int idx = 2;
    for (int k = 0; k < 2; ++k) {
        for (const auto& m : (k == 0 ? b1 : b2).modes) {
            if (!(m.mass > 0 && m.omega > 0)) throw SpecError("bath mode needs mass > 0 and omega > 0");
            const double kj = m.mass * m.omega * m.omega;
            s.mass(idx) = m.mass;
            s.K(idx, idx) = kj;
            s.K(k, k) += m.coupling * m.coupling / kj;
            s.K(k, idx) = s.K(idx, k) = -m.coupling;
            ++idx;
        }
    }
    return s;
}

Eigen::MatrixXd hamiltonian_matrix(const OracleSystem& sys) {
    const int n = sys.dof();
    Eigen::MatrixXd S = Eigen::MatrixXd::Zero(2 * n, 2 * n);
    S.topLeftCorner(n, n) = sys.K;
    S.bottomRightCorner(n, n) = sys.mass.cwiseInverse().asDiagonal();
    return S;
}

Eigen::MatrixXd symplectic_form(int n) {
    Eigen::MatrixXd J = Eigen::MatrixXd::Zero(2 * n, 2 * n);
    J.topRightCorner(n, n).setIdentity();
    J.bottomLeftCorner(n, n) = -Eigen::MatrixXd::Identity(n, n);
    return J;
}

Eigen::MatrixXd assemble_drift(const OracleSystem& sys) {
    if (sys.K.rows() != sys.dof() || sys.K.cols() != sys.dof())
        throw std::invalid_argument("assemble_drift: stiffness and mass dimensions differ");
    return symplectic_form(sys.dof()) * hamiltonian_matrix(sys);
}

OracleState initial_full_state(const OracleSystem& sys) {
    const int n = sys.dof();
    const double hbar = sys.spec.hbar, k_B = sys.spec.k_B;
    OracleState st;
    st.mean = Eigen::VectorXd::Zero(2 * n);
    st.cov = Eigen::MatrixXd::Zero(2 * n, 2 * n);
    for (int i = 0; i < 2; ++i) {
        const double s0 = sys.spec.osc(i + 1).sigma0_sq;
        st.cov(i, i) = s0;
        st.cov(n + i, n + i) = hbar * hbar / (4 * s0);
    }
    int idx = 2;
    for (int k = 0; k < 2; ++k) {
        const auto& b = k == 0 ? sys.bath1 : sys.bath2;
        for (const auto& m : b.modes) {
            const double c = thermal_factor(m.omega, b.temperature, hbar, k_B);
            st.cov(idx, idx) = hbar * c / (2 * m.mass * m.omega);
            st.cov(n + idx, n + idx) = hbar * m.mass * m.omega * c / 2;
            ++idx;
        }
    }
    return st;
}

ModePropagator::ModePropagator(const OracleSystem& sys, const OracleState& s0)
    : n_(sys.dof()), t0_(s0.t) {
    if (s0.cov.rows() != 2 * n_ || s0.mean.size() != 2 * n_)
        throw std::invalid_argument("ModePropagator: state dimension does not match the system");
    sqrt_m_ = sys.mass.cwiseSqrt();
    const Eigen::VectorXd inv = sqrt_m_.cwiseInverse();
    const Eigen::MatrixXd Kt = inv.asDiagonal() * sys.K * inv.asDiagonal();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(Kt);
    if (es.info() != Eigen::Success) throw std::runtime_error("ModePropagator: eigensolver failed");
    if (es.eigenvalues().minCoeff() <= 0)
        throw std::runtime_error("ModePropagator: stiffness matrix is not positive definite");
    w_ = es.eigenvalues().cwiseSqrt();
    U_ = es.eigenvectors();
    // Mode coordinates: a = U^T M^{1/2} q, b = U^T M^{-1/2} p.
    Eigen::MatrixXd T = Eigen::MatrixXd::Zero(2 * n_, 2 * n_);
    T.topLeftCorner(n_, n_) = U_.transpose() * sqrt_m_.asDiagonal();
    T.bottomRightCorner(n_, n_) = U_.transpose() * inv.asDiagonal();
    mean0_ = T * s0.mean;
    cov0_ = T * s0.cov * T.transpose();
}

Eigen::MatrixXd ModePropagator::flow(double t) const {
    const double tau = t - t0_;
    const Eigen::ArrayXd c = (w_.array() * tau).cos(), s = (w_.array() * tau).sin();
    const Eigen::VectorXd inv = sqrt_m_.cwiseInverse();
    const Eigen::MatrixXd L = inv.asDiagonal() * U_;   // q = L a
    const Eigen::MatrixXd P = sqrt_m_.asDiagonal() * U_;  // p = P b
    const Eigen::MatrixXd Ra = U_.transpose() * sqrt_m_.asDiagonal();
    const Eigen::MatrixXd Rb = U_.transpose() * inv.asDiagonal();
    Eigen::MatrixXd F(2 * n_, 2 * n_);
    F.topLeftCorner(n_, n_) = L * c.matrix().asDiagonal() * Ra;
    F.topRightCorner(n_, n_) = L * (s / w_.array()).matrix().asDiagonal() * Rb;
    F.bottomLeftCorner(n_, n_) = -P * (s * w_.array()).matrix().asDiagonal() * Ra;
    F.bottomRightCorner(n_, n_) = P * c.matrix().asDiagonal() * Rb;
    return F;
}

OracleState ModePropagator::state(double t) const {
    const double tau = t - t0_;
    const Eigen::ArrayXd c = (w_.array() * tau).cos(), s = (w_.array() * tau).sin();
    // Rotation in mode coordinates, then back to (q, p).
    Eigen::MatrixXd R = Eigen::MatrixXd::Zero(2 * n_, 2 * n_);
    R.topLeftCorner(n_, n_) = c.matrix().asDiagonal();
    R.topRightCorner(n_, n_) = (s / w_.array()).matrix().asDiagonal();
    R.bottomLeftCorner(n_, n_) = (-s * w_.array()).matrix().asDiagonal();
    R.bottomRightCorner(n_, n_) = c.matrix().asDiagonal();
    Eigen::MatrixXd B = Eigen::MatrixXd::Zero(2 * n_, 2 * n_);
    B.topLeftCorner(n_, n_) = sqrt_m_.cwiseInverse().asDiagonal() * U_;
    B.bottomRightCorner(n_, n_) = sqrt_m_.asDiagonal() * U_;
    const Eigen::MatrixXd G = B * R;
    OracleState out;
    out.t = t;
    out.mean = G * mean0_;
    out.cov = G * cov0_ * G.transpose();
    return out;
}

ReducedMoments ModePropagator::reduced(double t) const {
    const double tau = t - t0_;
    const Eigen::ArrayXd c = (w_.array() * tau).cos(), s = (w_.array() * tau).sin();
    // Rows of the flow for x1, x2, p1, p2 in mode coordinates.
    Eigen::MatrixXd G(4, 2 * n_);
    for (int a = 0; a < 2; ++a) {
        const Eigen::ArrayXd u = U_.row(a).transpose().array();
        const double im = 1.0 / sqrt_m_(a), sm = sqrt_m_(a);
        G.row(a).head(n_) = (im * u * c).matrix().transpose();
        G.row(a).tail(n_) = (im * u * s / w_.array()).matrix().transpose();
        G.row(2 + a).head(n_) = (-sm * u * s * w_.array()).matrix().transpose();
        G.row(2 + a).tail(n_) = (sm * u * c).matrix().transpose();
    }
    ReducedMoments r;
    r.t = t;
    r.cov = G * cov0_ * G.transpose();
    return r;
}

OracleState propagate(const OracleSystem& sys, const OracleState& s0, double t, Propagation method) {
    if (method == Propagation::normal_modes) return ModePropagator(sys, s0).state(t);
    const Eigen::MatrixXd A = assemble_drift(sys) * (t - s0.t);
    const Eigen::MatrixXd F = A.exp();
    OracleState out;
    out.t = t;
    out.mean = F * s0.mean;
    out.cov = F * s0.cov * F.transpose();
    return out;
}

double energy(const OracleSystem& sys, const OracleState& s) {
    const Eigen::MatrixXd S = hamiltonian_matrix(sys);
    return 0.5 * ((S * s.cov).trace() + s.mean.dot(S * s.mean));
}

double min_symplectic_eigenvalue(const Eigen::MatrixXd& cov) {
    const int n = static_cast<int>(cov.rows()) / 2;
    Eigen::EigenSolver<Eigen::MatrixXd> es(symplectic_form(n) * cov, false);
    return es.eigenvalues().cwiseAbs().minCoeff();
}

double uncertainty_margin(const Eigen::MatrixXd& cov, double hbar) {
    const int n = static_cast<int>(cov.rows()) / 2;
    const Eigen::MatrixXcd H = cov.cast<std::complex<double>>() +
                               std::complex<double>(0, hbar / 2) * symplectic_form(n).cast<std::complex<double>>();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(H, Eigen::EigenvaluesOnly);
    return es.eigenvalues().minCoeff();
}

ReducedMoments reduce(const OracleState& s) {
    const int n = static_cast<int>(s.cov.rows()) / 2;
    const int idx[4] = {0, 1, n, n + 1};
    ReducedMoments r;
    r.t = s.t;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) r.cov(i, j) = s.cov(idx[i], idx[j]);
    return r;
}

OracleRun run_oracle(const SystemSpec& spec, std::span<const double> grid, const OracleConfig& cfg) {
    const auto b1 = discretize_bath(spec, 1, cfg.bath);
    const auto b2 = discretize_bath(spec, 2, cfg.bath);
    const auto sys = build_system(spec, b1, b2);
    const auto s0 = initial_full_state(sys);
    OracleRun run;
    run.grid.assign(grid.begin(), grid.end());
    run.moments.resize(grid.size());
    run.t_rec = std::min(b1.t_rec, b2.t_rec);
    run.t_rec_coarse = std::min(b1.t_rec_coarse, b2.t_rec_coarse);

    if (cfg.method == Propagation::expm) {
        for (std::size_t i = 0; i < grid.size(); ++i) run.moments[i] = reduce(propagate(sys, s0, grid[i], cfg.method));
    } else {
        const ModePropagator prop(sys, s0);
        int threads = cfg.threads <= 0 ? static_cast<int>(std::max(1u, std::thread::hardware_concurrency()))
                                       : cfg.threads;
        threads = std::max(1, std::min<int>(threads, static_cast<int>(grid.size())));
        std::atomic<std::size_t> next{0};
        auto worker = [&] {
            for (std::size_t i = next++; i < grid.size(); i = next++) run.moments[i] = prop.reduced(grid[i]);
        };
        if (threads == 1) {
            worker();
        } else {
            std::vector<std::thread> pool;
            for (int k = 0; k < threads; ++k) pool.emplace_back(worker);
            for (auto& th : pool) th.join();
        }
    }
    if (!grid.empty() && grid.back() >= run.t_rec / 2) {
        std::ostringstream os;
        os << "grid extends to t = " << grid.back() << " beyond T_rec/2 = " << run.t_rec / 2
           << "; later points are outside the discretization window";
        run.warnings.push_back(os.str());
    }
    return run;
}

MomentSeries moments_of(const Trajectory& tr) {
    MomentSeries m;
    m.t = tr.grid;
    for (const auto& s : tr.states) {
        m.x1x1.push_back(s.sigma1_sq);
        m.x2x2.push_back(s.sigma2_sq);
        m.x1x2.push_back(-s.sigma1_sq * s.sigma2_sq * s.inv_beta12);
    }
    return m;
}

MomentSeries moments_of(const OracleRun& run) {
    MomentSeries m;
    m.t = run.grid;
    for (const auto& r : run.moments) {
        m.x1x1.push_back(r.x1x1());
        m.x2x2.push_back(r.x2x2());
        m.x1x2.push_back(r.x1x2());
    }
    return m;
}

ErrorReport compare(const MomentSeries& a, const MomentSeries& o, double window_end,
                    const ComparisonThresholds& th) {
    const std::size_t n = a.t.size();
    if (o.t.size() != n || a.x1x1.size() != n || o.x1x1.size() != n)
        throw std::invalid_argument("compare: series lengths differ");
    for (std::size_t i = 0; i < n; ++i)
        if (std::abs(a.t[i] - o.t[i]) > 1e-12 * std::max(1.0, std::abs(a.t[i])))
            throw std::invalid_argument("compare: time grids differ");
    ErrorReport rep;
    rep.window_end = window_end;
    rep.thresholds = th;
    double max_o12 = 0, max_d12 = 0, scale = 0;
    std::size_t used = 0;
    for (std::size_t i = 0; i < n; ++i) {
        ComparisonRow r;
        r.t = a.t[i];
        r.a11 = a.x1x1[i], r.o11 = o.x1x1[i], r.e11 = std::abs(r.a11 - r.o11) / std::abs(r.o11);
        r.a22 = a.x2x2[i], r.o22 = o.x2x2[i], r.e22 = std::abs(r.a22 - r.o22) / std::abs(r.o22);
        r.a12 = a.x1x2[i], r.o12 = o.x1x2[i];
        r.in_window = r.t < window_end;
        if (r.in_window) {
            ++used;
            rep.max_err_var1 = std::max(rep.max_err_var1, r.e11);
            rep.max_err_var2 = std::max(rep.max_err_var2, r.e22);
            rep.mean_err_var1 += r.e11;
            rep.mean_err_var2 += r.e22;
            max_o12 = std::max(max_o12, std::abs(r.o12));
            scale = std::max(scale, std::sqrt(std::abs(r.o11 * r.o22)));
            max_d12 = std::max(max_d12, std::abs(r.a12 - r.o12));
        }
        rep.rows.push_back(r);
    }
    if (used) rep.mean_err_var1 /= used, rep.mean_err_var2 /= used;
    // Below 1e-8 of the variance scale the cross moment is round-off (lambda = 0).
    const double floor = 1e-8 * scale;
    rep.cross_rel = max_d12 / std::max(max_o12, floor);
    if (max_o12 > floor)
        for (const auto& r : rep.rows)
            if (r.in_window && std::abs(r.o12) >= th.sign_floor * max_o12 && r.a12 * r.o12 <= 0)
                rep.cross_sign_agrees = false;
    return rep;
}

ErrorReport compare(const Trajectory& analytic, const OracleRun& oracle, const ComparisonThresholds& th) {
    return compare(moments_of(analytic), moments_of(oracle), oracle.t_rec / 2, th);
}

}  // namespace quasirelax
