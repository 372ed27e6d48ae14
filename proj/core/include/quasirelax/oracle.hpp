// oracle.hpp — full oscillator plus discretized-bath Gaussian propagation
#pragma once

#include <Eigen/Dense>
#include <span>
#include <string>
#include <vector>

#include "quasirelax/density.hpp"
#include "quasirelax/model.hpp"

namespace quasirelax {

struct BathMode {
    double omega = 0.0;
    double mass = 0.0;
    double coupling = 0.0;  // c_j = m_j omega_j^2
    double width = 0.0;     // frequency bin represented by this mode
};

struct DiscreteBath {
    std::vector<BathMode> modes;
    double temperature = 0.0;
    double eta = 0.0;
    double t_rec = 0.0;         // 2 pi / local spacing at the resonances
    double t_rec_coarse = 0.0;  // 2 pi / largest spacing anywhere
};

enum class BathGrid { uniform, resonant };

struct DiscretizationConfig {
    int modes = 400;
    BathGrid grid = BathGrid::resonant;
    // Resonant grid: this share of the modes is concentrated within about
    // window_gammas * max(gamma) of each normal-mode frequency.
    double window_fraction = 0.7;
    double window_gammas = 5.0;
};

// N modes at omega_j = j nu_max / N with m_j = 2 eta dw / (pi omega_j^2).
DiscreteBath discretize_bath(double gamma, double mass, double nu_max, int n, double temperature);

// Graded grid whose mode density is a flat floor plus a Lorentzian of half
// width half_width at each resonance; window_fraction of the modes belong to
// the Lorentzian part. Mode j sits at the centre of its equal-count bin.
DiscreteBath discretize_bath_resonant(double gamma, double mass, double nu_max, int n,
                                      double temperature, std::span<const double> resonances,
                                      double half_width, double window_fraction);

DiscreteBath discretize_bath(const SystemSpec& spec, int which, const DiscretizationConfig& cfg);

// H = p^T M^{-1} p / 2 + q^T K q / 2 over q = (x1, x2, bath1, bath2).
struct OracleSystem {
    SystemSpec spec;
    DiscreteBath bath1, bath2;
    Eigen::VectorXd mass;
    Eigen::MatrixXd K;

    int dof() const { return static_cast<int>(mass.size()); }
};

OracleSystem build_system(const SystemSpec& spec, const DiscreteBath& b1, const DiscreteBath& b2);

// S = diag(K, M^{-1}) on z = (q, p).
Eigen::MatrixXd hamiltonian_matrix(const OracleSystem& sys);
// A = J S with J = [[0, I], [-I, 0]].
Eigen::MatrixXd assemble_drift(const OracleSystem& sys);
Eigen::MatrixXd symplectic_form(int dof);

struct OracleState {
    double t = 0.0;
    Eigen::VectorXd mean;
    Eigen::MatrixXd cov;  // symmetrized second moments over (q, p)
};

OracleState initial_full_state(const OracleSystem& sys);

enum class Propagation { normal_modes, expm };

// Reduced block over (x1, x2, p1, p2).
struct ReducedMoments {
    double t = 0.0;
    Eigen::Matrix4d cov = Eigen::Matrix4d::Zero();
    double x1x1() const { return cov(0, 0); }
    double x2x2() const { return cov(1, 1); }
    double x1x2() const { return cov(0, 1); }
};

// Exact propagation through the eigenmodes of M^{-1/2} K M^{-1/2}.
class ModePropagator {
public:
    ModePropagator(const OracleSystem& sys, const OracleState& initial);

    Eigen::MatrixXd flow(double t) const;  // e^{A t}
    OracleState state(double t) const;     // full, O(dof^3)
    ReducedMoments reduced(double t) const;  // O(dof^2)
    const Eigen::VectorXd& frequencies() const { return w_; }

private:
    int n_;
    Eigen::VectorXd w_;
    Eigen::MatrixXd U_;
    Eigen::VectorXd sqrt_m_;
    Eigen::VectorXd mean0_;  // in mode coordinates
    Eigen::MatrixXd cov0_;   // in mode coordinates
    double t0_;
};

OracleState propagate(const OracleSystem& sys, const OracleState& s0, double t,
                      Propagation method = Propagation::normal_modes);

double energy(const OracleSystem& sys, const OracleState& s);
// Smallest |nu| among the eigenvalues i nu of J cov; ordering (q..., p...).
double min_symplectic_eigenvalue(const Eigen::MatrixXd& cov);
// Smallest eigenvalue of the Hermitian matrix cov + (i hbar / 2) J.
double uncertainty_margin(const Eigen::MatrixXd& cov, double hbar);
ReducedMoments reduce(const OracleState& s);

struct OracleConfig {
    DiscretizationConfig bath;
    Propagation method = Propagation::normal_modes;
    int threads = 1;
};

struct OracleRun {
    std::vector<double> grid;
    std::vector<ReducedMoments> moments;
    double t_rec = 0.0;
    double t_rec_coarse = 0.0;
    std::vector<std::string> warnings;
};

OracleRun run_oracle(const SystemSpec& spec, std::span<const double> grid,
                     const OracleConfig& cfg = {});

struct MomentSeries {
    std::vector<double> t, x1x1, x2x2, x1x2;
};

// Analytic variances sigma_i^2 and first-order cross moment -s1 s2 / beta12.
MomentSeries moments_of(const Trajectory& tr);
MomentSeries moments_of(const OracleRun& run);

struct ComparisonRow {
    double t = 0.0;
    double a11 = 0, o11 = 0, e11 = 0;
    double a22 = 0, o22 = 0, e22 = 0;
    double a12 = 0, o12 = 0;
    bool in_window = true;
};

struct ComparisonThresholds {
    double variance = 0.05;
    double cross = 0.25;
    double sign_floor = 0.25;  // sign checked where |o12| >= this share of max |o12|
};

struct ErrorReport {
    std::vector<ComparisonRow> rows;
    double window_end = 0.0;
    double max_err_var1 = 0, max_err_var2 = 0;
    double mean_err_var1 = 0, mean_err_var2 = 0;
    double cross_rel = 0;  // max |a12 - o12| / max |o12|
    bool cross_sign_agrees = true;
    ComparisonThresholds thresholds;

    bool variance_pass() const {
        return max_err_var1 <= thresholds.variance && max_err_var2 <= thresholds.variance;
    }
    bool cross_pass() const { return cross_rel <= thresholds.cross && cross_sign_agrees; }
};

// Rows beyond window_end are reported but left out of the summary.
ErrorReport compare(const MomentSeries& analytic, const MomentSeries& oracle, double window_end,
                    const ComparisonThresholds& th = {});
ErrorReport compare(const Trajectory& analytic, const OracleRun& oracle,
                    const ComparisonThresholds& th = {});

}  // namespace quasirelax
