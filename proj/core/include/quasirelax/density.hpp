// density.hpp — time-dependent Gaussian reduced state of the two oscillators
#pragma once

#include <span>
#include <vector>

#include "quasirelax/influence.hpp"
#include "quasirelax/kernels.hpp"
#include "quasirelax/model.hpp"
#include "quasirelax/quadrature.hpp"

namespace quasirelax {

// rho(x1, x2) = norm * exp(-x1^2/2s1 - x1 x2 / beta12 - x2^2/2s2).
// The cross term is stored as inv_beta12 = 1/beta12 so that the factorized
// state is exactly 0 rather than infinite.
struct GaussianState {
    double t = 0.0;
    double sigma1_sq = 0.0;
    double sigma2_sq = 0.0;
    double inv_beta12 = 0.0;
    double norm = 0.0;
    double abs_error = 0.0;  // omega-quadrature estimate feeding this state

    double beta12() const;  // +inf when inv_beta12 == 0
    double precision_det() const { return 1.0 / (sigma1_sq * sigma2_sq) - inv_beta12 * inv_beta12; }
    bool positive_definite() const {
        return sigma1_sq > 0 && sigma2_sq > 0 && precision_det() > 0;
    }
};

struct SecondMoments {
    double x1x1 = 0.0, x2x2 = 0.0, x1x2 = 0.0;
};

// Inverse of the precision matrix [[1/s1, 1/b], [1/b, 1/s2]].
SecondMoments second_moments(const GaussianState& s);
// Precision form of a covariance; inverse of second_moments.
GaussianState from_moments(const SecondMoments& m, double t = 0.0);

enum class ModeSet { linearized, exact };

struct DensityOptions {
    QuadratureConfig quad;
    ModeSet modes = ModeSet::linearized;
    // Literal evaluation through the raw D/Pi tables, C and E kernels and f.
    // Diverging intermediate values near sin nodes are handled by evaluating
    // at t -/+ naive_shift and averaging.
    bool naive = false;
    TableOptions tables;
    double naive_shift = 1e-5;
};

NormalModes density_modes(const SystemSpec& spec, ModeSet set);

GaussianState initial_state(const SystemSpec& spec);
GaussianState reduced_state(double t, const SystemSpec& spec, const DensityOptions& opt = {});

// Trace-normalised 1/(2 pi sqrt(det cov)).
double trace_norm(double sigma1_sq, double sigma2_sq, double inv_beta12);

// Time dependence of the normalisation in its product form
// prod_i F_i^2 / sqrt(C_i + hbar a_i + D4_i^2 / 4 hbar a_i), with the damped
// amplitude F_i^2 ~ e^{delta_i t} / sin(Omega_i t). Only ratios are meaningful.
double norm_shape(double t, const SystemSpec& spec, const DensityOptions& opt = {});

struct Trajectory {
    std::vector<double> grid;
    std::vector<GaussianState> states;
    double sigma1_fdt = 0.0;  // each at its own bath temperature
    double sigma2_fdt = 0.0;
    double wall_seconds = 0.0;

    double sigma1_norm(std::size_t i) const { return states[i].sigma1_sq / sigma1_fdt; }
    double sigma2_norm(std::size_t i) const { return states[i].sigma2_sq / sigma2_fdt; }
    // Correlation strength sqrt(s1 s2 (FDT)) / beta12; decays with the covariance.
    double beta12_norm(std::size_t i) const;
    double x1x2(std::size_t i) const { return second_moments(states[i]).x1x2; }
};

// threads <= 0 picks std::thread::hardware_concurrency(). Results do not
// depend on the thread count.
Trajectory trajectory(const SystemSpec& spec, std::span<const double> grid,
                      const DensityOptions& opt = {}, int threads = 1);

// First grid time after which |beta12_norm| stays below `fraction` of its
// peak over the trajectory; infinity if the last point is still above.
double zeroing_time(const Trajectory& tr, double fraction = 0.01);

struct EquilibriumComparison {
    double tanh_variance = 0.0;  // hbar coth(hbar w / 2kT) / 2 M w
    double fdt_variance = 0.0;
    double relative_gap = 0.0;   // fdt / tanh - 1
};

EquilibriumComparison equilibrium_density(const OscillatorSpec& osc, double hbar, double k_B,
                                          const QuadratureConfig& q = {});

}  // namespace quasirelax
