// influence.hpp — frequency-integrated bath kernels A, B, C, E and FDT variance
#pragma once

#include <array>
#include <complex>
#include <vector>

#include "quasirelax/kernels.hpp"
#include "quasirelax/model.hpp"
#include "quasirelax/quadrature.hpp"

namespace quasirelax {

// coth(x) with the 1/x + x/3 branch below 1e-4 and coth -> 1 for large x.
double coth_stable(double x);

// Bath weight w coth(hbar w / 2 k_B T); equals w at T = 0.
double bath_weight(double omega, double temperature, double hbar, double k_B);

// int_0^t e^{z u} du, accurate when |z t| is small.
std::complex<double> exp_integral(std::complex<double> z, double t);

struct TrigTransform {
    std::complex<double> s, c;
};
// int_0^t {sin, cos}(W tau) e^{d tau} e^{i w tau} dtau
TrigTransform growing_transform(double omega, double t, double W, double d);
// int_0^t {sin, cos}(W u) e^{-d u} e^{-i w u} du, bounded for all t
TrigTransform response_transform(double omega, double t, double W, double d);

// alpha(t) = (1/pi) int_0^{nu_max} eta w [coth(hbar w / 2kT) cos(w t) - i sin(w t)] dw.
std::complex<double> eval_alpha(double t, const OscillatorSpec& osc, const BathSpec& bath,
                                double hbar, double k_B, const QuadratureConfig& q = {});

// Inner (fixed-omega) kernels of A, B, C exactly as defined by the double
// time integrals with cos(w(t' - t'')); raw values diverge at sin nodes.
struct InnerABC {
    double A = 0, B = 0, C = 0;
};
InnerABC abc_inner(double omega, double t, double Omega, double delta);

// Rescaled inner kernels: A sin^2, B sin^2 e^{-dt}, C sin^2 e^{-2dt}.
InnerABC abc_inner_hat(double omega, double t, double Omega, double delta);

struct ABCKernels {
    double A_hat = 0, B_hat = 0, C_hat = 0;  // rescaled, finite for every t
    double A = 0, B = 0, C = 0;              // raw, NaN within the node guard
    double abs_error = 0;                    // quadrature estimate on the hats
};

ABCKernels eval_ABC(double t, int osc, const SystemSpec& spec, const NormalModes& modes,
                    const QuadratureConfig& q = {}, double node_eps = 1e-6);

// Bracketed inner kernels of E1..E4 at fixed omega, per bath:
// out[2*(j-1)] for bath 1 and out[2*(j-1)+1] for bath 2 of E_j
// (without the 2 M gamma r / pi prefactors).
std::array<double, 8> e_inner(double omega, double t, const NormalModes& modes);

struct ECoefficients {
    double E1 = 0, E2 = 0, E3 = 0, E4 = 0;
    double abs_error = 0;
};

ECoefficients eval_E(double t, const SystemSpec& spec, const NormalModes& modes,
                     const QuadratureConfig& q = {}, double node_eps = 1e-6);

struct InfluenceCoefficients {
    double t = 0;
    double A1 = 0, A2 = 0, B1 = 0, B2 = 0, C1 = 0, C2 = 0;
    double E1 = 0, E2 = 0, E3 = 0, E4 = 0;
    double f1 = 0, f2 = 0;
    double abs_error = 0;
};

struct FPair {
    double f1 = 0, f2 = 0;
};

// Linear-response factors assembled from the tables and kernels.
FPair eval_f(const KernelTable& k, double C1, double C2, double E1, double a1, double a2,
             double hbar);

// Raw kernels, tables and f at one (non-node) time point.
InfluenceCoefficients eval_influence(double t, const SystemSpec& spec, const NormalModes& modes,
                                     const QuadratureConfig& q = {}, const TableOptions& opt = {});

struct FdtResult {
    double value = 0;
    double abs_error = 0;  // quadrature estimate plus tail
    double tail = 0;       // analytic contribution above the truncation point
    double cutoff = 0;
};

// (hbar/pi) int_0^inf coth(hbar w / 2kT) 2 gamma w / (M[(w^2 - w0^2)^2 + 4 gamma^2 w^2]) dw,
// truncated at max(50 w0, w0 + 40 gamma) plus an analytic 1/w^3 tail.
FdtResult fdt_variance(const OscillatorSpec& osc, double hbar, double k_B,
                       const QuadratureConfig& q = {});

// Break points for omega integrals: resonances, their neighbourhoods, cutoff.
std::vector<double> omega_breaks(double nu_max, std::initializer_list<double> resonances,
                                 std::initializer_list<double> widths, double t);

}  // namespace quasirelax
