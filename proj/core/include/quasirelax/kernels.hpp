// kernels.hpp — closed-form time functions of the classical action
#pragma once

#include <array>
#include <stdexcept>
#include <string>

#include "quasirelax/model.hpp"

namespace quasirelax {

// Raised when a raw (unrescaled) coefficient is requested too close to a
// zero of sin(Omega_i t), where n_i, nbar_i and m_i diverge.
class NodeProximityError : public std::domain_error {
public:
    NodeProximityError(int mode, double t)
        : std::domain_error("t = " + std::to_string(t) + " is within the node guard of sin(Omega" +
                            std::to_string(mode) + " t)"),
          mode(mode), t(t) {}
    int mode;
    double t;
};

// s_k(t) for k = 1..14 stored at index k-1.
//   s1..s4:  int cos^2, sin^2 of Omega1 t, then Omega2
//   s5, s6:  int sin cos (Omega1, Omega2)
//   s7..s10: int e^{dm tau} {c1 c2, c1 s2, s1 c2, s1 s2}, dm = delta1 - delta2
//   s11..s14: int e^{-dm tau} {c1 c2, s1 c2, c1 s2, s1 s2}
std::array<double, 14> eval_s(double t, const NormalModes& modes);

// Selects between the coefficient tables as printed and the versions that
// reproduce the action integral. Defaults are the corrected forms.
struct TableOptions {
    bool printed_d4 = false;           // m^2 b2 instead of m^2 b1 in D4, D'4
    bool printed_inner_r = false;      // keep the r prefactors inside b5..b12, b'5..b'12
    bool bprime12_uses_r2 = false;     // b'12 prefactor r2 (only with printed_inner_r)
    bool printed_primed_cross = false; // n instead of nbar in D'7, D'8
    bool printed_pi = false;           // Pi8, Pi9, Pi12 as printed
    double node_eps = 1e-6;            // |sin(Omega_i t)| guard for raw tables

    static TableOptions printed() {
        TableOptions o;
        o.printed_d4 = o.printed_inner_r = o.printed_primed_cross = o.printed_pi = true;
        return o;
    }
};

struct KernelTable {
    double t = 0.0;
    std::array<double, 14> s{};
    double n1 = 0, n2 = 0, nbar1 = 0, nbar2 = 0, m1 = 0, m2 = 0;
    std::array<double, 12> D{};   // D[k-1] = D_k
    std::array<double, 12> Dp{};  // Dp[k-1] = D'_k
    std::array<double, 16> Pi{};  // Pi[k-1] = Pi_k

    double d(int k) const { return D[k - 1]; }
    double dp(int k) const { return Dp[k - 1]; }
    double pi(int k) const { return Pi[k - 1]; }
};

// Full table at one time point. Throws NodeProximityError near sin nodes.
KernelTable eval_kernels(double t, const NormalModes& modes, const SystemSpec& spec,
                         const TableOptions& opt = {});

// End-point data of the sum (X) and difference (xi) coordinates.
struct Boundary {
    double Xi1 = 0, Xi2 = 0, Xf1 = 0, Xf2 = 0;
    double xii1 = 0, xii2 = 0, xif1 = 0, xif2 = 0;
};

struct PathPoint {
    double X1 = 0, X2 = 0, xi1 = 0, xi2 = 0;
};

// Classical paths at 0 <= tau <= t with position boundary conditions at both
// ends (including the exact 1/(1 - r1 r2) factors).
PathPoint classical_paths(double tau, double t, const NormalModes& modes, const Boundary& b,
                          double node_eps = 1e-6);

struct ActionParts {
    double single = 0.0;       // S(1) + S(2), bilinear form over D, D'
    double interaction = 0.0;  // S(12), bilinear form over Pi
};

ActionParts action_bilinear(const KernelTable& k, const Boundary& b);

// Products of D3, D4 with sin(Omega_i t) e^{-delta_i t}, finite at every t.
// Exact images of the table entries for the first-order mode set
// (Omega_i = omega0i, delta_i = gamma_i).
struct StableSingle {
    double D3_hat = 0.0;  // D3 sin e^{-dt} = -(M/2) Omega
    double D4_hat = 0.0;  // D4 sin e^{-dt} = (M/2)(Omega cos + delta sin) e^{-dt}
    double s_hat = 0.0;   // sin(Omega t) e^{-delta t}
};

StableSingle stable_single(double t, int osc, const NormalModes& modes, const SystemSpec& spec);

}  // namespace quasirelax
