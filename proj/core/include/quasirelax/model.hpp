// model.hpp — oscillator/bath parameters, unit conversion, normal modes
#pragma once

#include <stdexcept>
#include <string>

#include "quasirelax/units.hpp"

namespace quasirelax {

// Raised when a parameter set violates a model invariant. The message names
// the invariant that failed.
class SpecError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

class DegenerateModesError : public SpecError {
public:
    DegenerateModesError()
        : SpecError("degenerate case unsupported: omega01 and omega02 coincide") {}
};

class OvercriticalCouplingError : public SpecError {
public:
    OvercriticalCouplingError()
        : SpecError("overcritical coupling: lambda^2/(M1 M2) >= omega01^2 omega02^2") {}
};

struct OscillatorSpec {
    double mass = 1.0;
    double omega0 = 1.0;
    double gamma = 0.0;
    double temperature = 0.0;
    double sigma0_sq = 0.5;  // initial position variance
};

// Ohmic bath J(w) = eta w on [0, nu_max], eta = 2 M gamma.
struct BathSpec {
    double nu_max = 50.0;
};

struct SystemSpec {
    OscillatorSpec osc1;
    OscillatorSpec osc2;
    BathSpec bath1;
    BathSpec bath2;
    double lambda = 0.0;
    double hbar = 1.0;  // units::hbar for physical specs
    double k_B = 1.0;   // units::k_B for physical specs

    const OscillatorSpec& osc(int i) const { return i == 1 ? osc1 : osc2; }
    const BathSpec& bath(int i) const { return i == 1 ? bath1 : bath2; }
};

// Spec in hbar = k_B = M1 = omega01 = 1 units plus the factors that map back.
struct InternalSystem {
    SystemSpec spec;
    units::Scale scale;
};

struct NormalModes {
    double Omega1 = 1.0;
    double Omega2 = 1.0;
    double delta1 = 0.0;
    double delta2 = 0.0;
    double r1 = 0.0;
    double r2 = 0.0;
    double rho = 0.0;
    double lambda = 0.0;

    double Omega(int i) const { return i == 1 ? Omega1 : Omega2; }
    double delta(int i) const { return i == 1 ? delta1 : delta2; }
};

struct WeakCouplingReport {
    double ratio = 0.0;  // |w02^2 - w01^2| / (2 w01 w02 rho), +inf at rho = 0
    double kappa = 10.0;
    bool pass = true;
};

inline constexpr double degenerate_tolerance = 1e-9;
inline constexpr double default_kappa = 10.0;

// eta = 2 M gamma
double friction(const OscillatorSpec& osc);
// Counter-term strength mu = 2 eta nu_max / pi.
double counter_term(const OscillatorSpec& osc, const BathSpec& bath);
// hbar / (2 M omega0)
double ground_variance(const OscillatorSpec& osc, double hbar);

// Dimensionless coupling rho = lambda / (omega01 sqrt(M1 M2 omega01 omega02)).
double coupling_coefficient(const SystemSpec& spec);
double lambda_from_rho(const SystemSpec& spec, double rho);

// Throws SpecError naming the violated invariant.
void validate(const SystemSpec& spec);
WeakCouplingReport validate_weak_coupling(const SystemSpec& spec, double kappa = default_kappa);

InternalSystem to_internal_units(const SystemSpec& physical);
SystemSpec from_internal_units(const InternalSystem& internal);

// Exact roots of the 2x2 secular problem with effective dampings and mixing
// ratios. Mode 1 is the branch continuously connected to oscillator 1.
NormalModes derive_normal_modes(const SystemSpec& spec);

// First-order mode set: Omega_i = omega0i, delta_i = gamma_i and
// r1 = lambda / (M2 (w02^2 - w01^2)), r2 = -lambda / (M1 (w02^2 - w01^2)).
NormalModes linearized_modes(const SystemSpec& spec);

}  // namespace quasirelax
