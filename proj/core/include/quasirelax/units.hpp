// units.hpp — physical constants (CGS) and the internal unit scale
#pragma once

namespace quasirelax::units {

// CODATA 2018, exact in SI, converted to CGS.
inline constexpr double hbar = 1.054571817e-27;  // erg s
inline constexpr double k_B = 1.380649e-16;      // erg / K

// Scale factors between physical CGS values and the internal system with
// hbar = k_B = M1 = omega01 = 1.
struct Scale {
    double mass = 1.0;       // g per internal mass unit
    double frequency = 1.0;  // rad/s per internal frequency unit
    double hbar = units::hbar;
    double k_B = units::k_B;

    double time() const { return 1.0 / frequency; }
    double length_sq() const { return hbar / (mass * frequency); }
    double temperature() const { return hbar * frequency / k_B; }
    double stiffness() const { return mass * frequency * frequency; }

    static Scale identity() { return Scale{1.0, 1.0, 1.0, 1.0}; }
};

}  // namespace quasirelax::units
