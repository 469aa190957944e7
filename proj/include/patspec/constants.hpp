#pragma once

#include <numbers>

// Unit system used throughout: energies in ueV, magnetic fields in T,
// frequencies in GHz, times in ns, temperatures in K.  With these units
// 1 GHz = 1/ns, so h [ueV/GHz] doubles as h [ueV*ns].

namespace patspec {

struct PhysicalConstants {
    // CODATA-rounded and frozen so that all emitted numbers are
    // reproducible bit-for-bit at double precision.
    static constexpr double planck_ueV_per_GHz = 4.135667;
    static constexpr double bohr_magneton_ueV_per_T = 57.8838;
    static constexpr double boltzmann_ueV_per_K = 86.173332;

    static constexpr double hbar_ueV_ns =
        planck_ueV_per_GHz / (2.0 * std::numbers::pi);
};

namespace constants {
inline constexpr double h_planck = PhysicalConstants::planck_ueV_per_GHz;
inline constexpr double mu_bohr = PhysicalConstants::bohr_magneton_ueV_per_T;
inline constexpr double k_boltzmann = PhysicalConstants::boltzmann_ueV_per_K;
inline constexpr double hbar = PhysicalConstants::hbar_ueV_ns;
}  // namespace constants

}  // namespace patspec
