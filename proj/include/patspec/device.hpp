#pragma once

#include "patspec/constants.hpp"
#include "patspec/errors.hpp"

#include <cmath>

namespace patspec {

// Static parameters of the two-electron double dot.  Tunnel couplings in
// ueV, fields in T.  dBx_perp/dBy_perp/dB_par are the half-differences of
// the local field between the dots (dot1 sees B + dB, dot2 sees B - dB).
struct DeviceParams {
    double g_abs = 0.382;     // |g|-factor
    double t_c = 8.7;         // spin-conserving tunnel coupling, ueV
    double t_so_y = 0.435;    // spin-orbit tunnel coupling, ueV (5% of t_c)
    double t_so_z = 0.435;
    double b0 = 0.109;        // micromagnet field parallel to B, T
    double dBx_perp = 0.0;    // T
    double dBy_perp = 0.0;    // T
    double dB_par = 0.0;      // T

    // E_z = |g| mu_B (B + b0), the triplet splitting per unit spin projection.
    double zeeman_energy(double b_ext) const {
        return g_abs * constants::mu_bohr * (b_ext + b0);
    }

    void validate() const {
        if (!(g_abs > 0.0)) throw ValidationError("device: g_abs must be > 0");
        if (!(t_c >= 0.0)) throw ValidationError("device: t_c must be >= 0");
        if (!std::isfinite(t_so_y) || !std::isfinite(t_so_z))
            throw ValidationError("device: spin-orbit couplings must be finite");
        if (!std::isfinite(b0) || !std::isfinite(dBx_perp) ||
            !std::isfinite(dBy_perp) || !std::isfinite(dB_par))
            throw ValidationError("device: field parameters must be finite");
    }
};

// One point of a scan: external in-plane field and double-dot detuning.
// eps > 0 lowers S(0,2); at large positive eps the ground state is S(0,2).
struct FieldPoint {
    double b_ext = 0.0;    // T
    double epsilon = 0.0;  // ueV
};

// Microwave drive: frequency nu and the amplitude Omega of the detuning
// modulation eps -> eps0 + Omega cos(nu t).
struct DriveParams {
    double nu = 11.0;     // GHz
    double omega = 5.0;   // ueV

    double photon_energy() const { return constants::h_planck * nu; }

    void validate() const {
        if (!(nu > 0.0)) throw ValidationError("drive: nu must be > 0");
        if (!(omega >= 0.0)) throw ValidationError("drive: omega must be >= 0");
    }
};

}  // namespace patspec
