#pragma once

// Rotating-frame treatment of the microwave drive.  Eigenlevels are grouped
// into bands separated by roughly integer multiples of the photon energy;
// the detuning modulation Omega cos(nu t) survives the rotating-wave
// approximation only between adjacent bands, through the S(0,2) projector.

#include "patspec/device.hpp"
#include "patspec/hamiltonian.hpp"

#include <array>

namespace patspec {

struct BandAssignment {
    std::array<int, 5> band_index{};  // per eigenstate, ground band = 0
    // True when every inter-band level spacing sits within h nu / 3 of its
    // integer multiple of h nu, i.e. the rotating-wave picture is clean.
    bool within_rwa_window = true;
    double max_window_deviation = 0.0;  // ueV, worst |gap - k h nu|

    Mat5 projector(int band) const {
        Mat5 p = Mat5::Zero();
        for (int k = 0; k < 5; ++k)
            if (band_index[k] == band) p(k, k) = 1.0;
        return p;
    }

    int max_band() const {
        int m = 0;
        for (int b : band_index) m = std::max(m, b);
        return m;
    }
};

// Effective rotating-frame generator pieces, both in the eigenbasis of the
// undriven Hamiltonian.  h_eff is diagonal with entries E_k - n_k h nu;
// v_drive couples only states whose bands differ by exactly one.
struct RotatingFrameModel {
    Mat5 h_eff;
    Mat5 v_drive;
};

// Greedy clustering over ascending energies: a new band starts when the gap
// from the current band's lowest member exceeds h nu / 3.  Band indices are
// then round((E_band_mean - E_ground)/h nu), so states outside the clean RWA
// window still land on the nearest integer band (flagged in diagnostics).
BandAssignment assign_bands(const EigenSystem& eig, double nu);

// V = Omega sum_n P_n |S02><S02| P_{n+1} + h.c., written in the eigenbasis.
RotatingFrameModel build_drive_perturbation(const EigenSystem& eig, const BandAssignment& bands,
                                            const DriveParams& drive);

}  // namespace patspec
