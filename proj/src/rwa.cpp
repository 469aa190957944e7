#include "patspec/rwa.hpp"

#include <cmath>

namespace patspec {

BandAssignment assign_bands(const EigenSystem& eig, double nu) {
    if (!(nu > 0.0)) throw DomainError("assign_bands: requires nu > 0");
    const double hnu = constants::h_planck * nu;
    const double window = hnu / 3.0;

    BandAssignment out;

    // greedy clusters over the (already ascending) energies
    std::array<int, 5> cluster{};
    int n_clusters = 0;
    double cluster_floor = eig.energies(0);
    for (int k = 0; k < 5; ++k) {
        if (eig.energies(k) - cluster_floor > window) {
            ++n_clusters;
            cluster_floor = eig.energies(k);
        }
        cluster[k] = n_clusters;
    }
    ++n_clusters;

    std::array<double, 5> mean{};
    std::array<int, 5> count{};
    for (int k = 0; k < 5; ++k) {
        mean[cluster[k]] += eig.energies(k);
        ++count[cluster[k]];
    }
    for (int c = 0; c < n_clusters; ++c) mean[c] /= count[c];

    const double e_ground = eig.energies(0);
    for (int k = 0; k < 5; ++k)
        out.band_index[k] = static_cast<int>(std::llround((mean[cluster[k]] - e_ground) / hnu));

    // diagnostics: every cross-band level spacing should sit within
    // h nu / 3 of (band difference) * h nu
    for (int i = 0; i < 5; ++i) {
        for (int j = i + 1; j < 5; ++j) {
            const int dband = out.band_index[j] - out.band_index[i];
            if (dband == 0) continue;
            const double gap = eig.energies(j) - eig.energies(i);
            const double dev = std::abs(gap - dband * hnu);
            out.max_window_deviation = std::max(out.max_window_deviation, dev);
        }
    }
    out.within_rwa_window = out.max_window_deviation <= window;
    return out;
}

RotatingFrameModel build_drive_perturbation(const EigenSystem& eig, const BandAssignment& bands,
                                            const DriveParams& drive) {
    RotatingFrameModel out;
    const double hnu = constants::h_planck * drive.nu;

    out.h_eff = Mat5::Zero();
    for (int k = 0; k < 5; ++k)
        out.h_eff(k, k) = eig.energies(k) - bands.band_index[k] * hnu;

    out.v_drive = Mat5::Zero();
    for (int i = 0; i < 5; ++i) {
        for (int j = 0; j < 5; ++j) {
            if (bands.band_index[j] != bands.band_index[i] + 1) continue;
            // <i|S02><S02|j>
            const cxd el = std::conj(eig.s02_amplitude(i)) * eig.s02_amplitude(j);
            out.v_drive(i, j) = drive.omega * el;
            out.v_drive(j, i) = std::conj(drive.omega * el);
        }
    }
    return out;
}

}  // namespace patspec
