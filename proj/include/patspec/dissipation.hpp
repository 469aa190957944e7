#pragma once

// Phonon-bath dissipation in the eigenbasis: golden-rule relaxation and
// excitation rates through the charge dipole D = |S02><S02|, a Lindblad
// generator in vectorized form, and the driven steady-state solver.

#include "patspec/device.hpp"
#include "patspec/hamiltonian.hpp"
#include "patspec/rwa.hpp"

#include <Eigen/Dense>

namespace patspec {

using Mat25 = Eigen::Matrix<cxd, 25, 25>;
using Vec25 = Eigen::Matrix<cxd, 25, 1>;

struct PhononBath {
    double temperature = 0.1;          // K
    double coupling_eta = 0.0;         // rate prefactor, 1/ns at unit weight; 0 = use default
    double cutoff_ueV = 80.0 * constants::h_planck;  // ~ c_ph / l_dot
    int exponent_p = 3;                // low-frequency spectral exponent
    double dephasing_rate = 2.0 * std::numbers::pi;  // 1/ns, pure dephasing on |S02><S02|

    void validate() const {
        if (!(temperature >= 0.0)) throw ValidationError("bath: temperature must be >= 0");
        if (!(coupling_eta >= 0.0)) throw ValidationError("bath: coupling_eta must be >= 0");
        if (!(cutoff_ueV > 0.0)) throw ValidationError("bath: cutoff must be > 0");
        if (exponent_p < 1) throw ValidationError("bath: exponent_p must be >= 1");
        if (!(dephasing_rate >= 0.0)) throw ValidationError("bath: dephasing_rate must be >= 0");
    }

    double eta() const;  // coupling_eta, or the calibrated default when 0
};

// Dimensionless spectral weight (omega/cutoff)^p exp(-(omega/cutoff)^2).
// Vanishes at omega = 0 and decays above the cutoff.
double spectral_density(double omega_ueV, const PhononBath& bath);

// Default coupling strength, fixed by requiring that the hybridized-singlet
// charge relaxation at the reference configuration (t_c = 8.7 ueV,
// eps = 100 ueV, phonon energy 45 ueV) equals 1/(100 ns).
double calibrated_coupling_eta(const PhononBath& bath);

// gamma(i, j): rate from eigenstate j to eigenstate i, 1/ns.  Downward rates
// carry (n_B + 1), upward rates n_B, evaluated at the lab-frame splitting.
struct RateMatrix {
    Mat5d gamma = Mat5d::Zero();
};

RateMatrix transition_rates(const EigenSystem& eig, const PhononBath& bath);

struct DensityMatrix {
    Mat5 rho;

    double population(int k) const { return rho(k, k).real(); }
    // expectation of a Hermitian operator in the same (eigen)basis
    double expectation(const Mat5& op) const { return (op * rho).trace().real(); }
};

// Vectorized Lindblad generator (column stacking, vec(A X B) = (B^T (x) A) vec X).
struct Superoperator {
    Mat25 generator;
    Mat5 s02_projector;  // eigenbasis representation of |S02><S02|
};

// -i/hbar [h_eff + v_drive, .] plus jump dissipators |i><j| with the given
// rates and the pure-dephasing dissipator on the S(0,2) projector.
Superoperator build_superoperator(const RotatingFrameModel& model, const RateMatrix& rates,
                                  const EigenSystem& eig, const PhononBath& bath);

// Solves generator * vec(rho) = 0 with trace(rho) = 1 via the bordered
// linear system.  Throws SteadyStateError when the kernel is empty or has
// dimension > 1 (the error carries the detected kernel dimension).
DensityMatrix steady_state(const Superoperator& superop);

// Thermal populations exp(-E_k / k_B T) / Z for the Omega = 0 checks.
Vec5d gibbs_populations(const EigenSystem& eig, double temperature);

}  // namespace patspec
