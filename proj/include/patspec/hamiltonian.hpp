#pragma once

// Five-level model of the two-electron double dot near the (1,1)-(0,2)
// transition: the four (1,1) spin states plus the S(0,2) singlet.
//
// Basis order everywhere: (T-(1,1), |down-up>, |up-down>, T+(1,1), S(0,2)).
// The diagonal is (+E_z, -w_par, +w_par, -E_z, -eps) so that T+ is the
// high-field ground state.  All entries are energies in ueV; Zeeman and
// gradient terms carry the |g| mu_B conversion already.

#include "patspec/device.hpp"

#include <Eigen/Dense>

#include <array>
#include <complex>
#include <string>
#include <vector>

namespace patspec {

using cxd = std::complex<double>;
using Mat5 = Eigen::Matrix<cxd, 5, 5>;
using Vec5 = Eigen::Matrix<cxd, 5, 1>;
using Vec5d = Eigen::Matrix<double, 5, 1>;
using Mat5d = Eigen::Matrix<double, 5, 5>;

enum BasisIndex : int {
    kTMinus = 0,
    kDownUp = 1,
    kUpDown = 2,
    kTPlus = 3,
    kS02 = 4,
};

// Spin/charge character of an eigenstate, used for labels and branch
// identification.  S11 = (|up-down> - |down-up>)/sqrt2 and
// T0 = (|up-down> + |down-up>)/sqrt2.
enum class StateCharacter : int { S02 = 0, S11 = 1, TMinus = 2, T0 = 3, TPlus = 4 };

const char* to_label(StateCharacter c);  // "S02", "S11", "Tm", "T0", "Tp"

struct Hamiltonian {
    Mat5 matrix;
};

struct EigenSystem {
    Vec5d energies;    // ascending
    Mat5 states;       // orthonormal eigenvectors as columns
    Mat5d character;   // character(c, k) = weight of character c in state k

    // <k|S02> amplitude of eigenstate k, the only matrix element the
    // charge dipole and the drive couple through.
    cxd s02_amplitude(int k) const { return states(kS02, k); }

    StateCharacter dominant_character(int k) const;
};

Hamiltonian build_hamiltonian(const DeviceParams& params, const FieldPoint& point);

// Dense Hermitian diagonalization with deterministic output: ascending
// energies, degenerate subspaces ordered by character, global phases fixed
// so the first significant component of each state is real positive.
// Throws InvalidInputError if h is not Hermitian to 1e-12 relative.
EigenSystem eigensystem(const Hamiltonian& h);

// Exchange splitting J(eps) = (-eps + sqrt(eps^2 + 4 t_c^2))/2, the energy
// of the antibonding singlet above T0 at zero gradient.  Requires eps > 0.
double exchange_energy(const DeviceParams& params, const FieldPoint& point);

// Detuning where the lower hybrid singlet crosses T+:
// eps_ST+ = (E_z^2 - t_c^2)/E_z.  Requires E_z > t_c.
double st_plus_anticrossing_detuning(const DeviceParams& params, double b_ext);

// Field where E_z = |g| mu_B (B + b0) = h nu.
double triplet_resonance_field(const DeviceParams& params, double nu);

struct LevelDiagramRow {
    double epsilon;
    std::array<double, 5> energies;            // branch-ordered, may cross
    std::array<StateCharacter, 5> labels;      // dominant character per branch
};

// Eigenenergies vs detuning at fixed field.  Branches are kept contiguous
// across the grid by maximum-overlap matching between adjacent points, so
// labels do not swap at near-degeneracies.
std::vector<LevelDiagramRow> level_diagram(const DeviceParams& params, double b_ext,
                                           double eps_min, double eps_max, int n_points);

std::string level_diagram_csv(const std::vector<LevelDiagramRow>& rows);

// --- resonance location ----------------------------------------------------

// PAT transitions whose detuning positions the analysis uses.  "Bond" is the
// lower hybridized singlet branch, "Antibond" the upper one.
enum class Transition {
    RedTPlus,             // bond -> T+,  Delta m = +1
    RedTMinus,            // bond -> T-,  Delta m = -1
    Dm0Singlet,           // bond -> antibond, Delta m = 0
    Dm0Triplet0,          // bond -> T0,  Delta m = 0 (alternative scenario)
    BlueTPlusToAntibond,  // T+  -> antibond, Delta m = -1, negative signal
};

// Detuning where the transition's level splitting equals photons * h nu,
// located by bisection on the exact eigensystem with character-tracked
// branches.  Throws UnresolvableLineError when no such detuning exists.
double resonance_detuning(const DeviceParams& params, double b_ext, double nu,
                          Transition transition, int photons = 1);

}  // namespace patspec
