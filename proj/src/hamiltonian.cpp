#include "patspec/hamiltonian.hpp"

#include "patspec/csv.hpp"
#include "patspec/errors.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <numbers>

namespace patspec {

namespace {

constexpr double kSqrt2 = std::numbers::sqrt2;

// All 120 permutations of {0..4}, generated once.  Used for the branch
// matching in level_diagram and for role assignment in the resonance finder.
const std::vector<std::array<int, 5>>& permutations5() {
    static const std::vector<std::array<int, 5>> perms = [] {
        std::vector<std::array<int, 5>> out;
        std::array<int, 5> p{0, 1, 2, 3, 4};
        do {
            out.push_back(p);
        } while (std::next_permutation(p.begin(), p.end()));
        return out;
    }();
    return perms;
}

}  // namespace

const char* to_label(StateCharacter c) {
    switch (c) {
        case StateCharacter::S02: return "S02";
        case StateCharacter::S11: return "S11";
        case StateCharacter::TMinus: return "Tm";
        case StateCharacter::T0: return "T0";
        case StateCharacter::TPlus: return "Tp";
    }
    return "?";
}

StateCharacter EigenSystem::dominant_character(int k) const {
    int best = 0;
    for (int c = 1; c < 5; ++c)
        if (character(c, k) > character(best, k)) best = c;
    return static_cast<StateCharacter>(best);
}

Hamiltonian build_hamiltonian(const DeviceParams& params, const FieldPoint& point) {
    const double ez = params.zeeman_energy(point.b_ext);
    const double gmu = params.g_abs * constants::mu_bohr;
    const double wx = gmu * params.dBx_perp;
    const double wy = gmu * params.dBy_perp;
    const double wpar = gmu * params.dB_par;
    const cxd gperp(0.5 * wx, -0.5 * wy);  // (dBx_perp - i dBy_perp)/2 in energy units
    const cxd i_tz(0.0, params.t_so_z);

    Mat5 m = Mat5::Zero();
    m(kTMinus, kTMinus) = ez;
    m(kDownUp, kDownUp) = -wpar;
    m(kUpDown, kUpDown) = wpar;
    m(kTPlus, kTPlus) = -ez;
    m(kS02, kS02) = -point.epsilon;

    m(kTMinus, kDownUp) = gperp;
    m(kTMinus, kUpDown) = -gperp;
    m(kDownUp, kTPlus) = -gperp;
    m(kUpDown, kTPlus) = gperp;

    m(kDownUp, kS02) = (-i_tz - params.t_c) / kSqrt2;
    m(kUpDown, kS02) = (-i_tz + params.t_c) / kSqrt2;
    m(kTMinus, kS02) = -params.t_so_y / kSqrt2;
    m(kTPlus, kS02) = -params.t_so_y / kSqrt2;

    // fill the lower triangle
    for (int r = 0; r < 5; ++r)
        for (int c = r + 1; c < 5; ++c) m(c, r) = std::conj(m(r, c));

    return Hamiltonian{m};
}

EigenSystem eigensystem(const Hamiltonian& h) {
    const double scale = std::max(1.0, h.matrix.cwiseAbs().maxCoeff());
    const double herm_defect = (h.matrix - h.matrix.adjoint()).cwiseAbs().maxCoeff();
    if (herm_defect > 1e-12 * scale)
        throw InvalidInputError("eigensystem: matrix is not Hermitian within 1e-12 relative");

    const Mat5 sym = 0.5 * (h.matrix + h.matrix.adjoint());
    Eigen::SelfAdjointEigenSolver<Mat5> solver(sym);
    if (solver.info() != Eigen::Success)
        throw InvalidInputError("eigensystem: eigensolver failed to converge");

    EigenSystem out;
    out.energies = solver.eigenvalues();
    out.states = solver.eigenvectors();

    auto weights_of = [](const Vec5& v) {
        Vec5d w;
        w(static_cast<int>(StateCharacter::S02)) = std::norm(v(kS02));
        w(static_cast<int>(StateCharacter::S11)) = std::norm((v(kUpDown) - v(kDownUp)) / kSqrt2);
        w(static_cast<int>(StateCharacter::TMinus)) = std::norm(v(kTMinus));
        w(static_cast<int>(StateCharacter::T0)) = std::norm((v(kUpDown) + v(kDownUp)) / kSqrt2);
        w(static_cast<int>(StateCharacter::TPlus)) = std::norm(v(kTPlus));
        return w;
    };

    // Deterministic order inside degenerate clusters: dominant character
    // index first, then descending dominant weight.
    const double degeneracy_tol = 1e-9 * scale;
    int start = 0;
    while (start < 5) {
        int end = start + 1;
        while (end < 5 && out.energies(end) - out.energies(start) < degeneracy_tol) ++end;
        if (end - start > 1) {
            std::vector<int> idx(end - start);
            for (int i = 0; i < end - start; ++i) idx[i] = start + i;
            std::vector<Vec5d> w(end - start);
            for (int i = 0; i < end - start; ++i) w[i] = weights_of(out.states.col(idx[i]));
            std::vector<int> order(idx);
            std::sort(order.begin(), order.end(), [&](int a, int b) {
                const Vec5d& wa = w[a - start];
                const Vec5d& wb = w[b - start];
                int ca = 0, cb = 0;
                for (int c = 1; c < 5; ++c) {
                    if (wa(c) > wa(ca)) ca = c;
                    if (wb(c) > wb(cb)) cb = c;
                }
                if (ca != cb) return ca < cb;
                if (wa(ca) != wb(cb)) return wa(ca) > wb(cb);
                for (int c = 0; c < 5; ++c)
                    if (wa(c) != wb(c)) return wa(c) > wb(c);
                return a < b;
            });
            Mat5 cols = out.states;
            Vec5d ens = out.energies;
            for (int i = 0; i < end - start; ++i) {
                out.states.col(start + i) = cols.col(order[i]);
                out.energies(start + i) = ens(order[i]);
            }
        }
        start = end;
    }

    // Fix global phases: first component above threshold becomes real positive.
    for (int k = 0; k < 5; ++k) {
        Vec5 v = out.states.col(k);
        for (int r = 0; r < 5; ++r) {
            if (std::abs(v(r)) > 1e-8) {
                out.states.col(k) = v * (std::conj(v(r)) / std::abs(v(r)));
                break;
            }
        }
    }

    for (int k = 0; k < 5; ++k) out.character.col(k) = weights_of(out.states.col(k));
    return out;
}

double exchange_energy(const DeviceParams& params, const FieldPoint& point) {
    const double eps = point.epsilon;
    if (!(eps > 0.0))
        throw DomainError("exchange_energy: requires eps > 0");
    const double tc = params.t_c;
    return 0.5 * (-eps + std::sqrt(eps * eps + 4.0 * tc * tc));
}

double st_plus_anticrossing_detuning(const DeviceParams& params, double b_ext) {
    const double ez = params.zeeman_energy(b_ext);
    if (!(ez > params.t_c))
        throw NoCrossingError("st_plus_anticrossing_detuning: no crossing, E_z <= t_c");
    return (ez * ez - params.t_c * params.t_c) / ez;
}

double triplet_resonance_field(const DeviceParams& params, double nu) {
    if (!(nu > 0.0)) throw DomainError("triplet_resonance_field: requires nu > 0");
    const double b = constants::h_planck * nu / (params.g_abs * constants::mu_bohr) - params.b0;
    if (!(b > 0.0))
        throw UnreachableFieldError("triplet_resonance_field: resonance field is not positive");
    return b;
}

std::vector<LevelDiagramRow> level_diagram(const DeviceParams& params, double b_ext,
                                           double eps_min, double eps_max, int n_points) {
    if (n_points < 2) throw ValidationError("level_diagram: n_points must be >= 2");

    std::vector<LevelDiagramRow> rows;
    rows.reserve(n_points);

    Mat5 prev_states;  // columns in branch order

    for (int i = 0; i < n_points; ++i) {
        const double eps = eps_min + (eps_max - eps_min) * i / (n_points - 1);
        const EigenSystem eig = eigensystem(build_hamiltonian(params, {b_ext, eps}));

        std::array<int, 5> branch_of{0, 1, 2, 3, 4};  // eigenstate index per branch
        if (i > 0) {
            // assign eigenstates to branches by maximum total squared overlap
            // with the previous grid point (exhaustive over 5! assignments)
            Mat5d overlap2;
            for (int a = 0; a < 5; ++a)
                for (int b = 0; b < 5; ++b)
                    overlap2(a, b) = std::norm(prev_states.col(a).dot(eig.states.col(b)));
            double best = -1.0;
            for (const auto& perm : permutations5()) {
                double s = 0.0;
                for (int br = 0; br < 5; ++br) s += overlap2(br, perm[br]);
                if (s > best) {
                    best = s;
                    branch_of = perm;
                }
            }
        }

        LevelDiagramRow row;
        row.epsilon = eps;
        for (int br = 0; br < 5; ++br) {
            row.energies[br] = eig.energies(branch_of[br]);
            row.labels[br] = eig.dominant_character(branch_of[br]);
        }
        rows.push_back(row);

        for (int br = 0; br < 5; ++br) prev_states.col(br) = eig.states.col(branch_of[br]);
    }
    return rows;
}

std::string level_diagram_csv(const std::vector<LevelDiagramRow>& rows) {
    CsvWriter csv({"eps_ueV", "E1_ueV", "E2_ueV", "E3_ueV", "E4_ueV", "E5_ueV",
                   "char1", "char2", "char3", "char4", "char5"});
    for (const auto& r : rows) {
        std::vector<std::string> cells;
        cells.push_back(format_double(r.epsilon));
        for (double e : r.energies) cells.push_back(format_double(e));
        for (StateCharacter c : r.labels) cells.push_back(to_label(c));
        csv.row(cells);
    }
    return csv.str();
}

namespace {

// Energies of the five character-tracked branches at one detuning.  Roles
// are assigned by maximizing the summed role weights over all permutations
// (singlet weight = S02 + S11), which keeps the assignment stable through
// avoided crossings.
struct BranchEnergies {
    double t_minus, t_zero, t_plus, bond, antibond;
};

BranchEnergies branch_energies(const DeviceParams& params, double b_ext, double eps) {
    const EigenSystem eig = eigensystem(build_hamiltonian(params, {b_ext, eps}));

    // role order: Tm, T0, Tp, singlet, singlet
    Mat5d role_weight;
    for (int k = 0; k < 5; ++k) {
        role_weight(0, k) = eig.character(static_cast<int>(StateCharacter::TMinus), k);
        role_weight(1, k) = eig.character(static_cast<int>(StateCharacter::T0), k);
        role_weight(2, k) = eig.character(static_cast<int>(StateCharacter::TPlus), k);
        const double s = eig.character(static_cast<int>(StateCharacter::S02), k) +
                         eig.character(static_cast<int>(StateCharacter::S11), k);
        role_weight(3, k) = s;
        role_weight(4, k) = s;
    }
    double best = -1.0;
    std::array<int, 5> assign{};  // eigenstate index per role
    for (const auto& perm : permutations5()) {
        double s = 0.0;
        for (int role = 0; role < 5; ++role) s += role_weight(role, perm[role]);
        if (s > best) {
            best = s;
            assign = perm;
        }
    }

    BranchEnergies out;
    out.t_minus = eig.energies(assign[0]);
    out.t_zero = eig.energies(assign[1]);
    out.t_plus = eig.energies(assign[2]);
    out.bond = std::min(eig.energies(assign[3]), eig.energies(assign[4]));
    out.antibond = std::max(eig.energies(assign[3]), eig.energies(assign[4]));
    return out;
}

double splitting(const BranchEnergies& b, Transition t) {
    switch (t) {
        case Transition::RedTPlus: return b.t_plus - b.bond;
        case Transition::RedTMinus: return b.t_minus - b.bond;
        case Transition::Dm0Singlet: return b.antibond - b.bond;
        case Transition::Dm0Triplet0: return b.t_zero - b.bond;
        case Transition::BlueTPlusToAntibond: return b.antibond - b.t_plus;
    }
    return 0.0;
}

}  // namespace

double resonance_detuning(const DeviceParams& params, double b_ext, double nu,
                          Transition transition, int photons) {
    if (!(nu > 0.0) || photons < 1)
        throw DomainError("resonance_detuning: requires nu > 0 and photons >= 1");

    const double target = photons * constants::h_planck * nu;
    const double ez = params.zeeman_energy(b_ext);
    const double tc = params.t_c;

    // Closed-form guesses at t_so = dB = 0 provide the initial bracket.
    double guess = 0.0;
    switch (transition) {
        case Transition::RedTPlus:
            guess = (target + ez) - tc * tc / (target + ez);
            break;
        case Transition::RedTMinus:
            if (target <= ez + 1e-12)
                throw UnresolvableLineError("resonance_detuning: T- line needs h nu > E_z");
            guess = (target - ez) - tc * tc / (target - ez);
            break;
        case Transition::Dm0Singlet:
            if (target <= 2.0 * tc)
                throw UnresolvableLineError("resonance_detuning: singlet line needs h nu > 2 t_c");
            guess = std::sqrt(target * target - 4.0 * tc * tc);
            break;
        case Transition::Dm0Triplet0:
            guess = target - tc * tc / target;
            break;
        case Transition::BlueTPlusToAntibond:
            if (target <= ez + 1e-12)
                throw UnresolvableLineError("resonance_detuning: blue line needs h nu > E_z");
            guess = (tc * tc - (target - ez) * (target - ez)) / (target - ez);
            break;
    }

    auto f = [&](double eps) {
        return splitting(branch_energies(params, b_ext, eps), transition) - target;
    };

    // Bracket the root around the guess; widen geometrically if needed.
    double half_width = std::max(5.0, 0.05 * std::abs(guess));
    double lo = guess - half_width, hi = guess + half_width;
    double flo = f(lo), fhi = f(hi);
    for (int attempt = 0; attempt < 24 && flo * fhi > 0.0; ++attempt) {
        half_width *= 2.0;
        lo = guess - half_width;
        hi = guess + half_width;
        flo = f(lo);
        fhi = f(hi);
    }
    if (flo * fhi > 0.0)
        throw UnresolvableLineError("resonance_detuning: no resonance found near predicted detuning");

    for (int iter = 0; iter < 200 && hi - lo > 1e-11 * std::max(1.0, std::abs(guess)); ++iter) {
        const double mid = 0.5 * (lo + hi);
        const double fmid = f(mid);
        if (flo * fmid <= 0.0) {
            hi = mid;
        } else {
            lo = mid;
            flo = fmid;
        }
    }
    return 0.5 * (lo + hi);
}

}  // namespace patspec
