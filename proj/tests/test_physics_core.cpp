#include "patspec/hamiltonian.hpp"
#include "patspec/errors.hpp"
#include "patspec/rng.hpp"

#include <doctest.h>

#include <cmath>
#include <complex>

using namespace patspec;

namespace {

DeviceParams bare_device(double tc) {
    DeviceParams d;
    d.t_c = tc;
    d.t_so_y = d.t_so_z = 0.0;
    d.b0 = 0.0;
    return d;
}

DeviceParams fig2c_device() {
    // t_c = 8.7 ueV, |g| = 0.382, b0 = 0.109 T, no spin-orbit or gradient
    DeviceParams d = bare_device(8.7);
    d.b0 = 0.109;
    return d;
}

// independent oracle: minimize f over [lo, hi] by golden-section search
template <typename F>
double golden_min(F f, double lo, double hi, int iters = 200) {
    const double phi = 0.5 * (std::sqrt(5.0) - 1.0);
    double a = lo, b = hi;
    double x1 = b - phi * (b - a), x2 = a + phi * (b - a);
    double f1 = f(x1), f2 = f(x2);
    for (int i = 0; i < iters; ++i) {
        if (f1 < f2) {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - phi * (b - a);
            f1 = f(x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + phi * (b - a);
            f2 = f(x2);
        }
    }
    return 0.5 * (a + b);
}

double singlet_gap(const DeviceParams& d, double b, double eps) {
    const EigenSystem eig = eigensystem(build_hamiltonian(d, {b, eps}));
    // with t_so = dB = 0 the triplets sit at -Ez, 0, +Ez; the singlets are
    // the remaining pair, picked out by their S02+S11 character
    double lo = 0.0, hi = 0.0;
    bool first = true;
    for (int k = 0; k < 5; ++k) {
        const double s = eig.character(0, k) + eig.character(1, k);
        if (s > 0.5) {
            if (first) {
                lo = eig.energies(k);
                first = false;
            } else {
                hi = eig.energies(k);
            }
        }
    }
    return hi - lo;
}

}  // namespace

TEST_CASE("hamiltonian matrix entries match the five-level model") {
    DeviceParams d;
    d.g_abs = 0.4;
    d.t_c = 7.0;
    d.t_so_y = 0.3;
    d.t_so_z = 0.2;
    d.b0 = 0.05;
    d.dBx_perp = 0.011;
    d.dBy_perp = -0.007;
    d.dB_par = 0.003;
    const FieldPoint pt{1.2, 25.0};

    const Mat5 m = build_hamiltonian(d, pt).matrix;

    const double gmu = 0.4 * 57.8838;
    const double ez = gmu * (1.2 + 0.05);
    const double wx = gmu * 0.011, wy = gmu * (-0.007), wp = gmu * 0.003;
    const cxd gp(0.5 * wx, -0.5 * wy);
    const double s2 = std::sqrt(2.0);

    CHECK(m(0, 0).real() == doctest::Approx(ez).epsilon(1e-14));
    CHECK(m(1, 1).real() == doctest::Approx(-wp).epsilon(1e-14));
    CHECK(m(2, 2).real() == doctest::Approx(wp).epsilon(1e-14));
    CHECK(m(3, 3).real() == doctest::Approx(-ez).epsilon(1e-14));
    CHECK(m(4, 4).real() == doctest::Approx(-25.0).epsilon(1e-14));

    CHECK(std::abs(m(0, 1) - gp) < 1e-14);
    CHECK(std::abs(m(0, 2) + gp) < 1e-14);
    CHECK(std::abs(m(1, 3) + gp) < 1e-14);
    CHECK(std::abs(m(2, 3) - gp) < 1e-14);

    CHECK(std::abs(m(1, 4) - cxd(-7.0, -0.2) / s2) < 1e-14);
    CHECK(std::abs(m(2, 4) - cxd(7.0, -0.2) / s2) < 1e-14);
    CHECK(std::abs(m(0, 4) - cxd(-0.3 / s2, 0.0)) < 1e-14);
    CHECK(std::abs(m(3, 4) - cxd(-0.3 / s2, 0.0)) < 1e-14);

    CHECK((m - m.adjoint()).cwiseAbs().maxCoeff() < 1e-15);
}

TEST_CASE("pure tunnel coupling at zero detuning gives +-t_c and three zeros") {
    const DeviceParams d = bare_device(8.7);
    const EigenSystem eig = eigensystem(build_hamiltonian(d, {0.0, 0.0}));
    CHECK(eig.energies(0) == doctest::Approx(-8.7).epsilon(1e-12));
    CHECK(eig.energies(1) == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(eig.energies(2) == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(eig.energies(3) == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(eig.energies(4) == doctest::Approx(8.7).epsilon(1e-12));

    // ground state is the bonding combination (S11 - S02)/sqrt2
    const Vec5 g = eig.states.col(0);
    const cxd s11 = (g(kUpDown) - g(kDownUp)) / std::sqrt(2.0);
    const cxd s02 = g(kS02);
    CHECK(std::abs(s11) == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-12));
    CHECK(std::abs(s02) == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-12));
    CHECK((s11 * std::conj(s02)).real() < 0.0);  // opposite signs
}

TEST_CASE("singlet anticrossing gap at eps = 0 is 2 t_c") {
    for (double tc : {2.0, 8.7, 15.0}) {
        const DeviceParams d = bare_device(tc);
        CHECK(singlet_gap(d, 0.7, 0.0) == doctest::Approx(2.0 * tc).epsilon(1e-12));
    }
}

TEST_CASE("ST+ crossing detuning at B = 1.5 T (Fig. 2c lower panel parameters)") {
    const DeviceParams d = fig2c_device();
    const double ez = d.zeeman_energy(1.5);
    CHECK(ez == doctest::Approx(35.5775830644).epsilon(1e-10));

    const double eps_st = st_plus_anticrossing_detuning(d, 1.5);
    CHECK(eps_st == doctest::Approx(33.4501198283).epsilon(1e-10));

    // oracle: the T+ level and the lower singlet become degenerate there
    const EigenSystem eig = eigensystem(build_hamiltonian(d, {1.5, eps_st}));
    CHECK(eig.energies(1) - eig.energies(0) < 1e-9);
    CHECK(eig.energies(0) == doctest::Approx(-ez).epsilon(1e-10));

    // oracle: locate the degeneracy numerically and compare
    auto gap01 = [&](double eps) {
        const EigenSystem e = eigensystem(build_hamiltonian(d, {1.5, eps}));
        return e.energies(1) - e.energies(0);
    };
    const double eps_star = golden_min(gap01, 20.0, 45.0);
    CHECK(eps_star == doctest::Approx(eps_st).epsilon(1e-7));
}

TEST_CASE("ST+ crossing edge cases") {
    DeviceParams d = bare_device(0.0);
    d.g_abs = 0.382;
    // t_c = 0: crossing exactly at E_z
    CHECK(st_plus_anticrossing_detuning(d, 2.0) ==
          doctest::Approx(d.zeeman_energy(2.0)).epsilon(1e-14));

    // E_z <= t_c: no crossing
    DeviceParams d2 = bare_device(8.7);
    d2.g_abs = 0.382;
    const double b_eq = 8.7 / (0.382 * 57.8838);  // E_z == t_c here
    CHECK_THROWS_AS(st_plus_anticrossing_detuning(d2, b_eq), NoCrossingError);
    CHECK_THROWS_AS(st_plus_anticrossing_detuning(d2, 0.5 * b_eq), NoCrossingError);
}

TEST_CASE("exchange energy: closed form equals the eigensystem splitting") {
    const DeviceParams d = bare_device(8.7);

    // J at eps = 100 ueV; oracle = E(antibonding) - E(T0) at dB = t_so = 0
    const FieldPoint pt{0.0, 100.0};
    const double j = exchange_energy(d, pt);
    CHECK(j == doctest::Approx(0.7512561421).epsilon(1e-9));

    const EigenSystem eig = eigensystem(build_hamiltonian(d, pt));
    const double j_eig = eig.energies(4) - eig.energies(1);  // antibond above the T manifold
    CHECK(j == doctest::Approx(j_eig).epsilon(1e-12));

    // t_c = 0 gives J = 0 for all eps
    const DeviceParams d0 = bare_device(0.0);
    for (double eps : {1.0, 10.0, 500.0})
        CHECK(exchange_energy(d0, {0.0, eps}) == doctest::Approx(0.0).epsilon(1e-15));

    // large-eps asymptotics J -> t_c^2 / eps
    const double j_far = exchange_energy(d, {0.0, 1000.0});
    CHECK(j_far == doctest::Approx(0.0756842719).epsilon(1e-9));
    CHECK(std::abs(j_far - 8.7 * 8.7 / 1000.0) / j_far < 1e-3);

    CHECK_THROWS_AS(exchange_energy(d, {0.0, 0.0}), DomainError);
    CHECK_THROWS_AS(exchange_energy(d, {0.0, -5.0}), DomainError);
}

TEST_CASE("triplet resonance fields for 7.5, 11 and 13 GHz") {
    const DeviceParams d = fig2c_device();
    CHECK(triplet_resonance_field(d, 7.5) == doctest::Approx(1.2937698687).epsilon(1e-9));
    CHECK(triplet_resonance_field(d, 11.0) == doctest::Approx(1.9483958074).epsilon(1e-9));
    CHECK(triplet_resonance_field(d, 13.0) == doctest::Approx(2.3224677723).epsilon(1e-9));

    // with b0 = 0 and h nu = g mu_B * 1 T the resonance sits at exactly 1 T
    DeviceParams d0 = fig2c_device();
    d0.b0 = 0.0;
    const double nu_1t = d0.g_abs * 57.8838 / 4.135667;
    CHECK(triplet_resonance_field(d0, nu_1t) == doctest::Approx(1.0).epsilon(1e-14));

    CHECK_THROWS_AS(triplet_resonance_field(d, 0.3), UnreachableFieldError);
    CHECK_THROWS_AS(triplet_resonance_field(d, -1.0), DomainError);
}

TEST_CASE("ground state is S(0,2)-dominant far past the anticrossing") {
    DeviceParams d = fig2c_device();
    d.t_so_y = d.t_so_z = 0.435;

    const FieldPoint pt{2.5, 100.0};
    const EigenSystem eig = eigensystem(build_hamiltonian(d, pt));
    const double w_s02 = eig.character(static_cast<int>(StateCharacter::S02), 0);
    CHECK(w_s02 > 0.99);

    // perturbation-theory oracle for the non-S02 weight, from the bare matrix
    const Mat5 m = build_hamiltonian(d, pt).matrix;
    double pt_weight = 0.0;
    for (int k = 0; k < 4; ++k) {
        const double gap = m(k, k).real() - m(4, 4).real();
        pt_weight += std::norm(m(k, 4)) / (gap * gap);
    }
    const double mixing = 1.0 - eig.character(static_cast<int>(StateCharacter::S02), 0) -
                          eig.character(static_cast<int>(StateCharacter::S11), 0);
    CHECK(mixing < 2.0 * pt_weight + 1e-12);
    CHECK(pt_weight < 0.01);

    // near the crossing (eps = 57 ueV at 2.5 T) the T+ admixture is large;
    // frozen from direct diagonalization
    const EigenSystem near = eigensystem(build_hamiltonian(d, {2.5, 57.0}));
    CHECK(near.character(static_cast<int>(StateCharacter::S02), 0) ==
          doctest::Approx(0.8362988580).epsilon(1e-6));
}

TEST_CASE("eigensystem of the zero matrix returns the standard basis") {
    Hamiltonian h;
    h.matrix = Mat5::Zero();
    const EigenSystem eig = eigensystem(h);
    for (int k = 0; k < 5; ++k) CHECK(eig.energies(k) == 0.0);
    // every column is a standard basis vector (order fixed by character)
    for (int k = 0; k < 5; ++k) {
        int nonzero = 0;
        for (int r = 0; r < 5; ++r)
            if (std::abs(eig.states(r, k)) > 1e-12) ++nonzero;
        CHECK(nonzero == 1);
    }
}

TEST_CASE("eigensystem rejects non-Hermitian input") {
    Hamiltonian h;
    h.matrix = Mat5::Zero();
    h.matrix(0, 1) = 1.0;
    h.matrix(1, 0) = 2.0;  // not the conjugate
    CHECK_THROWS_AS(eigensystem(h), InvalidInputError);
}

TEST_CASE("hermiticity, orthonormality and character sums over random draws") {
    Rng rng(1234);
    for (int trial = 0; trial < 1000; ++trial) {
        DeviceParams d;
        d.g_abs = rng.uniform(0.1, 2.0);
        d.t_c = rng.uniform(0.0, 20.0);
        d.t_so_y = rng.uniform(-1.0, 1.0);
        d.t_so_z = rng.uniform(-1.0, 1.0);
        d.b0 = rng.uniform(-0.2, 0.2);
        d.dBx_perp = rng.uniform(-0.05, 0.05);
        d.dBy_perp = rng.uniform(-0.05, 0.05);
        d.dB_par = rng.uniform(-0.05, 0.05);
        const FieldPoint pt{rng.uniform(0.0, 3.0), rng.uniform(-150.0, 150.0)};

        const Mat5 m = build_hamiltonian(d, pt).matrix;
        const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
        REQUIRE((m - m.adjoint()).cwiseAbs().maxCoeff() < 1e-12 * scale);

        const EigenSystem eig = eigensystem(Hamiltonian{m});
        REQUIRE((eig.states.adjoint() * eig.states - Mat5::Identity()).cwiseAbs().maxCoeff() <
                1e-10);
        for (int k = 0; k < 5; ++k)
            REQUIRE(eig.character.col(k).sum() == doctest::Approx(1.0).epsilon(1e-10));

        // trace invariance: the Zeeman and gradient diagonals cancel pairwise
        REQUIRE(eig.energies.sum() == doctest::Approx(-pt.epsilon).epsilon(1e-9));
    }
}

TEST_CASE("minimum singlet splitting over detuning equals 2 t_c") {
    const DeviceParams d = bare_device(8.7);
    auto gap = [&](double eps) { return singlet_gap(d, 1.1, eps); };
    const double eps_min = golden_min(gap, -40.0, 40.0);
    CHECK(gap(eps_min) == doctest::Approx(2.0 * 8.7).epsilon(1e-9));
}

TEST_CASE("T0 stays an exact eigenvector when gradients and spin-orbit vanish") {
    const DeviceParams d = bare_device(11.0);
    Vec5 t0 = Vec5::Zero();
    t0(kDownUp) = 1.0 / std::sqrt(2.0);
    t0(kUpDown) = 1.0 / std::sqrt(2.0);
    for (double b : {0.0, 1.3, 2.9}) {
        for (double eps : {-80.0, 0.0, 55.0}) {
            const Mat5 m = build_hamiltonian(d, {b, eps}).matrix;
            CHECK((m * t0).cwiseAbs().maxCoeff() < 1e-14);
        }
    }
}

TEST_CASE("level diagram: exactly one T+/lower-singlet crossing at high field") {
    DeviceParams d = fig2c_device();
    const auto rows = level_diagram(d, 2.5, -20.0, 120.0, 281);

    // identify branches by their labels at the left edge
    int br_tp = -1, br_bond = -1;
    for (int br = 0; br < 5; ++br) {
        if (rows[0].labels[br] == StateCharacter::TPlus) br_tp = br;
        if (rows[0].labels[br] == StateCharacter::S11) br_bond = br;
    }
    REQUIRE(br_tp >= 0);
    REQUIRE(br_bond >= 0);
    // the bonding branch becomes S02-dominant at large detuning
    CHECK(rows.back().labels[br_bond] == StateCharacter::S02);

    int sign_changes = 0;
    for (size_t i = 1; i < rows.size(); ++i) {
        const double a = rows[i - 1].energies[br_tp] - rows[i - 1].energies[br_bond];
        const double b = rows[i].energies[br_tp] - rows[i].energies[br_bond];
        if (a * b < 0.0) ++sign_changes;
    }
    CHECK(sign_changes == 1);
}

TEST_CASE("level diagram: no couplings means five straight lines") {
    DeviceParams d = bare_device(0.0);
    const auto rows = level_diagram(d, 1.5, -50.0, 50.0, 101);
    for (int br = 0; br < 5; ++br) {
        for (size_t i = 2; i < rows.size(); ++i) {
            const double second_diff = rows[i].energies[br] - 2.0 * rows[i - 1].energies[br] +
                                       rows[i - 2].energies[br];
            CHECK(std::abs(second_diff) < 1e-9);
        }
    }
}

TEST_CASE("level diagrams at 1.5 T and 2.5 T differ only in the triplet splittings") {
    const DeviceParams d = fig2c_device();
    const auto low = level_diagram(d, 1.5, -30.0, 100.0, 131);
    const auto high = level_diagram(d, 2.5, -30.0, 100.0, 131);

    auto branch_with = [&](const std::vector<LevelDiagramRow>& rows, StateCharacter c,
                           bool last_row) {
        const auto& labels = last_row ? rows.back().labels : rows.front().labels;
        for (int br = 0; br < 5; ++br)
            if (labels[br] == c) return br;
        return -1;
    };

    // singlet branches and T0 are B-independent when dB = 0
    const int s_low = branch_with(low, StateCharacter::S02, true);
    const int s_high = branch_with(high, StateCharacter::S02, true);
    const int t0_low = branch_with(low, StateCharacter::T0, false);
    const int t0_high = branch_with(high, StateCharacter::T0, false);
    REQUIRE(s_low >= 0);
    REQUIRE(s_high >= 0);
    REQUIRE(t0_low >= 0);
    REQUIRE(t0_high >= 0);
    for (size_t i = 0; i < low.size(); ++i) {
        CHECK(std::abs(low[i].energies[s_low] - high[i].energies[s_high]) < 1e-9);
        CHECK(std::abs(low[i].energies[t0_low] - high[i].energies[t0_high]) < 1e-9);
    }

    // the T+ branches differ by the Zeeman difference
    const int tp_low = branch_with(low, StateCharacter::TPlus, false);
    const int tp_high = branch_with(high, StateCharacter::TPlus, false);
    const double dEz = d.zeeman_energy(2.5) - d.zeeman_energy(1.5);
    CHECK(std::abs((low[0].energies[tp_low] - high[0].energies[tp_high]) - dEz) < 1e-9);
}

TEST_CASE("level diagram CSV format") {
    const DeviceParams d = fig2c_device();
    const auto rows = level_diagram(d, 1.5, -10.0, 10.0, 3);
    const std::string csv = level_diagram_csv(rows);
    CHECK(csv.rfind("eps_ueV,E1_ueV", 0) == 0);
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 4);  // header + 3 rows
    CHECK(csv.find("Tp") != std::string::npos);
}

TEST_CASE("resonance detunings match the closed-form level positions") {
    const DeviceParams d = fig2c_device();
    const double x = 4.135667 * 11.0;
    const double ez = d.zeeman_energy(1.5);
    const double tc = 8.7;

    const double red_tp = resonance_detuning(d, 1.5, 11.0, Transition::RedTPlus);
    CHECK(red_tp == doctest::Approx((x + ez) - tc * tc / (x + ez)).epsilon(1e-8));

    const double dm0 = resonance_detuning(d, 1.5, 11.0, Transition::Dm0Singlet);
    CHECK(dm0 == doctest::Approx(std::sqrt(x * x - 4.0 * tc * tc)).epsilon(1e-8));

    const double dm0_t0 = resonance_detuning(d, 1.5, 11.0, Transition::Dm0Triplet0);
    CHECK(dm0_t0 == doctest::Approx(x - tc * tc / x).epsilon(1e-8));

    const double red_tm = resonance_detuning(d, 1.5, 11.0, Transition::RedTMinus);
    CHECK(red_tm == doctest::Approx((x - ez) - tc * tc / (x - ez)).epsilon(1e-8));

    const double blue = resonance_detuning(d, 1.5, 11.0, Transition::BlueTPlusToAntibond);
    CHECK(blue ==
          doctest::Approx((tc * tc - (x - ez) * (x - ez)) / (x - ez)).epsilon(1e-8));

    // two-photon Delta m = 0 line
    const double dm0_2ph = resonance_detuning(d, 1.5, 11.0, Transition::Dm0Singlet, 2);
    CHECK(dm0_2ph == doctest::Approx(std::sqrt(4.0 * x * x - 4.0 * tc * tc)).epsilon(1e-8));
}

TEST_CASE("resonance detuning rejects lines that do not exist") {
    const DeviceParams d = fig2c_device();
    // h nu < 2 t_c: the singlet line is unreachable (h*4 = 16.5 < 17.4)
    CHECK_THROWS_AS(resonance_detuning(d, 1.5, 4.0, Transition::Dm0Singlet),
                    UnresolvableLineError);
    // E_z > h nu at 2.5 T and 11 GHz: no T- or blue resonance
    CHECK_THROWS_AS(resonance_detuning(d, 2.5, 11.0, Transition::RedTMinus),
                    UnresolvableLineError);
    CHECK_THROWS_AS(resonance_detuning(d, 2.5, 11.0, Transition::BlueTPlusToAntibond),
                    UnresolvableLineError);
}
