#include "patspec/dissipation.hpp"

#include <cmath>

namespace patspec {

namespace {

// Bose occupation at energy de > 0.
double bose(double de, double temperature) {
    if (temperature <= 0.0) return 0.0;
    const double x = de / (constants::k_boltzmann * temperature);
    if (x > 700.0) return 0.0;
    return 1.0 / std::expm1(x);
}

// vec(A rho B) = (B^T kron A) vec(rho), column stacking
Mat25 kron5(const Mat5& bt, const Mat5& a) {
    Mat25 out;
    for (int i = 0; i < 5; ++i)
        for (int j = 0; j < 5; ++j)
            out.block<5, 5>(5 * i, 5 * j) = bt(i, j) * a;
    return out;
}

void add_dissipator(Mat25& gen, const Mat5& l, double rate) {
    if (rate <= 0.0) return;
    const Mat5 ldl = l.adjoint() * l;
    const Mat5 id = Mat5::Identity();
    gen += rate * (kron5(l.conjugate(), l) - 0.5 * kron5(id, ldl) -
                   0.5 * kron5(ldl.transpose(), id));
}

}  // namespace

double spectral_density(double omega_ueV, const PhononBath& bath) {
    if (omega_ueV < 0.0) throw DomainError("spectral_density: requires omega >= 0");
    const double x = omega_ueV / bath.cutoff_ueV;
    return std::pow(x, bath.exponent_p) * std::exp(-x * x);
}

double calibrated_coupling_eta(const PhononBath& bath) {
    // |<bond|D|antibond>|^2 for the hybridized singlets at t_c = 8.7, eps = 100
    const double tc = 8.7, eps = 100.0;
    const double m2 = tc * tc / (eps * eps + 4.0 * tc * tc);
    const double de = 45.0;  // ueV, roughly one 11 GHz photon
    const double weight = m2 * spectral_density(de, bath) * (bose(de, bath.temperature) + 1.0);
    return 0.01 / weight;  // target rate 1/(100 ns)
}

double PhononBath::eta() const {
    return coupling_eta > 0.0 ? coupling_eta : calibrated_coupling_eta(*this);
}

RateMatrix transition_rates(const EigenSystem& eig, const PhononBath& bath) {
    RateMatrix out;
    const double eta = bath.eta();
    for (int i = 0; i < 5; ++i) {
        for (int j = i + 1; j < 5; ++j) {
            const double de = eig.energies(j) - eig.energies(i);
            if (de <= 0.0) continue;  // no secular rate between degenerate states
            const double m2 =
                std::norm(std::conj(eig.s02_amplitude(i)) * eig.s02_amplitude(j));
            const double weight = eta * m2 * spectral_density(de, bath);
            const double nb = bose(de, bath.temperature);
            out.gamma(i, j) = weight * (nb + 1.0);  // relaxation j -> i
            out.gamma(j, i) = weight * nb;          // excitation i -> j
        }
    }
    return out;
}

Superoperator build_superoperator(const RotatingFrameModel& model, const RateMatrix& rates,
                                  const EigenSystem& eig, const PhononBath& bath) {
    Superoperator out;
    const Mat5 h = model.h_eff + model.v_drive;
    const Mat5 id = Mat5::Identity();
    const cxd minus_i_over_hbar(0.0, -1.0 / constants::hbar);

    out.generator = minus_i_over_hbar * (kron5(id, h) - kron5(h.transpose(), id));

    for (int i = 0; i < 5; ++i) {
        for (int j = 0; j < 5; ++j) {
            if (i == j) continue;
            const double rate = rates.gamma(i, j);
            if (rate <= 0.0) continue;
            Mat5 jump = Mat5::Zero();
            jump(i, j) = 1.0;
            add_dissipator(out.generator, jump, rate);
        }
    }

    // pure dephasing of the charge coordinate
    out.s02_projector = Mat5::Zero();
    for (int i = 0; i < 5; ++i)
        for (int j = 0; j < 5; ++j)
            out.s02_projector(i, j) = std::conj(eig.s02_amplitude(i)) * eig.s02_amplitude(j);
    add_dissipator(out.generator, out.s02_projector, bath.dephasing_rate);

    return out;
}

DensityMatrix steady_state(const Superoperator& superop) {
    // trace functional on vec(rho): diagonal elements sit at column*5 + column
    Eigen::Matrix<cxd, 1, 25> trace_row = Eigen::Matrix<cxd, 1, 25>::Zero();
    for (int k = 0; k < 5; ++k) trace_row(0, 6 * k) = 1.0;

    Eigen::Matrix<cxd, 26, 26> bordered = Eigen::Matrix<cxd, 26, 26>::Zero();
    bordered.topLeftCorner<25, 25>() = superop.generator;
    bordered.block<1, 25>(25, 0) = trace_row;
    bordered.block<25, 1>(0, 25) = trace_row.adjoint();

    Eigen::Matrix<cxd, 26, 1> rhs = Eigen::Matrix<cxd, 26, 1>::Zero();
    rhs(25) = 1.0;

    const double gen_scale = std::max(1.0, superop.generator.cwiseAbs().maxCoeff());

    Eigen::FullPivLU<Eigen::Matrix<cxd, 26, 26>> lu(bordered);
    bool solved = false;
    Vec25 x = Vec25::Zero();
    if (lu.isInvertible()) {
        const Eigen::Matrix<cxd, 26, 1> sol = lu.solve(rhs);
        x = sol.head<25>();
        const double residual = (superop.generator * x).cwiseAbs().maxCoeff();
        solved = residual <= 1e-9 * gen_scale;
    }

    if (!solved) {
        // diagnose the kernel with an SVD of the generator itself
        Eigen::JacobiSVD<Mat25> svd(superop.generator, Eigen::ComputeFullV);
        const auto& sv = svd.singularValues();
        const double tol = 1e-10 * std::max(sv(0), gen_scale);
        int kernel_dim = 0;
        for (int k = 0; k < 25; ++k)
            if (sv(k) <= tol) ++kernel_dim;
        if (kernel_dim == 0)
            throw SteadyStateError("steady_state: generator kernel is numerically empty", 0);
        if (kernel_dim > 1)
            throw SteadyStateError("steady_state: degenerate steady states (kernel dimension " +
                                       std::to_string(kernel_dim) + ")",
                                   kernel_dim);
        x = svd.matrixV().col(24);
        const cxd tr = trace_row * x;
        if (std::abs(tr) < 1e-12)
            throw SteadyStateError("steady_state: kernel vector is traceless", 1);
        x /= tr;
    }

    DensityMatrix rho;
    for (int c = 0; c < 5; ++c)
        for (int r = 0; r < 5; ++r) rho.rho(r, c) = x(5 * c + r);
    rho.rho = 0.5 * (rho.rho + rho.rho.adjoint()).eval();
    const double tr = rho.rho.trace().real();
    rho.rho /= tr;
    return rho;
}

Vec5d gibbs_populations(const EigenSystem& eig, double temperature) {
    Vec5d p;
    if (temperature <= 0.0) {
        p.setZero();
        p(0) = 1.0;
        return p;
    }
    const double kt = constants::k_boltzmann * temperature;
    const double e0 = eig.energies(0);
    double z = 0.0;
    for (int k = 0; k < 5; ++k) {
        p(k) = std::exp(-(eig.energies(k) - e0) / kt);
        z += p(k);
    }
    p /= z;
    return p;
}

}  // namespace patspec
