#include "dicke/validation.hpp"

#include <random>

#include "dicke/kernels.hpp"

namespace dicke {

namespace {

Eigen::MatrixXcd dense_spin_op(int two_j, DickeState (*op)(const DickeState&)) {
    const int dim = two_j + 1;
    Eigen::MatrixXcd mat = Eigen::MatrixXcd::Zero(dim, dim);
    for (int c = 0; c < dim; ++c) {
        DickeState basis{two_j, std::vector<cplx>(dim, cplx{0.0, 0.0})};
        basis.amp[c] = 1.0;
        const DickeState column = op(basis);
        for (int r = 0; r < dim; ++r)
            mat(r, c) = column.amp[r];
    }
    return mat;
}

Eigen::MatrixXcd dense_field_op(int n_max, FieldState (*op)(const FieldState&)) {
    const int dim = (n_max + 1) * (n_max + 1);
    Eigen::MatrixXcd mat = Eigen::MatrixXcd::Zero(dim, dim);
    for (int c = 0; c < dim; ++c) {
        FieldState basis{n_max, std::vector<cplx>(dim, cplx{0.0, 0.0})};
        basis.amp[c] = 1.0;
        const FieldState column = op(basis);
        for (int r = 0; r < dim; ++r)
            mat(r, c) = column.amp[r];
    }
    return mat;
}

FieldState nminus_state(const FieldState& state) { return apply_nminus(state).state; }
FieldState nplus_state(const FieldState& state) { return apply_nplus(state).state; }

// worst entry over columns whose total photon number is below the cutoff
double masked_max(const Eigen::MatrixXcd& mat, int n_max) {
    const int modes = n_max + 1;
    double worst = 0.0;
    for (int np = 0; np <= n_max; ++np)
        for (int nm = 0; nm <= n_max; ++nm) {
            if (np + nm >= n_max)
                continue;
            const int c = np * modes + nm;
            for (int r = 0; r < mat.rows(); ++r)
                worst = std::max(worst, std::abs(mat(r, c)));
        }
    return worst;
}

}  // namespace

EffectiveValidation validate_effective_evolution(int n_atoms, double theta, double phi,
                                                 const PolarizationQubit& qubit,
                                                 double delta_over_rabi, double coupling_phase,
                                                 int n_max) {
    if (delta_over_rabi == 0.0)
        throw std::invalid_argument("delta_over_rabi must be nonzero");

    EffectiveValidation report;
    report.rabi = 1.0;
    report.delta = delta_over_rabi;
    report.phi0 = 1.0 / report.delta;
    report.time = coupling_phase / report.phi0;

    const double omega_f = 0.37 * report.rabi;  // any value; compensated exactly below
    const ModelParams params =
        make_model_params(omega_f + report.delta, omega_f + report.delta, omega_f,
                          cplx{report.rabi, 0.0}, cplx{report.rabi, 0.0}, n_atoms, n_max);

    const SpinJ j = SpinJ::from_atom_count(n_atoms);
    const JointState joint0 =
        tensor_product(coherent_spin_state(j, {theta, phi}), qubit_to_field(qubit, n_max));

    const FullAtomState evolved =
        evolve_full(joint_to_full(joint0), build_full_hamiltonian(params), report.time);

    // Diagonal energies the effective coupling leaves out on the ground
    // manifold: lab-frame ground-level splittings, free field energy, and
    // the common photon-number Stark shift.
    const int modes = n_max + 1;
    const double half_n = 0.5 * n_atoms;
    std::vector<double> compensation(joint0.dim());
    std::size_t idx = 0;
    for (int im = 0; im <= n_atoms; ++im) {
        const double m = 0.5 * (2 * im - n_atoms);
        const double atomic =
            -0.5 * params.omega1 * (half_n + m) - 0.5 * params.omega2 * (half_n - m);
        for (int np = 0; np < modes; ++np)
            for (int nm = 0; nm < modes; ++nm)
                compensation[idx++] =
                    atomic + (params.omega_f - report.phi0 * half_n) * (np + nm);
    }

    const JointState reference = evolve_diagonal(
        evolve_effective(joint0, report.phi0, report.time), compensation, report.time);
    const FullAtomState reference_full = joint_to_full(reference);

    report.infidelity =
        1.0 - std::norm(kernels::inner_product(reference_full.amp, evolved.amp));
    report.ground_leakage = 1.0 - full_to_joint(evolved).weight;
    return report;
}

AlgebraResiduals run_algebra_check(int two_j_max, int n_max, std::uint64_t seed) {
    if (two_j_max < 1 || n_max < 1)
        throw std::invalid_argument("algebra check needs 2J >= 1 and n_max >= 1");

    AlgebraResiduals residuals;
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(-1.0, 1.0);

    for (int two_j = 1; two_j <= two_j_max; ++two_j) {
        const int dim = two_j + 1;
        const Eigen::MatrixXcd rz = dense_spin_op(two_j, apply_rz);
        const Eigen::MatrixXcd rm = dense_spin_op(two_j, apply_rminus);
        const Eigen::MatrixXcd rp = dense_spin_op(two_j, apply_rplus);

        residuals.spin_commutator = std::max(
            residuals.spin_commutator,
            ((rm * rp - rp * rm) + 2.0 * rz).cwiseAbs().maxCoeff());
        residuals.spin_commutator = std::max(
            residuals.spin_commutator, ((rz * rp - rp * rz) - rp).cwiseAbs().maxCoeff());
        residuals.spin_commutator = std::max(
            residuals.spin_commutator, ((rz * rm - rm * rz) + rm).cwiseAbs().maxCoeff());

        const double casimir_value = 0.25 * two_j * (two_j + 2);  // J(J+1)
        residuals.casimir = std::max(
            residuals.casimir,
            (rz * rz + 0.5 * (rp * rm + rm * rp) -
             casimir_value * Eigen::MatrixXcd::Identity(dim, dim))
                .cwiseAbs()
                .maxCoeff());

        DickeState random_state{two_j, std::vector<cplx>(dim)};
        for (cplx& a : random_state.amp)
            a = cplx{unit(rng), unit(rng)};
        const DickeState via_ladder =
            apply_rminus(apply_rplus(random_state));
        const DickeState via_ladder_rev = apply_rplus(apply_rminus(random_state));
        const DickeState via_z = apply_rz(random_state);
        for (int i = 0; i < dim; ++i) {
            const cplx commutator = via_ladder.amp[i] - via_ladder_rev.amp[i];
            residuals.random_action = std::max(
                residuals.random_action, std::abs(commutator + 2.0 * via_z.amp[i]));
        }
    }

    {
        const Eigen::MatrixXcd nz = dense_field_op(n_max, apply_nz);
        const Eigen::MatrixXcd nm_op = dense_field_op(n_max, nminus_state);
        const Eigen::MatrixXcd np_op = dense_field_op(n_max, nplus_state);

        residuals.field_commutator = std::max(
            residuals.field_commutator, masked_max((nm_op * np_op - np_op * nm_op) + nz, n_max));
        residuals.field_commutator = std::max(
            residuals.field_commutator,
            masked_max((0.5 * nz * np_op - np_op * 0.5 * nz) - np_op, n_max));
        residuals.field_commutator = std::max(
            residuals.field_commutator,
            masked_max((0.5 * nz * nm_op - nm_op * 0.5 * nz) + nm_op, n_max));
    }

    for (const int two_j : {1, 2, 10, 20, 50, 100}) {
        const SpinJ j = SpinJ::from_twice(two_j);
        for (int step = 0; step <= 8; ++step) {
            const double theta = pi * step / 8.0;
            residuals.coherent_norm = std::max(
                residuals.coherent_norm,
                std::abs(squared_norm(coherent_spin_state(j, {theta, 0.7})) - 1.0));
        }
    }

    for (const int two_j : {1, 2, 4, 10, 20}) {
        const SpinJ j = SpinJ::from_twice(two_j);
        for (int ts = 0; ts <= 6; ++ts) {
            const double theta = pi * ts / 6.0;
            for (int hs = 0; hs < 32; ++hs) {
                const double half_angle = 0.1 * hs;
                const DickeState bra = coherent_spin_state(j, {theta, +half_angle});
                const DickeState ket = coherent_spin_state(j, {theta, -half_angle});
                const cplx numeric = kernels::inner_product(bra.amp, ket.amp);
                const cplx analytic =
                    coherent_overlap_analytic(j, theta, +half_angle, -half_angle);
                residuals.overlap = std::max(residuals.overlap, std::abs(numeric - analytic));
            }
        }
    }

    return residuals;
}

}  // namespace dicke
