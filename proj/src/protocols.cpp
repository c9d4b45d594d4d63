#include "dicke/protocols.hpp"

#include "dicke/kernels.hpp"

namespace dicke {

namespace {

constexpr double kZeroProbability = 1e-14;

double max_deviation(std::span<const cplx> a, std::span<const cplx> b) {
    double worst = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i)
        worst = std::max(worst, std::abs(a[i] - b[i]));
    return worst;
}

cplx unit_phase(cplx value) {
    const double mag = std::abs(value);
    return mag > 0.0 ? value / mag : cplx{1.0, 0.0};
}

// Closed form of the entangled state: each qubit component drags the sample
// azimuth by -+ phi0 t and picks up exp(+-i phi0 t J).
JointState assemble_entangled_closed_form(SpinJ j, double theta, double phi,
                                          const PolarizationQubit& qubit, double rotation) {
    const DickeState branch_plus = coherent_spin_state(j, {theta, phi + rotation});
    const DickeState branch_minus = coherent_spin_state(j, {theta, phi - rotation});
    const cplx phase = std::polar(1.0, rotation * j.value());

    JointState assembled{j.twice(), 1, {}};
    assembled.amp.assign(assembled.dim(), cplx{0.0, 0.0});
    for (int im = 0; im < j.dim(); ++im) {
        assembled.at(im, 1, 0) = qubit.alpha * phase * branch_plus.amp[im];
        assembled.at(im, 0, 1) = qubit.beta * std::conj(phase) * branch_minus.amp[im];
    }
    return assembled;
}

std::optional<DickeState> atoms_after_linear_detection(const JointState& joint, double sign,
                                                       double& probability) {
    DickeState atoms{joint.two_j, std::vector<cplx>(joint.spin_dim())};
    for (int im = 0; im < joint.spin_dim(); ++im)
        atoms.amp[im] = (joint.at(im, 1, 0) + sign * joint.at(im, 0, 1)) / std::sqrt(2.0);
    probability = squared_norm(atoms);
    if (probability <= kZeroProbability)
        return std::nullopt;
    kernels::scale_in_place(atoms.amp, cplx{1.0 / std::sqrt(probability), 0.0});
    return atoms;
}

}  // namespace

CatResult run_mesoscopic_cat(SpinJ j, double theta, double phi, const PolarizationQubit& qubit,
                             double phi0, double t) {
    const double rotation = phi0 * t;
    const DickeState atoms = coherent_spin_state(j, {theta, phi});
    const FieldState field = qubit_to_field(qubit, 1);

    CatResult result;
    result.joint = evolve_effective(tensor_product(atoms, field), phi0, t);
    result.closed_form_error = max_deviation(
        result.joint.amp, assemble_entangled_closed_form(j, theta, phi, qubit, rotation).amp);

    result.atoms_after_x = atoms_after_linear_detection(result.joint, +1.0, result.prob_x);
    result.atoms_after_y = atoms_after_linear_detection(result.joint, -1.0, result.prob_y);
    result.branch_overlap =
        coherent_overlap_analytic(j, theta, phi + rotation, phi - rotation);
    result.branch_phase = rotation * j.value();
    result.entropy_bits = entanglement_entropy(result.joint);
    return result;
}

GhzResult run_ghz(int n_atoms, double theta, double phi, const PolarizationQubit& qubit,
                  double phi0, double t) {
    if (n_atoms < 2)
        throw std::invalid_argument("run_ghz needs at least two atoms");
    const double rotation = phi0 * t;
    const SpinJ j = SpinJ::from_atom_count(n_atoms);
    const double branch_phase = rotation * j.value();
    const cplx phase = std::polar(1.0, branch_phase);

    const std::vector<cplx> branch_plus = product_state_tensor(n_atoms, {theta, phi + rotation});
    const std::vector<cplx> branch_minus =
        product_state_tensor(n_atoms, {theta, phi - rotation});

    GhzResult result;
    result.branch_phase = branch_phase;
    result.per_atom_branch_overlap = coherent_overlap_analytic(
        SpinJ::from_twice(1), theta, phi + rotation, phi - rotation);
    result.branch_overlap =
        coherent_overlap_analytic(j, theta, phi + rotation, phi - rotation);

    result.state.resize(branch_plus.size());
    for (std::size_t b = 0; b < result.state.size(); ++b)
        result.state[b] = qubit.alpha * phase * branch_plus[b] +
                          qubit.beta * std::conj(phase) * branch_minus[b];
    const double raw_norm = kernels::squared_norm(result.state);
    result.x_probability = 0.5 * raw_norm;  // linear-detection Born weight
    if (raw_norm <= kZeroProbability) {
        result.state.assign(result.state.size(), cplx{0.0, 0.0});
        result.branches_degenerate = true;
        return result;
    }
    kernels::scale_in_place(result.state, cplx{1.0 / std::sqrt(raw_norm), 0.0});

    // Balanced reference with symmetrically orthogonalized branches.
    const cplx overlap = kernels::inner_product(branch_plus, branch_minus);
    const double mag = std::abs(overlap);
    if (1.0 - mag < 1e-12) {
        result.branches_degenerate = true;
        return result;
    }
    const cplx align = unit_phase(overlap);
    std::vector<cplx> sym(branch_plus.size()), anti(branch_plus.size());
    const double sym_norm = std::sqrt(2.0 * (1.0 + mag));
    const double anti_norm = std::sqrt(2.0 * (1.0 - mag));
    for (std::size_t b = 0; b < sym.size(); ++b) {
        const cplx aligned = std::conj(align) * branch_minus[b];
        sym[b] = (branch_plus[b] + aligned) / sym_norm;
        anti[b] = (branch_plus[b] - aligned) / anti_norm;
    }
    const cplx weight_plus = unit_phase(qubit.alpha) * phase;
    const cplx weight_minus = unit_phase(qubit.beta) * std::conj(phase) * align;
    std::vector<cplx> reference(sym.size());
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    for (std::size_t b = 0; b < sym.size(); ++b) {
        const cplx ortho_plus = (sym[b] + anti[b]) * inv_sqrt2;
        const cplx ortho_minus = (sym[b] - anti[b]) * inv_sqrt2;
        reference[b] = (weight_plus * ortho_plus + weight_minus * ortho_minus) * inv_sqrt2;
    }
    result.ghz_fidelity = fidelity(reference, result.state);
    return result;
}

TrappingResult run_trapping(int n_atoms, double theta, double phi,
                            const PolarizationQubit& qubit, double phi0) {
    if (n_atoms < 1)
        throw std::invalid_argument("run_trapping needs at least one atom");
    if (phi0 == 0.0)
        throw std::invalid_argument("run_trapping needs a nonzero coupling rate");
    const double t = pi / phi0;  // accumulated coupling phase of pi
    const SpinJ j = SpinJ::from_atom_count(n_atoms);

    const JointState joint =
        evolve_effective(tensor_product(coherent_spin_state(j, {theta, phi}),
                                        qubit_to_field(qubit, 1)),
                         phi0, t);
    const DensityOperator field_reduced = partial_trace(joint, Subsystem::field);

    TrappingResult result;
    result.fidelity_initial = fidelity(qubit_to_field(qubit, 1).amp, field_reduced);
    const PolarizationQubit flipped{qubit.alpha, -qubit.beta};
    result.fidelity_flipped = fidelity(qubit_to_field(flipped, 1).amp, field_reduced);
    result.even_case = result.fidelity_initial >= result.fidelity_flipped;
    result.entropy_bits = entanglement_entropy(joint);
    result.field_purity = purity(field_reduced);
    return result;
}

HologramResult run_holography(SpinJ j, double theta, double phi, const PolarizationQubit& qubit,
                              double phi0, double t) {
    const JointState joint =
        evolve_effective(tensor_product(coherent_spin_state(j, {theta, phi}),
                                        qubit_to_field(qubit, 1)),
                         phi0, t);

    HologramResult result;
    result.phase_correction = 2.0 * j.value() * phi0 * t;
    result.m_population.resize(joint.spin_dim());
    for (int im = 0; im < joint.spin_dim(); ++im) {
        double weight = 0.0;
        for (int f = 0; f < joint.field_dim(); ++f)
            weight += std::norm(joint.amp[im * joint.field_dim() + f]);
        result.m_population[im] = weight;
    }

    // all atoms found in the lower ground level: keep the i_m = 0 row
    const cplx raw_alpha = joint.at(0, 1, 0);
    const cplx raw_beta = joint.at(0, 0, 1);
    result.success_probability = std::norm(raw_alpha) + std::norm(raw_beta);
    if (result.success_probability <= kZeroProbability)
        return result;

    const double scale = 1.0 / std::sqrt(result.success_probability);
    result.retrieved = PolarizationQubit{raw_alpha * scale, raw_beta * scale};

    const cplx corrected_beta =
        result.retrieved->beta * std::polar(1.0, result.phase_correction);
    const std::vector<cplx> corrected{result.retrieved->alpha, corrected_beta};
    const std::vector<cplx> input{qubit.alpha, qubit.beta};
    result.corrected_fidelity = fidelity(input, corrected);
    return result;
}

FieldCatResult run_field_cat(cplx alpha, cplx beta, double theta, double phi, double phi0,
                             double t, int n_max, double atom_basis_angle) {
    const SpinJ half = SpinJ::from_twice(1);  // single atom
    const CoherentFieldResult field = two_mode_coherent(alpha, beta, n_max);
    const double rotation = phi0 * t;

    FieldCatResult result;
    result.truncation_deficit = field.norm_deficit;
    result.deficit_ok = field.deficit_ok;
    result.joint =
        evolve_effective(tensor_product(coherent_spin_state(half, {theta, phi}), field.state),
                         phi0, t);

    // closed form: lower level pairs with (+rotation/2, -rotation/2) mode
    // phases, upper level with the opposite pair
    {
        const cplx spin = std::polar(1.0, 0.5 * rotation);
        const FieldState lower =
            two_mode_coherent(alpha * spin, beta * std::conj(spin), n_max).state;
        const FieldState upper =
            two_mode_coherent(alpha * std::conj(spin), beta * spin, n_max).state;
        JointState assembled{1, n_max, {}};
        assembled.amp.resize(assembled.dim());
        const cplx weight_lower{std::cos(0.5 * theta), 0.0};
        const cplx weight_upper = std::polar(std::sin(0.5 * theta), -phi);
        for (int f = 0; f < assembled.field_dim(); ++f) {
            assembled.amp[f] = weight_lower * lower.amp[f];
            assembled.amp[assembled.field_dim() + f] = weight_upper * upper.amp[f];
        }
        result.closed_form_error = max_deviation(result.joint.amp, assembled.amp);
    }

    const double c = std::cos(atom_basis_angle);
    const double s = std::sin(atom_basis_angle);
    const auto condition = [&](double w_lower, double w_upper) {
        FieldCatBranch branch;
        FieldState state{n_max, std::vector<cplx>(result.joint.field_dim())};
        for (int f = 0; f < result.joint.field_dim(); ++f)
            state.amp[f] = w_lower * result.joint.amp[f] +
                           w_upper * result.joint.amp[result.joint.field_dim() + f];
        branch.probability = squared_norm(state);
        if (branch.probability > kZeroProbability) {
            kernels::scale_in_place(state.amp, cplx{1.0 / std::sqrt(branch.probability), 0.0});
            branch.state = std::move(state);
        }
        return branch;
    };
    result.outcome_aligned = condition(c, s);
    result.outcome_orthogonal = condition(-s, c);
    return result;
}

}  // namespace dicke
