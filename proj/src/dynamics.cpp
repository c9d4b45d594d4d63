#include "dicke/dynamics.hpp"

#include <bit>

#include "dicke/kernels.hpp"

namespace dicke {

namespace {

// digits of atom_code all in {g-, g+}?
bool is_ground_code(std::size_t atom_code, int n_atoms) {
    for (int j = 0; j < n_atoms; ++j)
        if (((atom_code >> (2 * j)) & 0x3u) > 1u)
            return false;
    return true;
}

// base-4 ground code for a set of g+ occupation bits
std::size_t code_from_bits(std::size_t bits, int n_atoms) {
    std::size_t code = 0;
    for (int j = 0; j < n_atoms; ++j)
        if ((bits >> j) & 1u)
            code |= std::size_t{1} << (2 * j);
    return code;
}

std::size_t bits_from_code(std::size_t code, int n_atoms) {
    std::size_t bits = 0;
    for (int j = 0; j < n_atoms; ++j)
        if ((code >> (2 * j)) & 1u)
            bits |= std::size_t{1} << j;
    return bits;
}

}  // namespace

double squared_norm(const JointState& state) { return kernels::squared_norm(state.amp); }

bool is_normalized(const JointState& state, double tol) {
    return std::abs(squared_norm(state) - 1.0) <= tol;
}

JointState tensor_product(const DickeState& atoms, const FieldState& field) {
    JointState joint{atoms.two_j, field.n_max, {}};
    joint.amp.resize(joint.dim());
    std::size_t idx = 0;
    for (int im = 0; im < atoms.dim(); ++im)
        for (int f = 0; f < field.dim(); ++f)
            joint.amp[idx++] = atoms.amp[im] * field.amp[f];
    return joint;
}

JointState evolve_effective(const JointState& state, double phi0, double t) {
    JointState out = state;
    kernels::apply_spin_field_phases(out.amp, out.two_j, out.n_max, phi0 * t);
    return out;
}

JointState evolve_diagonal(const JointState& state, std::span<const double> diag, double t) {
    JointState out = state;
    kernels::apply_diagonal_phases(out.amp, diag, t);
    return out;
}

FullPropagator::FullPropagator(const Eigen::MatrixXcd& hamiltonian) {
    if (hamiltonian.rows() != hamiltonian.cols())
        throw std::invalid_argument("propagator needs a square matrix");
    const double scale = std::max(1.0, hamiltonian.cwiseAbs().maxCoeff());
    const double defect = (hamiltonian - hamiltonian.adjoint()).cwiseAbs().maxCoeff();
    if (defect > 1e-12 * scale)
        throw std::invalid_argument("propagator needs a Hermitian matrix, defect " +
                                    std::to_string(defect));

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(hamiltonian);
    if (solver.info() != Eigen::Success)
        throw std::runtime_error("eigendecomposition failed");
    eigenvalues_ = solver.eigenvalues();
    eigenvectors_ = solver.eigenvectors();
}

Eigen::VectorXcd FullPropagator::apply(const Eigen::VectorXcd& state, double t) const {
    if (state.size() != eigenvectors_.rows())
        throw std::invalid_argument("state dimension does not match the propagator");
    Eigen::VectorXcd modal = eigenvectors_.adjoint() * state;
    for (Eigen::Index k = 0; k < modal.size(); ++k)
        modal[k] *= std::polar(1.0, -eigenvalues_[k] * t);
    return eigenvectors_ * modal;
}

FullAtomState FullPropagator::apply(const FullAtomState& state, double t) const {
    if (static_cast<Eigen::Index>(state.dim()) != eigenvectors_.rows())
        throw std::invalid_argument("state dimension does not match the propagator");
    Eigen::Map<const Eigen::VectorXcd> view(state.amp.data(),
                                            static_cast<Eigen::Index>(state.amp.size()));
    const Eigen::VectorXcd evolved = apply(Eigen::VectorXcd(view), t);
    FullAtomState out = state;
    for (std::size_t i = 0; i < out.amp.size(); ++i)
        out.amp[i] = evolved[static_cast<Eigen::Index>(i)];
    return out;
}

FullAtomState evolve_full(const FullAtomState& state, const Eigen::MatrixXcd& hamiltonian,
                          double t) {
    return FullPropagator(hamiltonian).apply(state, t);
}

FullAtomState joint_to_full(const JointState& state) {
    const int n_atoms = state.two_j;
    if (n_atoms < 1)
        throw std::invalid_argument("joint_to_full: symmetric sector needs N = 2J >= 1 atoms");
    FullAtomState full = make_full_atom_state(n_atoms, state.n_max);
    const std::size_t field_dim = full.field_dim();
    const std::size_t bit_dim = std::size_t{1} << n_atoms;

    std::vector<double> weight(n_atoms + 1);
    for (int k = 0; k <= n_atoms; ++k)
        weight[k] = std::exp(-0.5 * log_binomial(n_atoms, k));

    for (std::size_t bits = 0; bits < bit_dim; ++bits) {
        const int k = std::popcount(bits);
        const std::size_t code = code_from_bits(bits, n_atoms);
        for (std::size_t f = 0; f < field_dim; ++f)
            full.amp[code * field_dim + f] = state.amp[k * field_dim + f] * weight[k];
    }
    return full;
}

GroundProjection full_to_joint(const FullAtomState& state) {
    const int n_atoms = state.n_atoms;
    const std::size_t field_dim = state.field_dim();

    GroundProjection projection;
    projection.state.two_j = n_atoms;
    projection.state.n_max = state.n_max;
    projection.state.amp.assign(static_cast<std::size_t>(n_atoms + 1) * field_dim,
                                cplx{0.0, 0.0});

    for (std::size_t code = 0; code < state.atom_dim(); ++code) {
        if (!is_ground_code(code, n_atoms))
            continue;
        const int k = std::popcount(bits_from_code(code, n_atoms));
        for (std::size_t f = 0; f < field_dim; ++f)
            projection.state.amp[k * field_dim + f] += state.amp[code * field_dim + f];
    }
    for (int k = 0; k <= n_atoms; ++k) {
        const double weight = std::exp(-0.5 * log_binomial(n_atoms, k));
        for (std::size_t f = 0; f < field_dim; ++f)
            projection.state.amp[k * field_dim + f] *= weight;
    }
    projection.weight = squared_norm(projection.state);
    return projection;
}

}  // namespace dicke
