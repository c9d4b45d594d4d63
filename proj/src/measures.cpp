#include "dicke/measures.hpp"

#include "dicke/kernels.hpp"

namespace dicke {

namespace {

constexpr double kEigenvalueClamp = 1e-12;

Eigen::MatrixXcd matrix_sqrt_psd(const Eigen::MatrixXcd& mat) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(mat);
    Eigen::VectorXd roots = solver.eigenvalues();
    for (Eigen::Index i = 0; i < roots.size(); ++i)
        roots[i] = std::sqrt(std::max(0.0, roots[i]));
    return solver.eigenvectors() * roots.asDiagonal() * solver.eigenvectors().adjoint();
}

DensityOperator reduce(const JointState& joint, Subsystem keep) {
    const std::size_t rows = joint.spin_dim();
    const std::size_t cols = joint.field_dim();
    const std::size_t kept = keep == Subsystem::atoms ? rows : cols;

    std::vector<cplx> rho(kept * kept);
    if (keep == Subsystem::atoms)
        kernels::reduce_density_keep_rows(joint.amp, rows, cols, rho);
    else
        kernels::reduce_density_keep_cols(joint.amp, rows, cols, rho);

    Eigen::MatrixXcd mat(kept, kept);
    for (std::size_t r = 0; r < kept; ++r)
        for (std::size_t c = 0; c < kept; ++c)
            mat(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = rho[r * kept + c];
    return DensityOperator{std::move(mat)};
}

}  // namespace

DensityOperator make_density(Eigen::MatrixXcd mat) {
    if (mat.rows() != mat.cols())
        throw std::invalid_argument("density operator must be square");
    const double scale = std::max(1.0, mat.cwiseAbs().maxCoeff());
    if ((mat - mat.adjoint()).cwiseAbs().maxCoeff() > 1e-12 * scale)
        throw std::invalid_argument("density operator must be Hermitian");
    if (std::abs(mat.trace().real() - 1.0) > 1e-10 || std::abs(mat.trace().imag()) > 1e-10)
        throw std::invalid_argument("density operator must have unit trace");
    return DensityOperator{std::move(mat)};
}

DensityOperator pure_density(std::span<const cplx> state) {
    const Eigen::Index dim = static_cast<Eigen::Index>(state.size());
    Eigen::Map<const Eigen::VectorXcd> psi(state.data(), dim);
    return DensityOperator{psi * psi.adjoint()};
}

double purity(const DensityOperator& rho) { return (rho.mat * rho.mat).trace().real(); }

double fidelity(std::span<const cplx> a, std::span<const cplx> b) {
    if (a.size() != b.size())
        throw std::invalid_argument("fidelity: dimension mismatch");
    return std::norm(kernels::inner_product(a, b));
}

double fidelity(std::span<const cplx> psi, const DensityOperator& rho) {
    if (static_cast<Eigen::Index>(psi.size()) != rho.dim())
        throw std::invalid_argument("fidelity: dimension mismatch");
    Eigen::Map<const Eigen::VectorXcd> v(psi.data(), rho.dim());
    return (v.adjoint() * rho.mat * v)(0, 0).real();
}

double fidelity(const DensityOperator& rho, const DensityOperator& sigma) {
    if (rho.dim() != sigma.dim())
        throw std::invalid_argument("fidelity: dimension mismatch");
    const Eigen::MatrixXcd root = matrix_sqrt_psd(rho.mat);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(root * sigma.mat * root);
    double sum = 0.0;
    for (Eigen::Index i = 0; i < solver.eigenvalues().size(); ++i)
        sum += std::sqrt(std::max(0.0, solver.eigenvalues()[i]));
    return sum * sum;
}

DensityOperator partial_trace(const JointState& joint, Subsystem keep) {
    return reduce(joint, keep);
}

double entropy_bits(const DensityOperator& rho) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(rho.mat);
    double entropy = 0.0;
    for (Eigen::Index i = 0; i < solver.eigenvalues().size(); ++i) {
        const double p = solver.eigenvalues()[i];
        if (p > kEigenvalueClamp)
            entropy -= p * std::log2(p);
    }
    return std::max(0.0, entropy);  // a lone eigenvalue of 1+eps must not go negative
}

double entanglement_entropy(const JointState& joint) {
    if (!is_normalized(joint, 1e-9))
        throw std::invalid_argument("entanglement entropy needs a normalized state");
    const Subsystem smaller =
        joint.spin_dim() <= joint.field_dim() ? Subsystem::atoms : Subsystem::field;
    return entropy_bits(partial_trace(joint, smaller));
}

}  // namespace dicke
