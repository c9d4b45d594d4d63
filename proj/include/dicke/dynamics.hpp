// dynamics.hpp - time evolution
//
// Two propagators:
//   * evolve_effective: the spin-field coupling is diagonal on the
//     (m, n+, n-) lattice, so evolution is exact phase multiplication
//   * FullPropagator / evolve_full: dense-matrix propagation through a
//     Hermitian eigendecomposition, the oracle for the four-level model
#pragma once

#include <Eigen/Dense>

#include "dicke/field_space.hpp"
#include "dicke/hamiltonians.hpp"
#include "dicke/spin_algebra.hpp"

namespace dicke {

// Pure state over Dicke x two-mode-Fock, amp[(i_m (n_max+1) + n+) (n_max+1) + n-].
struct JointState {
    int two_j = 0;
    int n_max = 0;
    std::vector<cplx> amp;

    int spin_dim() const { return two_j + 1; }
    int field_dim() const { return (n_max + 1) * (n_max + 1); }
    std::size_t dim() const { return static_cast<std::size_t>(spin_dim()) * field_dim(); }
    std::size_t index(int i_m, int n_plus, int n_minus) const {
        return (static_cast<std::size_t>(i_m) * (n_max + 1) + n_plus) * (n_max + 1) + n_minus;
    }
    cplx& at(int i_m, int n_plus, int n_minus) { return amp[index(i_m, n_plus, n_minus)]; }
    const cplx& at(int i_m, int n_plus, int n_minus) const {
        return amp[index(i_m, n_plus, n_minus)];
    }
};

double squared_norm(const JointState& state);
bool is_normalized(const JointState& state, double tol = 1e-12);

JointState tensor_product(const DickeState& atoms, const FieldState& field);

// exp(-i phi0 t Nz Rz): each amplitude picks up exp(-i phi0 t (n+ - n-) m)
JointState evolve_effective(const JointState& state, double phi0, double t);

// exp(-i t diag) for the diagonal builders (dispersive, compensation phases)
JointState evolve_diagonal(const JointState& state, std::span<const double> diag, double t);

// Propagator for a time-independent Hermitian matrix, eigendecomposed once.
class FullPropagator {
public:
    explicit FullPropagator(const Eigen::MatrixXcd& hamiltonian);

    FullAtomState apply(const FullAtomState& state, double t) const;
    Eigen::VectorXcd apply(const Eigen::VectorXcd& state, double t) const;

    Eigen::Index dim() const { return eigenvectors_.rows(); }

private:
    Eigen::VectorXd eigenvalues_;
    Eigen::MatrixXcd eigenvectors_;
};

// One-shot convenience around FullPropagator.
FullAtomState evolve_full(const FullAtomState& state, const Eigen::MatrixXcd& hamiltonian,
                          double t);

// Symmetric ground-manifold bridge to the brute-force representation.
// Atoms in ground levels map Dicke index k = J+m onto the C(N,k) base-4
// codes whose digits are all 0/1 with k ones.
FullAtomState joint_to_full(const JointState& state);

struct GroundProjection {
    JointState state;         // unnormalized symmetric ground-manifold component
    double weight = 0.0;      // squared norm of that component
};

GroundProjection full_to_joint(const FullAtomState& state);

}  // namespace dicke
