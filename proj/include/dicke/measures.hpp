// measures.hpp - state comparison and entanglement diagnostics
#pragma once

#include <Eigen/Dense>
#include <span>

#include "dicke/dynamics.hpp"
#include "dicke/types.hpp"

namespace dicke {

// Hermitian, unit-trace, positive (within numerical slack) operator.
struct DensityOperator {
    Eigen::MatrixXcd mat;

    Eigen::Index dim() const { return mat.rows(); }
};

// Validates trace (1e-10) and Hermiticity (1e-12 relative to the largest entry).
DensityOperator make_density(Eigen::MatrixXcd mat);

DensityOperator pure_density(std::span<const cplx> state);

double purity(const DensityOperator& rho);

// |<a|b>|^2
double fidelity(std::span<const cplx> a, std::span<const cplx> b);
// <psi| rho |psi>
double fidelity(std::span<const cplx> psi, const DensityOperator& rho);
// Uhlmann fidelity (Tr sqrt(sqrt(rho) sigma sqrt(rho)))^2
double fidelity(const DensityOperator& rho, const DensityOperator& sigma);

enum class Subsystem { atoms, field };

// Reduced density operator over the kept subsystem.
DensityOperator partial_trace(const JointState& joint, Subsystem keep);

// Von Neumann entropy in bits; eigenvalues below 1e-12 are clamped before
// the logs.
double entropy_bits(const DensityOperator& rho);

// Entropy of either reduced state of a normalized pure joint state (the two
// cuts agree); computed on the smaller side.
double entanglement_entropy(const JointState& joint);

}  // namespace dicke
