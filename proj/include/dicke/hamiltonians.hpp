// hamiltonians.hpp - full four-level model, dispersive reduction, effective coupling
//
// Three builders at decreasing levels of detail:
//   * full: the lab-frame four-level Hamiltonian on N atoms x two modes,
//     dense Hermitian matrix, brute-force oracle for small N
//   * dispersive: the ground-manifold Stark-shift Hamiltonian, diagonal on
//     the Dicke x Fock lattice, common photon-number term kept
//   * effective: the spin-field coupling phi0 * Nz * Rz alone, the form the
//     closed-form protocol predictions are written in
// The dispersive and effective diagonals differ by the common term
// -(Omega^2/Delta)(N/2)(n+ + n-), a deterministic phase on fixed
// total-photon sectors.
#pragma once

#include <Eigen/Dense>
#include <vector>

#include "dicke/types.hpp"

namespace dicke {

// Per-atom levels, two ground and two excited; the digit of atom j in the
// base-4 composite index.
enum class AtomLevel : int { g_minus = 0, g_plus = 1, e_minus = 2, e_plus = 3 };

struct ModelParams {
    double omega1 = 0.0;   // |g+> <-> |e-> transition frequency
    double omega2 = 0.0;   // |g-> <-> |e+> transition frequency
    double omega_f = 0.0;  // field frequency, both modes
    cplx rabi_plus{0.0, 0.0};
    cplx rabi_minus{0.0, 0.0};
    double delta = 0.0;  // common detuning omega1 - omega_f = omega2 - omega_f
    int n_atoms = 1;
    int n_max = 1;

    // |Delta| >= 10 max(|rabi|) sqrt(n_max+1)
    bool dispersive_regime() const;
};

// Validates the equal-detuning constraint and a nonzero detuning.
ModelParams make_model_params(double omega1, double omega2, double omega_f, cplx rabi_plus,
                              cplx rabi_minus, int n_atoms, int n_max);

struct EffectiveParams {
    double phi0 = 0.0;  // coupling rate Omega^2 / Delta
    SpinJ j = SpinJ::from_twice(0);
};

EffectiveParams make_effective_params(double phi0, SpinJ j);

// Derives phi0 = |rabi|^2 / delta; requires |rabi_plus| = |rabi_minus|.
EffectiveParams effective_from_model(const ModelParams& params);

// Brute-force state over N four-level atoms and the two-mode Fock lattice.
// Index layout: (sum_j level_j 4^j) * field_dim + (n+ (n_max+1) + n-).
struct FullAtomState {
    int n_atoms = 1;
    int n_max = 1;
    std::vector<cplx> amp;

    std::size_t atom_dim() const { return std::size_t{1} << (2 * n_atoms); }
    std::size_t field_dim() const {
        return static_cast<std::size_t>(n_max + 1) * (n_max + 1);
    }
    std::size_t dim() const { return atom_dim() * field_dim(); }
};

FullAtomState make_full_atom_state(int n_atoms, int n_max);
double squared_norm(const FullAtomState& state);

// Dense Hermitian matrix of the full model.  Guarded against dimensions the
// dense representation cannot hold.
Eigen::MatrixXcd build_full_hamiltonian(const ModelParams& params);

// Ground-manifold Stark shifts, diagonal over the (m, n+, n-) lattice:
//   -(|rabi_minus|^2/delta) n- (N/2 + m) - (|rabi_plus|^2/delta) n+ (N/2 - m)
std::vector<double> build_dispersive_hamiltonian(const ModelParams& params);

// phi0 (n+ - n-) m over the same lattice
std::vector<double> build_effective_hamiltonian(const EffectiveParams& params, int n_max);

}  // namespace dicke
