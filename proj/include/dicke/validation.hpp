// validation.hpp - model-reduction checks and operator-algebra residuals
#pragma once

#include <cstdint>

#include "dicke/dynamics.hpp"

namespace dicke {

// Full four-level dynamics against the effective coupling for a
// ground-manifold start.  The effective reference is embedded in the full
// space after the accounted-for phases (lab-frame ground energies, free
// field energy, common photon-number Stark shift) have been reapplied, so
// the infidelity isolates the reduction error itself.
struct EffectiveValidation {
    double infidelity = 0.0;      // 1 - |<compensated effective | full>|^2
    double ground_leakage = 0.0;  // population outside the symmetric ground manifold
    double rabi = 0.0;
    double delta = 0.0;
    double phi0 = 0.0;
    double time = 0.0;
};

EffectiveValidation validate_effective_evolution(int n_atoms, double theta, double phi,
                                                 const PolarizationQubit& qubit,
                                                 double delta_over_rabi, double coupling_phase,
                                                 int n_max);

// Worst-case residuals of the operator algebra, built as dense matrices.
// Field relations are checked on columns with total photon number below the
// cutoff, where truncation is exact; the SU(2) relations close for the
// triple (Nz/2, N-, N+).
struct AlgebraResiduals {
    double spin_commutator = 0.0;  // [R-,R+]+2Rz and [Rz,R+-]-+R+- entrywise
    double casimir = 0.0;          // Rz^2 + (R+R- + R-R+)/2 - J(J+1)
    double field_commutator = 0.0; // [N-,N+]+Nz and [Nz/2,N+-]-+N+- entrywise
    double coherent_norm = 0.0;    // | ||coherent state||^2 - 1 | up to J = 50
    double overlap = 0.0;          // closed-form vs numeric inner product
    double random_action = 0.0;    // commutator action on seeded random states
};

AlgebraResiduals run_algebra_check(int two_j_max, int n_max, std::uint64_t seed);

}  // namespace dicke
