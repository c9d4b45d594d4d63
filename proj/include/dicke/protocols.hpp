// protocols.hpp - the five named protocols as end-to-end drivers
//
// Each driver evolves the stated input under the effective spin-field
// coupling, carries out the stated projective measurement, and returns a
// structured record holding the states, probabilities, overlaps and phases
// the closed-form predictions are written in.  Drivers also assemble the
// closed-form prediction themselves and report the worst componentwise
// deviation from the numerically evolved state, so every run doubles as a
// formula check.
#pragma once

#include <optional>

#include "dicke/dynamics.hpp"
#include "dicke/measures.hpp"

namespace dicke {

// Entangled atom-field evolution of a coherent atomic sample with a
// polarization qubit, then linear-polarization detection.  Outcome x keeps
// the relative branch sign, outcome y flips it.
struct CatResult {
    JointState joint;  // evolved state, single-photon sector
    double prob_x = 0.0;
    double prob_y = 0.0;
    std::optional<DickeState> atoms_after_x;  // normalized superposition of the two branches
    std::optional<DickeState> atoms_after_y;
    cplx branch_overlap{0.0, 0.0};  // analytic overlap of the two rotated branches
    double branch_phase = 0.0;      // phi0 t J; branches carry exp(+-i branch_phase)
    double entropy_bits = 0.0;      // atom-field entanglement before detection
    double closed_form_error = 0.0; // max |numeric - assembled| amplitude deviation
};

CatResult run_mesoscopic_cat(SpinJ j, double theta, double phi, const PolarizationQubit& qubit,
                             double phi0, double t);

// Product-basis expansion of the post-detection multi-atom superposition.
// The fidelity reference is the balanced two-branch state with symmetrically
// orthogonalized branches, carrying the input weights' phases; it is
// undefined when the branches are (numerically) parallel.
struct GhzResult {
    std::vector<cplx> state;  // normalized 2^N amplitudes, bit j set = atom j in g+
    double x_probability = 0.0;
    cplx per_atom_branch_overlap{0.0, 0.0};
    cplx branch_overlap{0.0, 0.0};  // N-atom branch overlap
    std::optional<double> ghz_fidelity;
    bool branches_degenerate = false;
    double branch_phase = 0.0;  // phi0 t J
};

GhzResult run_ghz(int n_atoms, double theta, double phi, const PolarizationQubit& qubit,
                  double phi0, double t);

// Field state after a full pi of accumulated coupling phase: even atom
// numbers return the input qubit, odd ones flip the relative sign.
struct TrappingResult {
    double fidelity_initial = 0.0;  // reduced field state vs input qubit
    double fidelity_flipped = 0.0;  // vs (alpha, -beta)
    bool even_case = false;         // which fidelity won
    double entropy_bits = 0.0;      // residual atom-field entanglement
    double field_purity = 0.0;
};

TrappingResult run_trapping(int n_atoms, double theta, double phi,
                            const PolarizationQubit& qubit, double phi0);

// Storage in the ground-state coherence and retrieval by projecting the
// sample onto the all-lower collective state |-J>.
struct HologramResult {
    std::optional<PolarizationQubit> retrieved;  // as measured, phases included
    double success_probability = 0.0;            // cos(theta/2)^(4J) for pure input
    double phase_correction = 0.0;               // relative phase 2 J phi0 t, known a priori
    double corrected_fidelity = 0.0;             // vs input after unwinding that phase
    std::vector<double> m_population;            // diagnostic distribution over m
};

HologramResult run_holography(SpinJ j, double theta, double phi, const PolarizationQubit& qubit,
                              double phi0, double t);

// Single atom dispersively stirring a two-mode coherent field, measured in a
// rotated ground-level basis; both conditional field states come back.
struct FieldCatBranch {
    std::optional<FieldState> state;  // normalized; absent for a ~0-probability outcome
    double probability = 0.0;
};

struct FieldCatResult {
    JointState joint;  // two_j = 1 (single atom) times the field lattice
    double truncation_deficit = 0.0;
    bool deficit_ok = true;
    double closed_form_error = 0.0;
    FieldCatBranch outcome_aligned;     // atom in cos(chi)|g-> + sin(chi)|g+>
    FieldCatBranch outcome_orthogonal;  // atom in -sin(chi)|g-> + cos(chi)|g+>
};

FieldCatResult run_field_cat(cplx alpha, cplx beta, double theta, double phi, double phi0,
                             double t, int n_max, double atom_basis_angle);

}  // namespace dicke
