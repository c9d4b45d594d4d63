// field_space.hpp - truncated two-mode Fock space of the polarized field
//
// Basis kets |n+, n-> with each occupation in [0, n_max], stored row-major
// in n+ then n-.  Operators follow the mode convention
//   z:     eigenvalue n+ - n-
//   minus: photon transfer + -> -   (a+^dag pickup on the minus mode)
//   plus:  photon transfer - -> +
// Amplitude that a transfer would push past the cutoff is dropped and the
// dropped weight reported, never discarded silently.
#pragma once

#include <optional>
#include <vector>

#include "dicke/types.hpp"

namespace dicke {

struct FieldState {
    int n_max = 0;
    std::vector<cplx> amp;  // length (n_max+1)^2, index np*(n_max+1) + nm

    int modes_dim() const { return n_max + 1; }
    int dim() const { return (n_max + 1) * (n_max + 1); }
    int index(int n_plus, int n_minus) const { return n_plus * (n_max + 1) + n_minus; }
    cplx& at(int n_plus, int n_minus) { return amp[index(n_plus, n_minus)]; }
    const cplx& at(int n_plus, int n_minus) const { return amp[index(n_plus, n_minus)]; }
};

// Single photon shared between the two circular polarization modes:
// alpha |1+,0-> + beta |0+,1->.
struct PolarizationQubit {
    cplx alpha{1.0, 0.0};
    cplx beta{0.0, 0.0};
};

double squared_norm(const FieldState& state);
bool is_normalized(const FieldState& state, double tol = 1e-12);
FieldState vacuum_field(int n_max);

// Embeds the qubit on the single-photon sector.  The qubit must be
// normalized to 1e-9.
FieldState qubit_to_field(const PolarizationQubit& qubit, int n_max);

struct CoherentFieldResult {
    FieldState state;
    double norm_deficit = 0.0;  // 1 - sum |amp|^2 lost to the cutoff
    bool deficit_ok = true;     // deficit <= 1e-10
};

// Product of per-mode Poissonian profiles e^{-|a|^2/2} a^n / sqrt(n!).
// The truncated-norm deficit comes back so callers can judge the cutoff;
// deficit_ok flips to false above 1e-10 but nothing is raised.
CoherentFieldResult two_mode_coherent(cplx alpha, cplx beta, int n_max);

// amplitude at (n+, n-) scaled by (n+ - n-)
FieldState apply_nz(const FieldState& state);

struct FieldTransferResult {
    FieldState state;
    double dropped_weight = 0.0;  // squared norm pushed past the cutoff
};

// minus: (n+, n-) -> (n+-1, n-+1) with element sqrt(n+ (n-+1))
// plus:  (n+, n-) -> (n++1, n--1) with element sqrt(n- (n++1))
FieldTransferResult apply_nminus(const FieldState& state);
FieldTransferResult apply_nplus(const FieldState& state);

struct ProjectionResult {
    std::optional<FieldState> state;  // normalized; absent when probability ~ 0
    double probability = 0.0;
};

// Rank-one projections onto the linear polarization states
//   |x> = (|1+,0-> + |0+,1->)/sqrt(2),  |y> = (|1+,0-> - |0+,1->)/sqrt(2).
ProjectionResult project_polarization_x(const FieldState& state);
ProjectionResult project_polarization_y(const FieldState& state);

double mean_photons_plus(const FieldState& state);
double mean_photons_minus(const FieldState& state);

}  // namespace dicke
