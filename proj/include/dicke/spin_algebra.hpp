// spin_algebra.hpp - Dicke-basis representation of the collective spin J = N/2
//
// States live in the symmetric (2J+1)-dimensional sector spanned by the
// eigenstates |m> of the collective z operator, m = -J..+J.  Amplitudes are
// stored ascending in m, so |-J> (all atoms in the lower ground level) sits
// at index 0.
#pragma once

#include <span>
#include <vector>

#include "dicke/types.hpp"

namespace dicke {

struct DickeState {
    int two_j = 0;
    std::vector<cplx> amp;  // length 2J+1, index i -> m = -J + i

    int dim() const { return two_j + 1; }
    SpinJ j() const { return SpinJ::from_twice(two_j); }
};

struct CoherentSpinParams {
    double theta = 0.0;  // polar angle, must lie in [0, pi]
    double phi = 0.0;    // azimuthal angle, any real
};

// Single-atom ground-level amplitudes of the coherent state's product form.
struct AtomAmplitudes {
    cplx g_minus;  // lower ground level
    cplx g_plus;   // upper ground level
};

double squared_norm(const DickeState& state);
bool is_normalized(const DickeState& state, double tol = 1e-12);

// |-J>: unit amplitude at index 0
DickeState ground_state(SpinJ j);

// Collective operator actions on |m> (unnormalized results, hbar = 1):
//   z:      c_m -> m c_m
//   minus:  |m> -> sqrt((J+m)(J-m+1)) |m-1>
//   plus:   |m> -> sqrt((J-m)(J+m+1)) |m+1>
DickeState apply_rz(const DickeState& state);
DickeState apply_rminus(const DickeState& state);
DickeState apply_rplus(const DickeState& state);

// Coherent (rotated lowest-weight) state
//   sum_m sqrt(C(2J, J+m)) cos(theta/2)^(J-m) [sin(theta/2) e^{-i phi}]^(J+m) |m>.
// Binomial weights are assembled in log space so J ~ 50 stays finite.
DickeState coherent_spin_state(SpinJ j, const CoherentSpinParams& params);

// Closed-form overlap <theta, phi_plus | theta, phi_minus> between two
// coherent states of common polar angle.  With half_angle = (phi_plus -
// phi_minus)/2 it evaluates to
//   exp(2 i J half_angle) [cos(half_angle) - i cos(theta) sin(half_angle)]^(2J).
cplx coherent_overlap_analytic(SpinJ j, double theta, double phi_plus, double phi_minus);

// Per-atom amplitude pair of the coherent state's product expansion:
//   cos(theta/2) |g-> + sin(theta/2) e^{-i phi} |g+>.
AtomAmplitudes product_expansion(const CoherentSpinParams& params);

// Full 2^N product-basis tensor of the coherent state (test/oracle helper).
// Basis index: bit j set means atom j occupies g+.
std::vector<cplx> product_state_tensor(int n_atoms, const CoherentSpinParams& params);

// Projection of a 2^N ground-level tensor onto the symmetric Dicke sector.
DickeState project_to_dicke(int n_atoms, std::span<const cplx> tensor);

// Dicke state written out as its symmetric 2^N product-basis tensor.
std::vector<cplx> dicke_to_product_tensor(const DickeState& state);

// log C(n, k) via a cached log-factorial table
double log_binomial(int n, int k);

}  // namespace dicke
