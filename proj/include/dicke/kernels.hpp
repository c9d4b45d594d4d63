// kernels.hpp - data-parallel state-vector kernels
//
// Every kernel has a serial reference implementation and an OpenMP one.
// The serial path is the ground truth the parallel path is tested against:
// element-wise kernels must match bitwise, reductions to ~1e-13 relative.
// Reductions combine fixed per-thread partial sums in thread order, so a
// given thread count always reproduces the same bytes.
#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "dicke/types.hpp"

namespace dicke::kernels {

enum class Backend { serial, openmp };

Backend default_backend();
void set_default_backend(Backend b);
const char* backend_name(Backend b);
bool openmp_compiled_in();

// amp[i] *= exp(-i * t * diag[i])  (diagonal-Hamiltonian propagator)
void apply_diagonal_phases(std::span<cplx> amp, std::span<const double> diag, double t,
                           Backend backend = default_backend());

// Propagator phases for the spin-field coupling on the (m, n+, n-) lattice:
// amp at (i_m, n+, n-) *= exp(-i * angle * (n+ - n-) * m), m = -J + i_m.
// Layout: i_m slowest, then n+, then n-, each field index in [0, n_max].
void apply_spin_field_phases(std::span<cplx> amp, int two_j, int n_max, double angle,
                             Backend backend = default_backend());

void scale_in_place(std::span<cplx> amp, cplx factor, Backend backend = default_backend());

double squared_norm(std::span<const cplx> amp, Backend backend = default_backend());

// sum_i conj(a[i]) * b[i]
cplx inner_product(std::span<const cplx> a, std::span<const cplx> b,
                   Backend backend = default_backend());

// Reduced density matrices of a pure bipartite state stored row-major as
// amp[row * cols + col].  Output is row-major, size cols*cols (trace over
// rows) or rows*rows (trace over cols).
void reduce_density_keep_cols(std::span<const cplx> amp, std::size_t rows, std::size_t cols,
                              std::span<cplx> rho, Backend backend = default_backend());
void reduce_density_keep_rows(std::span<const cplx> amp, std::size_t rows, std::size_t cols,
                              std::span<cplx> rho, Backend backend = default_backend());

}  // namespace dicke::kernels
