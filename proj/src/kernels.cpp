#include "dicke/kernels.hpp"

#include <atomic>
#include <stdexcept>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace dicke::kernels {

namespace {

std::atomic<Backend>& backend_slot() {
#ifdef _OPENMP
    static std::atomic<Backend> slot{Backend::openmp};
#else
    static std::atomic<Backend> slot{Backend::serial};
#endif
    return slot;
}

int thread_count() {
#ifdef _OPENMP
    return omp_get_max_threads();
#else
    return 1;
#endif
}

// [lo, hi) slice of n items for thread tid out of nt
inline void chunk(std::size_t n, int tid, int nt, std::size_t& lo, std::size_t& hi) {
    lo = n * static_cast<std::size_t>(tid) / nt;
    hi = n * static_cast<std::size_t>(tid + 1) / nt;
}

}  // namespace

Backend default_backend() { return backend_slot().load(std::memory_order_relaxed); }

void set_default_backend(Backend b) {
#ifndef _OPENMP
    if (b == Backend::openmp)
        throw std::invalid_argument("this build has no OpenMP support");
#endif
    backend_slot().store(b, std::memory_order_relaxed);
}

const char* backend_name(Backend b) { return b == Backend::serial ? "serial" : "openmp"; }

bool openmp_compiled_in() {
#ifdef _OPENMP
    return true;
#else
    return false;
#endif
}

void apply_diagonal_phases(std::span<cplx> amp, std::span<const double> diag, double t,
                           Backend backend) {
    if (amp.size() != diag.size())
        throw std::invalid_argument("apply_diagonal_phases: amplitude/diagonal size mismatch");
    const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(amp.size());
    if (backend == Backend::openmp) {
#pragma omp parallel for schedule(static)
        for (std::ptrdiff_t i = 0; i < n; ++i)
            amp[i] *= std::polar(1.0, -t * diag[i]);
    } else {
        for (std::ptrdiff_t i = 0; i < n; ++i)
            amp[i] *= std::polar(1.0, -t * diag[i]);
    }
}

void apply_spin_field_phases(std::span<cplx> amp, int two_j, int n_max, double angle,
                             Backend backend) {
    const std::ptrdiff_t n_field = n_max + 1;
    const std::ptrdiff_t field_dim = n_field * n_field;
    const std::ptrdiff_t spin_dim = two_j + 1;
    if (static_cast<std::ptrdiff_t>(amp.size()) != spin_dim * field_dim)
        throw std::invalid_argument("apply_spin_field_phases: amplitude size mismatch");

    if (backend == Backend::openmp) {
#pragma omp parallel for schedule(static)
        for (std::ptrdiff_t im = 0; im < spin_dim; ++im) {
            const double m = 0.5 * (2 * im - two_j);
            cplx* block = amp.data() + im * field_dim;
            for (std::ptrdiff_t np = 0; np < n_field; ++np)
                for (std::ptrdiff_t nm = 0; nm < n_field; ++nm)
                    block[np * n_field + nm] *=
                        std::polar(1.0, -angle * static_cast<double>(np - nm) * m);
        }
    } else {
        for (std::ptrdiff_t im = 0; im < spin_dim; ++im) {
            const double m = 0.5 * (2 * im - two_j);
            cplx* block = amp.data() + im * field_dim;
            for (std::ptrdiff_t np = 0; np < n_field; ++np)
                for (std::ptrdiff_t nm = 0; nm < n_field; ++nm)
                    block[np * n_field + nm] *=
                        std::polar(1.0, -angle * static_cast<double>(np - nm) * m);
        }
    }
}

void scale_in_place(std::span<cplx> amp, cplx factor, Backend backend) {
    const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(amp.size());
    if (backend == Backend::openmp) {
#pragma omp parallel for schedule(static)
        for (std::ptrdiff_t i = 0; i < n; ++i)
            amp[i] *= factor;
    } else {
        for (std::ptrdiff_t i = 0; i < n; ++i)
            amp[i] *= factor;
    }
}

double squared_norm(std::span<const cplx> amp, Backend backend) {
    if (backend == Backend::openmp) {
        const int nt = thread_count();
        std::vector<double> partial(nt, 0.0);
#pragma omp parallel num_threads(nt)
        {
            // the actual team can be smaller than nt in nested regions
#ifdef _OPENMP
            const int tid = omp_get_thread_num();
            const int team = omp_get_num_threads();
#else
            const int tid = 0;
            const int team = 1;
#endif
            std::size_t lo, hi;
            chunk(amp.size(), tid, team, lo, hi);
            double s = 0.0;
            for (std::size_t i = lo; i < hi; ++i)
                s += std::norm(amp[i]);
            partial[tid] = s;
        }
        double total = 0.0;
        for (double p : partial)
            total += p;
        return total;
    }
    double s = 0.0;
    for (const cplx& a : amp)
        s += std::norm(a);
    return s;
}

cplx inner_product(std::span<const cplx> a, std::span<const cplx> b, Backend backend) {
    if (a.size() != b.size())
        throw std::invalid_argument("inner_product: size mismatch");
    if (backend == Backend::openmp) {
        const int nt = thread_count();
        std::vector<cplx> partial(nt, cplx{0.0, 0.0});
#pragma omp parallel num_threads(nt)
        {
#ifdef _OPENMP
            const int tid = omp_get_thread_num();
            const int team = omp_get_num_threads();
#else
            const int tid = 0;
            const int team = 1;
#endif
            std::size_t lo, hi;
            chunk(a.size(), tid, team, lo, hi);
            cplx s{0.0, 0.0};
            for (std::size_t i = lo; i < hi; ++i)
                s += std::conj(a[i]) * b[i];
            partial[tid] = s;
        }
        cplx total{0.0, 0.0};
        for (const cplx& p : partial)
            total += p;
        return total;
    }
    cplx s{0.0, 0.0};
    for (std::size_t i = 0; i < a.size(); ++i)
        s += std::conj(a[i]) * b[i];
    return s;
}

// rho[f, f'] = sum_r amp[r, f] * conj(amp[r, f'])
void reduce_density_keep_cols(std::span<const cplx> amp, std::size_t rows, std::size_t cols,
                              std::span<cplx> rho, Backend backend) {
    if (amp.size() != rows * cols || rho.size() != cols * cols)
        throw std::invalid_argument("reduce_density_keep_cols: size mismatch");
    const std::ptrdiff_t c = static_cast<std::ptrdiff_t>(cols);
    if (backend == Backend::openmp) {
#pragma omp parallel for schedule(static)
        for (std::ptrdiff_t f = 0; f < c; ++f) {
            for (std::ptrdiff_t g = 0; g < c; ++g) {
                cplx s{0.0, 0.0};
                for (std::size_t r = 0; r < rows; ++r)
                    s += amp[r * cols + f] * std::conj(amp[r * cols + g]);
                rho[f * cols + g] = s;
            }
        }
    } else {
        for (std::ptrdiff_t f = 0; f < c; ++f) {
            for (std::ptrdiff_t g = 0; g < c; ++g) {
                cplx s{0.0, 0.0};
                for (std::size_t r = 0; r < rows; ++r)
                    s += amp[r * cols + f] * std::conj(amp[r * cols + g]);
                rho[f * cols + g] = s;
            }
        }
    }
}

// rho[r, r'] = sum_f amp[r, f] * conj(amp[r', f])
void reduce_density_keep_rows(std::span<const cplx> amp, std::size_t rows, std::size_t cols,
                              std::span<cplx> rho, Backend backend) {
    if (amp.size() != rows * cols || rho.size() != rows * rows)
        throw std::invalid_argument("reduce_density_keep_rows: size mismatch");
    const std::ptrdiff_t r_dim = static_cast<std::ptrdiff_t>(rows);
    if (backend == Backend::openmp) {
#pragma omp parallel for schedule(static)
        for (std::ptrdiff_t r = 0; r < r_dim; ++r) {
            for (std::ptrdiff_t q = 0; q < r_dim; ++q) {
                cplx s{0.0, 0.0};
                for (std::size_t f = 0; f < cols; ++f)
                    s += amp[r * cols + f] * std::conj(amp[q * cols + f]);
                rho[r * rows + q] = s;
            }
        }
    } else {
        for (std::ptrdiff_t r = 0; r < r_dim; ++r) {
            for (std::ptrdiff_t q = 0; q < r_dim; ++q) {
                cplx s{0.0, 0.0};
                for (std::size_t f = 0; f < cols; ++f)
                    s += amp[r * cols + f] * std::conj(amp[q * cols + f]);
                rho[r * rows + q] = s;
            }
        }
    }
}

}  // namespace dicke::kernels
