#include "dicke/field_space.hpp"

#include "dicke/kernels.hpp"

namespace dicke {

namespace {

constexpr double kDeficitTolerance = 1e-10;
constexpr double kZeroProbability = 1e-14;

void check_n_max(int n_max, int minimum = 0) {
    if (n_max < minimum)
        throw std::invalid_argument("n_max must be >= " + std::to_string(minimum));
}

// e^{-|a|^2/2} a^n / sqrt(n!) for n = 0..n_max
std::vector<cplx> poisson_profile(cplx a, int n_max) {
    std::vector<cplx> prof(n_max + 1);
    prof[0] = std::exp(-0.5 * std::norm(a));
    for (int n = 1; n <= n_max; ++n)
        prof[n] = prof[n - 1] * a / std::sqrt(static_cast<double>(n));
    return prof;
}

ProjectionResult project_single_photon(const FieldState& state, double sign) {
    const int n_max = state.n_max;
    if (n_max < 1)
        throw std::invalid_argument("polarization projection needs n_max >= 1");
    const cplx c10 = state.at(1, 0);
    const cplx c01 = state.at(0, 1);
    const cplx overlap = (c10 + sign * c01) / std::sqrt(2.0);  // <x or y|state>
    const double probability = std::norm(overlap);

    ProjectionResult result;
    result.probability = probability;
    if (probability <= kZeroProbability)
        return result;

    FieldState projected = vacuum_field(n_max);
    projected.at(0, 0) = 0.0;
    const cplx unit = overlap / std::abs(overlap);  // keep the outcome phase
    projected.at(1, 0) = unit / std::sqrt(2.0);
    projected.at(0, 1) = sign * unit / std::sqrt(2.0);
    result.state = std::move(projected);
    return result;
}

}  // namespace

double squared_norm(const FieldState& state) { return kernels::squared_norm(state.amp); }

bool is_normalized(const FieldState& state, double tol) {
    return std::abs(squared_norm(state) - 1.0) <= tol;
}

FieldState vacuum_field(int n_max) {
    check_n_max(n_max);
    FieldState state{n_max, std::vector<cplx>((n_max + 1) * (n_max + 1), cplx{0.0, 0.0})};
    state.at(0, 0) = 1.0;
    return state;
}

FieldState qubit_to_field(const PolarizationQubit& qubit, int n_max) {
    check_n_max(n_max, 1);
    const double norm = std::norm(qubit.alpha) + std::norm(qubit.beta);
    if (std::abs(norm - 1.0) > 1e-9)
        throw std::invalid_argument("polarization qubit is not normalized: |a|^2+|b|^2 = " +
                                    std::to_string(norm));
    FieldState state{n_max, std::vector<cplx>((n_max + 1) * (n_max + 1), cplx{0.0, 0.0})};
    state.at(1, 0) = qubit.alpha;
    state.at(0, 1) = qubit.beta;
    return state;
}

CoherentFieldResult two_mode_coherent(cplx alpha, cplx beta, int n_max) {
    check_n_max(n_max);
    const std::vector<cplx> plus = poisson_profile(alpha, n_max);
    const std::vector<cplx> minus = poisson_profile(beta, n_max);

    CoherentFieldResult result;
    result.state.n_max = n_max;
    result.state.amp.resize((n_max + 1) * (n_max + 1));
    for (int np = 0; np <= n_max; ++np)
        for (int nm = 0; nm <= n_max; ++nm)
            result.state.at(np, nm) = plus[np] * minus[nm];

    result.norm_deficit = 1.0 - squared_norm(result.state);
    result.deficit_ok = result.norm_deficit <= kDeficitTolerance;
    return result;
}

FieldState apply_nz(const FieldState& state) {
    FieldState out{state.n_max, std::vector<cplx>(state.amp.size())};
    for (int np = 0; np <= state.n_max; ++np)
        for (int nm = 0; nm <= state.n_max; ++nm)
            out.at(np, nm) = state.at(np, nm) * static_cast<double>(np - nm);
    return out;
}

FieldTransferResult apply_nminus(const FieldState& state) {
    const int n_max = state.n_max;
    FieldTransferResult result{FieldState{n_max, std::vector<cplx>(state.amp.size(), cplx{0.0, 0.0})},
                               0.0};
    for (int np = 1; np <= n_max; ++np) {
        for (int nm = 0; nm <= n_max; ++nm) {
            const cplx moved =
                std::sqrt(static_cast<double>(np) * (nm + 1)) * state.at(np, nm);
            if (nm + 1 > n_max)
                result.dropped_weight += std::norm(moved);
            else
                result.state.at(np - 1, nm + 1) = moved;
        }
    }
    return result;
}

FieldTransferResult apply_nplus(const FieldState& state) {
    const int n_max = state.n_max;
    FieldTransferResult result{FieldState{n_max, std::vector<cplx>(state.amp.size(), cplx{0.0, 0.0})},
                               0.0};
    for (int np = 0; np <= n_max; ++np) {
        for (int nm = 1; nm <= n_max; ++nm) {
            const cplx moved =
                std::sqrt(static_cast<double>(nm) * (np + 1)) * state.at(np, nm);
            if (np + 1 > n_max)
                result.dropped_weight += std::norm(moved);
            else
                result.state.at(np + 1, nm - 1) = moved;
        }
    }
    return result;
}

ProjectionResult project_polarization_x(const FieldState& state) {
    return project_single_photon(state, +1.0);
}

ProjectionResult project_polarization_y(const FieldState& state) {
    return project_single_photon(state, -1.0);
}

double mean_photons_plus(const FieldState& state) {
    double total = 0.0;
    for (int np = 0; np <= state.n_max; ++np)
        for (int nm = 0; nm <= state.n_max; ++nm)
            total += np * std::norm(state.at(np, nm));
    return total;
}

double mean_photons_minus(const FieldState& state) {
    double total = 0.0;
    for (int np = 0; np <= state.n_max; ++np)
        for (int nm = 0; nm <= state.n_max; ++nm)
            total += nm * std::norm(state.at(np, nm));
    return total;
}

}  // namespace dicke
