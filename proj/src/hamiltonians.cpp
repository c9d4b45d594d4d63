#include "dicke/hamiltonians.hpp"

namespace dicke {

namespace {

constexpr std::size_t kMaxAmplitudes = 10'000'000;
constexpr std::size_t kMaxDenseDim = 4096;

int level_of(std::size_t atom_code, int atom) {
    return static_cast<int>((atom_code >> (2 * atom)) & 0x3u);
}

std::size_t with_level(std::size_t atom_code, int atom, AtomLevel level) {
    const std::size_t shift = 2 * static_cast<std::size_t>(atom);
    return (atom_code & ~(std::size_t{0x3} << shift)) |
           (static_cast<std::size_t>(level) << shift);
}

}  // namespace

bool ModelParams::dispersive_regime() const {
    const double coupling = std::max(std::abs(rabi_plus), std::abs(rabi_minus));
    return std::abs(delta) >= 10.0 * coupling * std::sqrt(static_cast<double>(n_max + 1));
}

ModelParams make_model_params(double omega1, double omega2, double omega_f, cplx rabi_plus,
                              cplx rabi_minus, int n_atoms, int n_max) {
    if (n_atoms < 1)
        throw std::invalid_argument("model needs at least one atom");
    if (n_max < 0)
        throw std::invalid_argument("n_max must be non-negative");
    const double delta1 = omega1 - omega_f;
    const double delta2 = omega2 - omega_f;
    const double scale = std::max({1.0, std::abs(delta1), std::abs(delta2)});
    if (std::abs(delta1 - delta2) > 1e-12 * scale)
        throw std::invalid_argument("detunings differ: omega1 - omega_f != omega2 - omega_f");
    if (delta1 == 0.0)
        throw std::invalid_argument("detuning must be nonzero");
    return ModelParams{omega1, omega2, omega_f, rabi_plus, rabi_minus, delta1, n_atoms, n_max};
}

EffectiveParams make_effective_params(double phi0, SpinJ j) {
    if (!std::isfinite(phi0))
        throw std::invalid_argument("phi0 must be finite");
    return EffectiveParams{phi0, j};
}

EffectiveParams effective_from_model(const ModelParams& params) {
    const double rp = std::abs(params.rabi_plus);
    const double rm = std::abs(params.rabi_minus);
    if (std::abs(rp - rm) > 1e-12 * std::max(1.0, rp))
        throw std::invalid_argument("effective coupling requires |rabi_plus| = |rabi_minus|");
    return make_effective_params(rp * rp / params.delta, SpinJ::from_atom_count(params.n_atoms));
}

FullAtomState make_full_atom_state(int n_atoms, int n_max) {
    if (n_atoms < 1 || n_max < 0)
        throw std::invalid_argument("bad full-state dimensions");
    const std::size_t atom_dim = std::size_t{1} << (2 * n_atoms);
    const std::size_t field_dim = static_cast<std::size_t>(n_max + 1) * (n_max + 1);
    if (atom_dim > kMaxAmplitudes / field_dim)
        throw guard_error("full atom-field state exceeds the amplitude guard");
    return FullAtomState{n_atoms, n_max, std::vector<cplx>(atom_dim * field_dim, cplx{0.0, 0.0})};
}

double squared_norm(const FullAtomState& state) {
    double total = 0.0;
    for (const cplx& a : state.amp)
        total += std::norm(a);
    return total;
}

Eigen::MatrixXcd build_full_hamiltonian(const ModelParams& params) {
    const int n_atoms = params.n_atoms;
    const int n_max = params.n_max;
    const std::size_t atom_dim = std::size_t{1} << (2 * n_atoms);
    const std::size_t modes = static_cast<std::size_t>(n_max) + 1;
    const std::size_t field_dim = modes * modes;
    const std::size_t dim = atom_dim * field_dim;
    if (dim > kMaxDenseDim || dim > kMaxAmplitudes)
        throw guard_error("full Hamiltonian dimension " + std::to_string(dim) +
                          " exceeds the dense-matrix guard");

    // per-level diagonal energies
    const double level_energy[4] = {-0.5 * params.omega2, -0.5 * params.omega1,
                                    +0.5 * params.omega1, +0.5 * params.omega2};

    Eigen::MatrixXcd h = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(dim),
                                                static_cast<Eigen::Index>(dim));

    for (std::size_t a = 0; a < atom_dim; ++a) {
        double atomic = 0.0;
        for (int j = 0; j < n_atoms; ++j)
            atomic += level_energy[level_of(a, j)];
        for (int np = 0; np <= n_max; ++np) {
            for (int nm = 0; nm <= n_max; ++nm) {
                const std::size_t idx = a * field_dim + np * modes + nm;
                h(idx, idx) = atomic + params.omega_f * (np + nm);

                for (int j = 0; j < n_atoms; ++j) {
                    const int level = level_of(a, j);
                    // rabi_minus a_- |e-><g+|: absorb a minus photon
                    if (level == static_cast<int>(AtomLevel::g_plus) && nm >= 1) {
                        const std::size_t target =
                            with_level(a, j, AtomLevel::e_minus) * field_dim + np * modes +
                            (nm - 1);
                        const cplx element =
                            params.rabi_minus * std::sqrt(static_cast<double>(nm));
                        h(target, idx) += element;
                        h(idx, target) += std::conj(element);
                    }
                    // rabi_plus a_+ |e+><g-|: absorb a plus photon
                    if (level == static_cast<int>(AtomLevel::g_minus) && np >= 1) {
                        const std::size_t target =
                            with_level(a, j, AtomLevel::e_plus) * field_dim +
                            (np - 1) * modes + nm;
                        const cplx element =
                            params.rabi_plus * std::sqrt(static_cast<double>(np));
                        h(target, idx) += element;
                        h(idx, target) += std::conj(element);
                    }
                }
            }
        }
    }
    return h;
}

std::vector<double> build_dispersive_hamiltonian(const ModelParams& params) {
    const int two_j = params.n_atoms;
    const int modes = params.n_max + 1;
    const double shift_minus = std::norm(params.rabi_minus) / params.delta;
    const double shift_plus = std::norm(params.rabi_plus) / params.delta;
    const double half_n = 0.5 * params.n_atoms;

    std::vector<double> diag(static_cast<std::size_t>(two_j + 1) * modes * modes);
    std::size_t idx = 0;
    for (int im = 0; im <= two_j; ++im) {
        const double m = 0.5 * (2 * im - two_j);
        for (int np = 0; np < modes; ++np)
            for (int nm = 0; nm < modes; ++nm)
                diag[idx++] = -shift_minus * nm * (half_n + m) - shift_plus * np * (half_n - m);
    }
    return diag;
}

std::vector<double> build_effective_hamiltonian(const EffectiveParams& params, int n_max) {
    if (n_max < 0)
        throw std::invalid_argument("n_max must be non-negative");
    const int two_j = params.j.twice();
    const int modes = n_max + 1;

    std::vector<double> diag(static_cast<std::size_t>(two_j + 1) * modes * modes);
    std::size_t idx = 0;
    for (int im = 0; im <= two_j; ++im) {
        const double m = 0.5 * (2 * im - two_j);
        for (int np = 0; np < modes; ++np)
            for (int nm = 0; nm < modes; ++nm)
                diag[idx++] = params.phi0 * (np - nm) * m;
    }
    return diag;
}

}  // namespace dicke
