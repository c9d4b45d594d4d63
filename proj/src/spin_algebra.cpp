#include "dicke/spin_algebra.hpp"

#include <bit>
#include <mutex>

#include "dicke/kernels.hpp"

namespace dicke {

namespace {

double log_factorial(int n) {
    static std::vector<double> table{0.0, 0.0};  // log 0!, log 1!
    static std::mutex mu;
    std::scoped_lock lock(mu);
    while (static_cast<int>(table.size()) <= n)
        table.push_back(std::lgamma(static_cast<double>(table.size()) + 1.0));
    return table[n];
}

// exact integer power, keeps hard zeros (std::pow of complex goes via log)
cplx ipow(cplx base, int n) {
    cplx result{1.0, 0.0};
    while (n > 0) {
        if (n & 1)
            result *= base;
        base *= base;
        n >>= 1;
    }
    return result;
}

void check_theta(double theta) {
    if (!(theta >= 0.0 && theta <= pi))
        throw std::invalid_argument("theta must lie in [0, pi], got " + std::to_string(theta));
}

constexpr std::size_t kMaxAmplitudes = 10'000'000;

}  // namespace

double log_binomial(int n, int k) {
    if (k < 0 || k > n)
        throw std::invalid_argument("log_binomial: k out of range");
    return log_factorial(n) - log_factorial(k) - log_factorial(n - k);
}

double squared_norm(const DickeState& state) { return kernels::squared_norm(state.amp); }

bool is_normalized(const DickeState& state, double tol) {
    return std::abs(squared_norm(state) - 1.0) <= tol;
}

DickeState ground_state(SpinJ j) {
    DickeState state{j.twice(), std::vector<cplx>(j.dim(), cplx{0.0, 0.0})};
    state.amp[0] = 1.0;
    return state;
}

DickeState apply_rz(const DickeState& state) {
    DickeState out{state.two_j, std::vector<cplx>(state.dim())};
    for (int i = 0; i < state.dim(); ++i)
        out.amp[i] = state.amp[i] * (0.5 * (2 * i - state.two_j));
    return out;
}

DickeState apply_rminus(const DickeState& state) {
    const int two_j = state.two_j;
    DickeState out{two_j, std::vector<cplx>(state.dim(), cplx{0.0, 0.0})};
    // i = J+m; matrix element sqrt((J+m)(J-m+1)) = sqrt(i (2J-i+1))
    for (int i = 1; i < state.dim(); ++i)
        out.amp[i - 1] = std::sqrt(static_cast<double>(i) * (two_j - i + 1)) * state.amp[i];
    return out;
}

DickeState apply_rplus(const DickeState& state) {
    const int two_j = state.two_j;
    DickeState out{two_j, std::vector<cplx>(state.dim(), cplx{0.0, 0.0})};
    // sqrt((J-m)(J+m+1)) = sqrt((2J-i)(i+1))
    for (int i = 0; i + 1 < state.dim(); ++i)
        out.amp[i + 1] = std::sqrt(static_cast<double>(two_j - i) * (i + 1)) * state.amp[i];
    return out;
}

DickeState coherent_spin_state(SpinJ j, const CoherentSpinParams& params) {
    check_theta(params.theta);
    const int two_j = j.twice();
    const double c = std::cos(0.5 * params.theta);
    const double s = std::sin(0.5 * params.theta);

    DickeState state{two_j, std::vector<cplx>(j.dim(), cplx{0.0, 0.0})};
    for (int k = 0; k <= two_j; ++k) {
        // k = J+m: weight sqrt(C(2J,k)) c^(2J-k) s^k, phase e^{-i k phi}
        if ((s == 0.0 && k > 0) || (c == 0.0 && k < two_j))
            continue;
        double log_mag = 0.5 * log_binomial(two_j, k);
        if (two_j - k > 0)
            log_mag += (two_j - k) * std::log(c);
        if (k > 0)
            log_mag += k * std::log(s);
        state.amp[k] = std::polar(std::exp(log_mag), -k * params.phi);
    }
    return state;
}

cplx coherent_overlap_analytic(SpinJ j, double theta, double phi_plus, double phi_minus) {
    check_theta(theta);
    const double half_angle = 0.5 * (phi_plus - phi_minus);
    const cplx bracket{std::cos(half_angle), -std::cos(theta) * std::sin(half_angle)};
    // exp(2iJ half_angle) = exp(i * 2J * half_angle)
    return std::polar(1.0, j.twice() * half_angle) * ipow(bracket, j.twice());
}

AtomAmplitudes product_expansion(const CoherentSpinParams& params) {
    check_theta(params.theta);
    return {cplx{std::cos(0.5 * params.theta), 0.0},
            std::polar(std::sin(0.5 * params.theta), -params.phi)};
}

std::vector<cplx> product_state_tensor(int n_atoms, const CoherentSpinParams& params) {
    if (n_atoms < 1)
        throw std::invalid_argument("product_state_tensor: need at least one atom");
    const std::size_t dim = std::size_t{1} << n_atoms;
    if (dim > kMaxAmplitudes)
        throw guard_error("product_state_tensor: 2^N exceeds the amplitude guard");

    const AtomAmplitudes atom = product_expansion(params);
    std::vector<cplx> gm_pow(n_atoms + 1), gp_pow(n_atoms + 1);
    gm_pow[0] = gp_pow[0] = cplx{1.0, 0.0};
    for (int k = 1; k <= n_atoms; ++k) {
        gm_pow[k] = gm_pow[k - 1] * atom.g_minus;
        gp_pow[k] = gp_pow[k - 1] * atom.g_plus;
    }

    std::vector<cplx> tensor(dim);
    for (std::size_t b = 0; b < dim; ++b) {
        const int k = std::popcount(b);
        tensor[b] = gm_pow[n_atoms - k] * gp_pow[k];
    }
    return tensor;
}

DickeState project_to_dicke(int n_atoms, std::span<const cplx> tensor) {
    if (n_atoms < 1)
        throw std::invalid_argument("project_to_dicke: need at least one atom");
    if (tensor.size() != (std::size_t{1} << n_atoms))
        throw std::invalid_argument("project_to_dicke: tensor size is not 2^N");

    DickeState state{n_atoms, std::vector<cplx>(n_atoms + 1, cplx{0.0, 0.0})};
    for (std::size_t b = 0; b < tensor.size(); ++b)
        state.amp[std::popcount(b)] += tensor[b];
    for (int k = 0; k <= n_atoms; ++k)
        state.amp[k] *= std::exp(-0.5 * log_binomial(n_atoms, k));
    return state;
}

std::vector<cplx> dicke_to_product_tensor(const DickeState& state) {
    const int n_atoms = state.two_j;  // symmetric sector: N = 2J
    if (n_atoms < 1)
        throw std::invalid_argument("dicke_to_product_tensor: need at least one atom");
    const std::size_t dim = std::size_t{1} << n_atoms;
    if (dim > kMaxAmplitudes)
        throw guard_error("dicke_to_product_tensor: 2^N exceeds the amplitude guard");

    std::vector<double> weight(n_atoms + 1);
    for (int k = 0; k <= n_atoms; ++k)
        weight[k] = std::exp(-0.5 * log_binomial(n_atoms, k));

    std::vector<cplx> tensor(dim);
    for (std::size_t b = 0; b < dim; ++b) {
        const int k = std::popcount(b);
        tensor[b] = state.amp[k] * weight[k];
    }
    return tensor;
}

}  // namespace dicke
