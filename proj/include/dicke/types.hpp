// types.hpp - shared scalar types and error categories
#pragma once

#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>
#include <string>

namespace dicke {

using cplx = std::complex<double>;

inline constexpr double pi = std::numbers::pi;
inline constexpr cplx imag_unit{0.0, 1.0};

// Violation of a numerical guard (photon-cutoff loss, dimension overflow).
// Kept distinct from std::invalid_argument so the CLI can map it to its own
// exit code.
class guard_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Spin magnitude J stored as 2J so half-integers stay exact.
class SpinJ {
public:
    static SpinJ from_twice(int twice_j) {
        if (twice_j < 0)
            throw std::invalid_argument("spin magnitude must be non-negative, got 2J=" +
                                        std::to_string(twice_j));
        return SpinJ(twice_j);
    }

    static SpinJ from_value(double j) {
        const double twice = 2.0 * j;
        const double rounded = std::round(twice);
        if (!(j >= 0.0) || std::abs(twice - rounded) > 1e-9)
            throw std::invalid_argument("spin magnitude must be a non-negative half-integer, got j=" +
                                        std::to_string(j));
        return SpinJ(static_cast<int>(rounded));
    }

    static SpinJ from_atom_count(int n_atoms) {
        if (n_atoms < 0)
            throw std::invalid_argument("atom count must be non-negative");
        return SpinJ(n_atoms);
    }

    int twice() const { return twice_j_; }
    double value() const { return 0.5 * twice_j_; }
    int dim() const { return twice_j_ + 1; }  // 2J+1

    // m at ascending index i in [0, 2J]: m = -J + i
    double m_at(int index) const { return -0.5 * twice_j_ + index; }

    bool operator==(const SpinJ&) const = default;

private:
    explicit SpinJ(int twice_j) : twice_j_(twice_j) {}
    int twice_j_ = 0;
};

}  // namespace dicke
