#ifndef GKP_QUADRATURE_HPP
#define GKP_QUADRATURE_HPP

#include <complex>
#include <string_view>

namespace gkp {

using cplx = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846264338327950288;

/// Canonical oscillator quadrature. Units: hbar = 1, [q, p] = i.
enum class Quadrature { position, momentum };

constexpr Quadrature dual(Quadrature axis) noexcept {
    return axis == Quadrature::position ? Quadrature::momentum : Quadrature::position;
}

constexpr std::string_view to_string(Quadrature axis) noexcept {
    return axis == Quadrature::position ? "position" : "momentum";
}

/// Parses "position"/"momentum" (also "q"/"p"). Throws ParseError.
Quadrature parse_quadrature(std::string_view text);

}  // namespace gkp

#endif  // GKP_QUADRATURE_HPP
