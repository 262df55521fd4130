#pragma once

#include <numbers>

namespace mdc {

// Natural units m = c = hbar = 1 throughout.
namespace constants {

inline constexpr double pi = std::numbers::pi;

// CODATA inverse fine structure constant; overridable per run.
inline constexpr double alpha_fs_default = 1.0 / 137.036;

// Hardy:  | |x|^{-1} psi |_{L2} <= gamma_H | grad psi |_{L2} with gamma_H = 2.
inline constexpr double gamma_hardy = 2.0;

// Kato:   int |psi|^2/|x| <= gamma_K |psi|^2_{H^{1/2}} with gamma_K = pi/2.
inline constexpr double gamma_kato = pi / 2.0;

// Tix:    int |Lambda_pm psi|^2/|x| <= gamma_T |Lambda_pm psi|^2_{H^{1/2}},
// gamma_T = (pi/2 + 2/pi)/2.
inline constexpr double gamma_tix = 0.5 * (pi / 2.0 + 2.0 / pi);

} // namespace constants
} // namespace mdc
