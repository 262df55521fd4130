#pragma once

#include "mdc/field.hpp"

#include <array>

namespace mdc {

using Mat2 = std::array<cxd, 4>;  // row-major 2x2
using Mat4 = std::array<cxd, 16>; // row-major 4x4

/// Standard Pauli-Dirac representation: beta = diag(I2, -I2), alpha_k
/// off-diagonal in the sigma_k blocks.
struct DiracMatrices {
    std::array<Mat2, 3> sigma;
    std::array<Mat4, 3> alpha;
    Mat4 beta;
};

const DiracMatrices& dirac_matrices();

/// Per-momentum data of the Foldy-Wouthuysen symbol
///   U(p) = a_+(p) I4 + a_-(p) beta (alpha.p)/|p|,
/// a_pm = sqrt((1 pm 1/lambda)/2), lambda = sqrt(|p|^2+1); U(0) = I4.
struct FwSymbol {
    double lambda;
    double a_plus;
    double a_minus;
    std::array<double, 3> unit; // p/|p|, zero vector at p = 0
    Mat4 U;
    Mat4 Uinv;
};

FwSymbol fw_symbol_at(const std::array<double, 3>& p);

/// Scalar factors only (no dense matrices); the cheap path used per mode.
struct FwFactors {
    double lambda;
    double a_plus;
    double a_minus;
    std::array<double, 3> unit;
};
FwFactors fw_factors(const std::array<double, 3>& p);

enum class FwDirection { Forward, Inverse };

/// U_FW = F^{-1} U(p) F applied to a 4-component field; unitary, preserves
/// L2 and H^{1/2} norms. Output keeps the input representation.
SpinorField fw_transform(const SpinorField& field, FwDirection dir);

/// In-place per-mode U(p) (or U^{-1}(p)) on a momentum-representation field;
/// the zero-FFT core of fw_transform.
void fw_rotate_momentum(SpinorField& mom, FwDirection dir);

/// Spectral projector Lambda_pm = F^{-1} U^{-1} (I4 pm beta)/2 U F.
SpinorField project(const SpinorField& field, int sign);

/// sqrt(-Delta + 1): multiplication by lambda(p) in momentum space.
SpinorField apply_sqrt_operator(const SpinorField& field);

/// Free Dirac operator: per-mode (alpha.p + beta) on momentum samples.
SpinorField apply_free_dirac(const SpinorField& field);

/// (upper, lower) C^2 blocks assembled into a C^4 field and back.
SpinorField join_blocks(const SpinorField& upper, const SpinorField& lower);
std::array<SpinorField, 2> split_blocks(const SpinorField& four);

} // namespace mdc
