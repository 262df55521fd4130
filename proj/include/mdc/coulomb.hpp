#pragma once

#include "mdc/field.hpp"

#include <array>

namespace mdc {

/// Radial interaction kernel realized as a nonnegative, even momentum
/// multiplier k(p) on the grid.
///
///  - PairCoulomb:       k = 4pi/|p|^2, k(0) = 0 (neutralizing background);
///                        the generic periodic convolution/pair-energy kernel.
///  - NuclearTruncated:  k = 4pi(1 - cos(|p| L/2))/|p|^2, k(0) = 2pi(L/2)^2;
///                        the spherically truncated 1/r, cutoff L/2.  Carries
///                        the physical interaction energies: a centered,
///                        localized state sees the isolated potentials
///                        instead of periodic images, and the retained
///                        monopole term keeps D_rho - D_J >= 0 (the k(0)=0
///                        convention shifts the nuclear well by the O(1/L)
///                        Wigner constant and loses that positivity).
///  - InverseSquare:     k = 2pi^2/|p|, k(0) = 0; the 1/|x|^2 kernel used by
///                        the Hardy check.
class SpectralKernel {
public:
    enum class Profile { PairCoulomb, NuclearTruncated, InverseSquare };

    SpectralKernel(const SpectralGrid& grid, Profile profile);

    const SpectralGrid& grid() const { return *grid_; }
    Profile profile() const { return profile_; }
    const std::vector<double>& multiplier() const { return k_; }

    /// Position-space realization K with (f * K)(y) = h^3 sum_z K(y-z) f(z).
    RealField position_realization() const;

private:
    const SpectralGrid* grid_;
    Profile profile_;
    std::vector<double> k_;
};

SpectralKernel coulomb_kernel(const SpectralGrid& g);
SpectralKernel nuclear_kernel(const SpectralGrid& g);
SpectralKernel inverse_square_kernel(const SpectralGrid& g);

/// rho(y) = |psi(y)|^2; requires the position representation.
RealField density(const SpinorField& psi);

/// J_k(y) = (psi, alpha_k psi)(y); real by Hermiticity, |J| <= rho pointwise.
std::array<RealField, 3> current(const SpinorField& psi);

/// F^{-1}[k(p) fhat(p)]; for the PairCoulomb profile this is f * 1/|x| with
/// the zero mode dropped.
RealField coulomb_convolve(const RealField& f, const SpectralKernel& kernel);

/// iint f(y) g(z) K(y-z) = dp^3 sum_p k(p) fhat conj(ghat); symmetric, and
/// nonnegative for f = g since k >= 0 termwise.
double pair_energy(const RealField& f, const RealField& g, const SpectralKernel& kernel);

/// Brute-force h^6 double sum against the directly summed position kernel
/// (no FFT anywhere on this path).  Only for N <= 16.
double oracle_pair_energy(const RealField& f, const RealField& g, const SpectralKernel& kernel);

/// V(y) = -Z (delta_center * K)(y) for the given kernel.
RealField nuclear_potential(int Z, const SpectralKernel& kernel);

/// int V rho with the shared spectral kernel; always <= 0 for rho >= 0.
double external_energy(const RealField& rho, int Z, const SpectralKernel& kernel);

/// (alpha_fs/2) (D_rho - D_J) >= 0.
double self_interaction(const SpinorField& psi, double alpha_fs, const SpectralKernel& kernel);

/// Cached interaction data of a state psi.  All Coulomb energies and
/// potentials use the truncated isolated-system kernel: dropping the zero
/// mode would drop the monopole term, and with it both the physical nuclear
/// well depth and the positivity of D_rho - D_J.
struct InteractionTerms {
    RealField rho;
    std::array<RealField, 3> current;
    RealField phi;                  // rho * 1/|x|
    std::array<RealField, 3> vec_a; // J_k * 1/|x|
    double v_ext = 0.0;             // int V rho
    double d_rho = 0.0;             // iint rho rho / |y-z|
    double d_j = 0.0;               // iint J.J / |y-z|
};

/// One batched evaluation of every interaction quantity entering the energy.
/// nuclear_v is the precomputed -Z (delta * K) field (null: no external term);
/// with_self_field toggles Phi/A and the D-terms.
InteractionTerms compute_interaction_terms(const SpinorField& psi_position,
                                           const SpectralKernel& interaction, const RealField* nuclear_v,
                                           bool with_self_field);

} // namespace mdc
