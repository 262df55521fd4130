#pragma once

#include "mdc/coulomb.hpp"
#include "mdc/dirac.hpp"

#include <memory>
#include <optional>

namespace mdc {

/// Variational variables on the boundary in the FW representation: the
/// normalized upper trace w, the lower trace u with |u|_{L2} < 1, and the
/// constraint amplitude a = sqrt(1 - |u|^2_{L2}) (phase fixed real >= 0).
/// Derived objects: phi = (a w, u), psi = U_FW^{-1} phi.
struct TraceState {
    SpinorField w; // C^2 momentum representation, |w|_{L2} = 1
    SpinorField u; // C^2 momentum representation
    double a;

    static TraceState make(SpinorField w, SpinorField u);
};

struct FunctionalValue {
    double I = 0.0;
    double kinetic_plus = 0.0;  // |phi1|^2_{H^{1/2}}
    double kinetic_minus = 0.0; // |phi2|^2_{H^{1/2}}
    double v_ext = 0.0;         // int V rho (alpha factor not included)
    double d_rho = 0.0;
    double d_j = 0.0;
    double lambda_w = 0.0; // = I at an inner maximizer
    double mu = 0.0;       // I + (alpha/2)(d_rho - d_j)
};

struct FunctionalFlags {
    bool self_field = true; // electron's own Phi, A and the D-terms
    bool external = true;   // nuclear -Z/|x|
};

/// The functional
///   I(phi) = |phi1|^2_{H^{1/2}} - |phi2|^2_{H^{1/2}} + alpha int V rho_psi
///            + (alpha/2) iint (rho rho - J.J)/|y-z|
/// in trace variables (half-space H^1 norms replaced by H^{1/2} trace norms
/// through the optimal-extension identity), with its first and second
/// derivatives, the constrained functional J_W(u) = I((a(u)w, u)) and the
/// stationarity residuals.
class EnergyFunctional {
public:
    EnergyFunctional(const SpectralGrid& grid, int atomic_number, double alpha_fs,
                     FunctionalFlags flags = {});

    const SpectralGrid& grid() const { return *grid_; }
    int atomic_number() const { return z_; }
    double alpha_fs() const { return alpha_; }
    const FunctionalFlags& flags() const { return flags_; }
    /// Kernel behind Phi, A and the D-terms: the truncated isolated-system
    /// Coulomb (the k(0) = 0 convention loses the monopole term and with it
    /// the positivity of D_rho - D_J).
    const SpectralKernel& interaction_kernel() const { return interaction_; }
    /// -Z (delta * K_nuclear); empty when the external term is disabled.
    const RealField* nuclear_v() const { return nuclear_v_ ? &*nuclear_v_ : nullptr; }

    /// Everything the operations below reuse for a fixed state.
    struct Prepared {
        TraceState state;
        double w_h_half; // |w|^2_{H^{1/2}}
        SpinorField psi_pos; // C^4 position
        InteractionTerms terms;
        // pointwise B = alpha(V + Phi - A.alpha): scalar part and alpha A
        std::vector<double> b_scalar;
        std::array<std::vector<double>, 3> b_vector;
        bool b_has_vector;
        SpinorField g_fw; // U_FW(B psi), C^4 momentum
        double s;         // dI(phi)[(w,0)] = 2 a |w|^2_{H^{1/2}} + 2 Re<G1|w>
        FunctionalValue value;
        SpinorField grad_j; // C^2 momentum, L2 representative of dJ_W(u)
    };
    Prepared prepare(const TraceState& state) const;

    // --- functional and derivatives ---------------------------------------
    FunctionalValue eval_I(const TraceState& state) const;
    /// I at an arbitrary (not necessarily normalized) C^4 trace; the
    /// finite-difference oracle for grad_I and hessian_I evaluates this.
    FunctionalValue eval_I_free(const SpinorField& phi4) const;
    /// Directional derivative dI(phi)[h], h a C^4 trace direction (FW blocks).
    double grad_I(const TraceState& state, const SpinorField& h4) const;
    double hessian_I(const TraceState& state, const SpinorField& h4, const SpinorField& k4) const;
    /// Gamma_psi(nu) = Re<B(a v_+)|nu>_{L2}, nu a C^4 physical-side field.
    double gamma(const TraceState& state, const SpinorField& nu4) const;
    double eval_J(const TraceState& state) const;
    double grad_J(const TraceState& state, const SpinorField& h2) const;
    double hessian_J(const TraceState& state, const SpinorField& h2, const SpinorField& k2) const;
    double lagrange_multiplier(const TraceState& state) const;
    /// || (D - mu) psi ||_{H^{-1/2}} with D applied in the physical
    /// representation: alpha.p + beta as a momentum multiplier plus the
    /// pointwise potentials. Independent of the FW-side gradient assembly.
    double euler_lagrange_residual(const TraceState& state, double mu) const;
    double residual_T(const TraceState& state, double mu, const SpinorField& h2) const;
    double residual_T_dual_norm(const TraceState& state, double mu) const;

    // --- prepared fast paths (solver hot loop) ----------------------------
    double hessian_I_prepared(const Prepared& p, const SpinorField& h4,
                              const SpinorField& k4) const;
    double hessian_J_prepared(const Prepared& p, const SpinorField& h2,
                              const SpinorField& k2) const;
    /// L2 representative of the T functional: 2 a (lambda - mu) what + 2 G1hat.
    SpinorField residual_t_field(const Prepared& p) const;
    double residual_t_dual_norm_prepared(const Prepared& p) const;
    /// L2 representative of k -> d^2 J_W(u)[h; k]; one batched-FFT pass.
    SpinorField hessian_J_apply(const Prepared& p, const SpinorField& h2) const;
    double euler_lagrange_residual_prepared(const Prepared& p, double mu) const;
    double gamma_prepared(const Prepared& p, const SpinorField& nu4) const;

    /// H^{1/2} dual norm of a C^2 momentum L2-representative.
    double dual_norm(const SpinorField& rep2) const;

private:
    const SpectralGrid* grid_;
    int z_;
    double alpha_;
    FunctionalFlags flags_;
    SpectralKernel interaction_;
    std::optional<RealField> nuclear_v_;

    /// B f in position space for the interaction data of `p`.
    SpinorField apply_b(const Prepared& p, const SpinorField& f_pos) const;
};

} // namespace mdc
