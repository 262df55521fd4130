#include "mdc/functional.hpp"

#include "mdc/simd/kernels.hpp"

#include <cmath>
#include <stdexcept>

namespace mdc {

namespace {

double re_dot_mom(const SpinorField& f, const SpinorField& g) {
    return f.grid().mode_volume() * simd::active().dot(f.data(), g.data(), f.size()).real();
}

double re_dot_mom_weighted(const SpinorField& f, const SpinorField& g, const double* w) {
    return f.grid().mode_volume() *
           simd::active().weighted_dot(f.data(), g.data(), w, f.grid().npts(), f.ncomp()).real();
}

double re_dot_pos(const SpinorField& f, const SpinorField& g) {
    return f.grid().cell_volume() * simd::active().dot(f.data(), g.data(), f.size()).real();
}

SpinorField scaled_copy(const SpinorField& f, double s) {
    SpinorField out = f;
    out.scale(s);
    return out;
}

/// m(y) = Re(psi, xi), mJ_k(y) = Re(psi, alpha_k xi): the bilinear densities
/// entering d^2 I (xi = psi reproduces rho and J).
void bilinear_densities(const SpinorField& psi, const SpinorField& xi, RealField& m,
                        std::array<RealField, 3>& mj) {
    const std::size_t n = psi.grid().npts();
    for (std::size_t i = 0; i < n; ++i) {
        const cxd p1 = psi(i, 0), p2 = psi(i, 1), p3 = psi(i, 2), p4 = psi(i, 3);
        const cxd x1 = xi(i, 0), x2 = xi(i, 1), x3 = xi(i, 2), x4 = xi(i, 3);
        m.values[i] = (std::conj(p1) * x1 + std::conj(p2) * x2 + std::conj(p3) * x3 +
                       std::conj(p4) * x4)
                          .real();
        // alpha_1 xi = (x4, x3, x2, x1)
        mj[0].values[i] = (std::conj(p1) * x4 + std::conj(p2) * x3 + std::conj(p3) * x2 +
                           std::conj(p4) * x1)
                              .real();
        // alpha_2 xi = (-i x4, i x3, -i x2, i x1)
        const cxd I{0.0, 1.0};
        mj[1].values[i] = (std::conj(p1) * (-I * x4) + std::conj(p2) * (I * x3) +
                           std::conj(p3) * (-I * x2) + std::conj(p4) * (I * x1))
                              .real();
        // alpha_3 xi = (x3, -x4, x1, -x2)
        mj[2].values[i] = (std::conj(p1) * x3 - std::conj(p2) * x4 + std::conj(p3) * x1 -
                           std::conj(p4) * x2)
                              .real();
    }
}

} // namespace

TraceState TraceState::make(SpinorField w, SpinorField u) {
    SpinorField wm = transform(w, Rep::Momentum);
    SpinorField um = transform(u, Rep::Momentum);
    if (wm.ncomp() != 2 || um.ncomp() != 2)
        throw std::invalid_argument("TraceState: w and u must be 2-component");
    if (!wm.grid().same_as(um.grid())) throw std::invalid_argument("TraceState: grid mismatch");
    const double wn = norm2_l2(wm);
    if (std::abs(wn - 1.0) > 1e-8)
        throw std::invalid_argument("TraceState: |w|_{L2} must be 1");
    const double un = norm2_l2(um);
    if (!(un < 1.0)) throw std::invalid_argument("TraceState: |u|^2_{L2} must be < 1");
    const double a = std::sqrt(1.0 - un);
    return TraceState{std::move(wm), std::move(um), a};
}

EnergyFunctional::EnergyFunctional(const SpectralGrid& grid, int atomic_number, double alpha_fs,
                                   FunctionalFlags flags)
    : grid_(&grid), z_(atomic_number), alpha_(alpha_fs), flags_(flags),
      interaction_(nuclear_kernel(grid)) {
    if (flags_.external) nuclear_v_.emplace(nuclear_potential(z_, nuclear_kernel(grid)));
}

SpinorField EnergyFunctional::apply_b(const Prepared& p, const SpinorField& f_pos) const {
    if (f_pos.rep() != Rep::Position)
        throw std::invalid_argument("apply_b: position representation required");
    SpinorField out(*grid_, 4, Rep::Position);
    simd::active().apply_potential(out.data(), f_pos.data(), p.b_scalar.data(),
                                   p.b_has_vector ? p.b_vector[0].data() : nullptr,
                                   p.b_has_vector ? p.b_vector[1].data() : nullptr,
                                   p.b_has_vector ? p.b_vector[2].data() : nullptr,
                                   grid_->npts());
    return out;
}

EnergyFunctional::Prepared EnergyFunctional::prepare(const TraceState& state) const {
    if (!state.w.grid().same_as(*grid_))
        throw std::invalid_argument("prepare: state lives on a different grid");
    const double a = state.a;

    const double w_h_half = grid_->mode_volume() *
                            simd::active().weighted_norm2(state.w.data(), grid_->lambda().data(),
                                                          grid_->npts(), 2);
    const double u_h_half = grid_->mode_volume() *
                            simd::active().weighted_norm2(state.u.data(), grid_->lambda().data(),
                                                          grid_->npts(), 2);

    SpinorField phi = join_blocks(scaled_copy(state.w, a), state.u);
    SpinorField psi_mom = phi;
    fw_rotate_momentum(psi_mom, FwDirection::Inverse);
    SpinorField psi_pos = transform(psi_mom, Rep::Position);

    InteractionTerms terms =
        compute_interaction_terms(psi_pos, interaction_, nuclear_v(), flags_.self_field);

    FunctionalValue value;
    value.kinetic_plus = a * a * w_h_half;
    value.kinetic_minus = u_h_half;
    value.v_ext = terms.v_ext;
    value.d_rho = terms.d_rho;
    value.d_j = terms.d_j;
    value.I = value.kinetic_plus - value.kinetic_minus + alpha_ * value.v_ext +
              0.5 * alpha_ * (value.d_rho - value.d_j);
    value.lambda_w = value.I;
    value.mu = value.I + 0.5 * alpha_ * (value.d_rho - value.d_j);

    // pointwise B = alpha (V + Phi - A.alpha)
    std::vector<double> b_scalar(grid_->npts(), 0.0);
    std::array<std::vector<double>, 3> b_vector;
    const bool b_has_vector = flags_.self_field;
    if (nuclear_v_)
        for (std::size_t i = 0; i < grid_->npts(); ++i) b_scalar[i] += alpha_ * nuclear_v_->values[i];
    if (flags_.self_field) {
        for (std::size_t i = 0; i < grid_->npts(); ++i) b_scalar[i] += alpha_ * terms.phi.values[i];
        for (int k = 0; k < 3; ++k) {
            b_vector[k].resize(grid_->npts());
            for (std::size_t i = 0; i < grid_->npts(); ++i)
                b_vector[k][i] = alpha_ * terms.vec_a[k].values[i];
        }
    }

    Prepared p{state,
               w_h_half,
               std::move(psi_pos),
               std::move(terms),
               std::move(b_scalar),
               std::move(b_vector),
               b_has_vector,
               SpinorField(*grid_, 4, Rep::Momentum),
               0.0,
               value,
               SpinorField(*grid_, 2, Rep::Momentum)};

    SpinorField bpsi = apply_b(p, p.psi_pos);
    SpinorField g_fw = transform(bpsi, Rep::Momentum);
    fw_rotate_momentum(g_fw, FwDirection::Forward);
    p.g_fw = std::move(g_fw);

    // s = dI(phi)[(w,0)] = 2 a |w|^2_{H^{1/2}} + 2 Re<G1|w>
    auto blocks = split_blocks(p.g_fw);
    p.s = 2.0 * a * w_h_half + 2.0 * re_dot_mom(blocks[0], state.w);

    // grad of J_W(u): -(s/a) u - 2 lambda u + 2 G2 in L2 representation
    SpinorField gj = blocks[1];
    gj.scale(2.0);
    const auto& lam = grid_->lambda();
    for (std::size_t i = 0; i < grid_->npts(); ++i) {
        const double c = -p.s / a - 2.0 * lam[i];
        gj(i, 0) += c * state.u(i, 0);
        gj(i, 1) += c * state.u(i, 1);
    }
    p.grad_j = std::move(gj);
    return p;
}

FunctionalValue EnergyFunctional::eval_I(const TraceState& state) const {
    return prepare(state).value;
}

FunctionalValue EnergyFunctional::eval_I_free(const SpinorField& phi4) const {
    SpinorField phi = transform(phi4, Rep::Momentum);
    if (phi.ncomp() != 4) throw std::invalid_argument("eval_I_free: 4-component field required");
    auto blocks = split_blocks(phi);
    FunctionalValue v;
    v.kinetic_plus = norm2_h_half(blocks[0]);
    v.kinetic_minus = norm2_h_half(blocks[1]);
    SpinorField psi = phi;
    fw_rotate_momentum(psi, FwDirection::Inverse);
    SpinorField psi_pos = transform(psi, Rep::Position);
    InteractionTerms terms =
        compute_interaction_terms(psi_pos, interaction_, nuclear_v(), flags_.self_field);
    v.v_ext = terms.v_ext;
    v.d_rho = terms.d_rho;
    v.d_j = terms.d_j;
    v.I = v.kinetic_plus - v.kinetic_minus + alpha_ * v.v_ext + 0.5 * alpha_ * (v.d_rho - v.d_j);
    v.lambda_w = v.I;
    v.mu = v.I + 0.5 * alpha_ * (v.d_rho - v.d_j);
    return v;
}

double EnergyFunctional::grad_I(const TraceState& state, const SpinorField& h4) const {
    const Prepared p = prepare(state);
    SpinorField hm = transform(h4, Rep::Momentum);
    if (hm.ncomp() != 4) throw std::invalid_argument("grad_I: 4-component direction required");
    auto hb = split_blocks(hm);
    const auto& lam = grid_->lambda();
    double val = 2.0 * state.a * re_dot_mom_weighted(state.w, hb[0], lam.data());
    val -= 2.0 * re_dot_mom_weighted(state.u, hb[1], lam.data());
    val += 2.0 * re_dot_mom(p.g_fw, hm);
    return val;
}

double EnergyFunctional::hessian_I_prepared(const Prepared& p, const SpinorField& h4,
                                            const SpinorField& k4) const {
    SpinorField hm = transform(h4, Rep::Momentum);
    SpinorField km = transform(k4, Rep::Momentum);
    if (hm.ncomp() != 4 || km.ncomp() != 4)
        throw std::invalid_argument("hessian_I: 4-component directions required");
    auto hb = split_blocks(hm);
    auto kb = split_blocks(km);
    const auto& lam = grid_->lambda();
    double val = 2.0 * re_dot_mom_weighted(kb[0], hb[0], lam.data());
    val -= 2.0 * re_dot_mom_weighted(kb[1], hb[1], lam.data());

    // xi = U_FW^{-1} h, eta = U_FW^{-1} k in position space
    SpinorField xi_m = hm;
    fw_rotate_momentum(xi_m, FwDirection::Inverse);
    SpinorField xi = transform(xi_m, Rep::Position);
    SpinorField eta_m = km;
    fw_rotate_momentum(eta_m, FwDirection::Inverse);
    SpinorField eta = transform(eta_m, Rep::Position);

    val += 2.0 * re_dot_pos(apply_b(p, xi), eta);

    if (flags_.self_field) {
        RealField m_xi(*grid_), m_eta(*grid_);
        std::array<RealField, 3> mj_xi{RealField(*grid_), RealField(*grid_), RealField(*grid_)};
        std::array<RealField, 3> mj_eta{RealField(*grid_), RealField(*grid_), RealField(*grid_)};
        bilinear_densities(p.psi_pos, xi, m_xi, mj_xi);
        bilinear_densities(p.psi_pos, eta, m_eta, mj_eta);
        double quart = pair_energy(m_eta, m_xi, interaction_);
        for (int k = 0; k < 3; ++k) quart -= pair_energy(mj_eta[k], mj_xi[k], interaction_);
        val += 4.0 * alpha_ * quart;
    }
    return val;
}

double EnergyFunctional::hessian_I(const TraceState& state, const SpinorField& h4,
                                   const SpinorField& k4) const {
    return hessian_I_prepared(prepare(state), h4, k4);
}

double EnergyFunctional::gamma_prepared(const Prepared& p, const SpinorField& nu4) const {
    // a v_+ = U_FW^{-1} (a w, 0)
    SpinorField zero2(*grid_, 2, Rep::Momentum);
    SpinorField av = join_blocks(scaled_copy(p.state.w, p.state.a), zero2);
    fw_rotate_momentum(av, FwDirection::Inverse);
    SpinorField av_pos = transform(av, Rep::Position);
    SpinorField nu_pos = transform(nu4, Rep::Position);
    return re_dot_pos(apply_b(p, av_pos), nu_pos);
}

double EnergyFunctional::gamma(const TraceState& state, const SpinorField& nu4) const {
    return gamma_prepared(prepare(state), nu4);
}

double EnergyFunctional::eval_J(const TraceState& state) const { return prepare(state).value.I; }

double EnergyFunctional::grad_J(const TraceState& state, const SpinorField& h2) const {
    const Prepared p = prepare(state);
    SpinorField hm = transform(h2, Rep::Momentum);
    if (hm.ncomp() != 2) throw std::invalid_argument("grad_J: 2-component direction required");
    return re_dot_mom(p.grad_j, hm);
}

double EnergyFunctional::hessian_J_prepared(const Prepared& p, const SpinorField& h2,
                                            const SpinorField& k2) const {
    SpinorField hm = transform(h2, Rep::Momentum);
    SpinorField km = transform(k2, Rep::Momentum);
    const double a = p.state.a;
    const double da_h = -re_dot_mom(p.state.u, hm) / a;
    const double da_k = -re_dot_mom(p.state.u, km) / a;
    const double d2a = (-re_dot_mom(km, hm) - da_h * da_k) / a;
    SpinorField h4 = join_blocks(scaled_copy(p.state.w, da_h), hm);
    SpinorField k4 = join_blocks(scaled_copy(p.state.w, da_k), km);
    return d2a * p.s + hessian_I_prepared(p, h4, k4);
}

double EnergyFunctional::hessian_J(const TraceState& state, const SpinorField& h2,
                                   const SpinorField& k2) const {
    return hessian_J_prepared(prepare(state), h2, k2);
}

double EnergyFunctional::lagrange_multiplier(const TraceState& state) const {
    return prepare(state).value.mu;
}

double EnergyFunctional::euler_lagrange_residual_prepared(const Prepared& p, double mu) const {
    SpinorField r = apply_free_dirac(p.psi_pos); // position
    SpinorField bp = apply_b(p, p.psi_pos);
    for (std::size_t k = 0; k < r.size(); ++k)
        r.data()[k] += bp.data()[k] - mu * p.psi_pos.data()[k];
    SpinorField rm = transform(r, Rep::Momentum);
    const double n2 = grid_->mode_volume() *
                      simd::active().weighted_norm2(rm.data(), grid_->inv_lambda().data(),
                                                    grid_->npts(), 4);
    return std::sqrt(n2);
}

double EnergyFunctional::euler_lagrange_residual(const TraceState& state, double mu) const {
    return euler_lagrange_residual_prepared(prepare(state), mu);
}

SpinorField EnergyFunctional::residual_t_field(const Prepared& p) const {
    auto blocks = split_blocks(p.g_fw);
    SpinorField t = blocks[0];
    t.scale(2.0);
    const double mu = p.value.mu;
    const double a = p.state.a;
    const auto& lam = grid_->lambda();
    for (std::size_t i = 0; i < grid_->npts(); ++i) {
        const double c = 2.0 * a * (lam[i] - mu);
        t(i, 0) += c * p.state.w(i, 0);
        t(i, 1) += c * p.state.w(i, 1);
    }
    return t;
}

double EnergyFunctional::dual_norm(const SpinorField& rep2) const {
    const double n2 = grid_->mode_volume() *
                      simd::active().weighted_norm2(rep2.data(), grid_->inv_lambda().data(),
                                                    grid_->npts(), rep2.ncomp());
    return std::sqrt(n2);
}

double EnergyFunctional::residual_t_dual_norm_prepared(const Prepared& p) const {
    return dual_norm(residual_t_field(p));
}

double EnergyFunctional::residual_T(const TraceState& state, double mu, const SpinorField& h2) const {
    const Prepared p = prepare(state);
    SpinorField hm = transform(h2, Rep::Momentum);
    auto blocks = split_blocks(p.g_fw);
    double val = 2.0 * re_dot_mom(blocks[0], hm);
    const auto& lam = grid_->lambda();
    val += 2.0 * state.a *
           re_dot_mom_weighted(state.w, hm, lam.data());
    val -= 2.0 * mu * state.a * re_dot_mom(state.w, hm);
    return val;
}

double EnergyFunctional::residual_T_dual_norm(const TraceState& state, double mu) const {
    Prepared p = prepare(state);
    auto blocks = split_blocks(p.g_fw);
    SpinorField t = blocks[0];
    t.scale(2.0);
    const auto& lam = grid_->lambda();
    for (std::size_t i = 0; i < grid_->npts(); ++i) {
        const double c = 2.0 * state.a * (lam[i] - mu);
        t(i, 0) += c * state.w(i, 0);
        t(i, 1) += c * state.w(i, 1);
    }
    return dual_norm(t);
}

SpinorField EnergyFunctional::hessian_J_apply(const Prepared& p, const SpinorField& h2) const {
    SpinorField hm = transform(h2, Rep::Momentum);
    const double a = p.state.a;
    const double da_h = -re_dot_mom(p.state.u, hm) / a;

    // Q1 representative: -(s/a) h + (da_h s / a^2) u
    SpinorField rep = hm;
    rep.scale(-p.s / a);
    axpy(cxd{da_h * p.s / (a * a), 0.0}, p.state.u, rep);

    // assembled direction H = (da_h w, h); xi = U_FW^{-1} H in position space
    SpinorField h4 = join_blocks(scaled_copy(p.state.w, da_h), hm);
    SpinorField xi_m = h4;
    fw_rotate_momentum(xi_m, FwDirection::Inverse);
    SpinorField xi = transform(xi_m, Rep::Position);

    // n = 2 B xi + 4 alpha [ (m_xi*K) psi - sum_k (mJ_xi,k*K) alpha_k psi ]
    SpinorField n_pos = apply_b(p, xi);
    n_pos.scale(2.0);
    if (flags_.self_field) {
        RealField m_xi(*grid_);
        std::array<RealField, 3> mj_xi{RealField(*grid_), RealField(*grid_), RealField(*grid_)};
        bilinear_densities(p.psi_pos, xi, m_xi, mj_xi);
        SpinorField pack(*grid_, 4, Rep::Position);
        for (std::size_t i = 0; i < grid_->npts(); ++i) {
            pack(i, 0) = cxd{m_xi.values[i], 0.0};
            for (int k = 0; k < 3; ++k) pack(i, k + 1) = cxd{mj_xi[k].values[i], 0.0};
        }
        SpinorField mom = transform(pack, Rep::Momentum);
        simd::active().apply_real_multiplier(mom.data(), interaction_.multiplier().data(), grid_->npts(),
                                             4);
        SpinorField conv = transform(mom, Rep::Position);
        std::vector<double> sconv(grid_->npts());
        std::array<std::vector<double>, 3> aconv;
        for (int k = 0; k < 3; ++k) aconv[k].resize(grid_->npts());
        for (std::size_t i = 0; i < grid_->npts(); ++i) {
            sconv[i] = 4.0 * alpha_ * conv(i, 0).real();
            for (int k = 0; k < 3; ++k) aconv[k][i] = 4.0 * alpha_ * conv(i, k + 1).real();
        }
        SpinorField w_psi(*grid_, 4, Rep::Position);
        simd::active().apply_potential(w_psi.data(), p.psi_pos.data(), sconv.data(),
                                       aconv[0].data(), aconv[1].data(), aconv[2].data(),
                                       grid_->npts());
        for (std::size_t k = 0; k < n_pos.size(); ++k) n_pos.data()[k] += w_psi.data()[k];
    }

    SpinorField r4 = transform(n_pos, Rep::Momentum);
    fw_rotate_momentum(r4, FwDirection::Forward);
    auto rb = split_blocks(r4);

    // kinetic parts of R4
    const auto& lam = grid_->lambda();
    for (std::size_t i = 0; i < grid_->npts(); ++i) {
        rb[0](i, 0) += 2.0 * lam[i] * da_h * p.state.w(i, 0);
        rb[0](i, 1) += 2.0 * lam[i] * da_h * p.state.w(i, 1);
        rb[1](i, 0) -= 2.0 * lam[i] * hm(i, 0);
        rb[1](i, 1) -= 2.0 * lam[i] * hm(i, 1);
    }

    const double c_up = re_dot_mom(rb[0], p.state.w) / a;
    axpy(cxd{1.0, 0.0}, rb[1], rep);
    axpy(cxd{-c_up, 0.0}, p.state.u, rep);
    return rep;
}

} // namespace mdc
