#include "mdc/solver.hpp"

#include "mdc/constants.hpp"
#include "mdc/random_fields.hpp"
#include "mdc/simd/kernels.hpp"

#include <cmath>
#include <iostream>

namespace mdc {

namespace {

double re_dot_mom(const SpinorField& f, const SpinorField& g) {
    return f.grid().mode_volume() * simd::active().dot(f.data(), g.data(), f.size()).real();
}

/// H^{1/2} Riesz representative of an L2 representative: divide by lambda(p).
SpinorField precondition(const SpinorField& rep) {
    SpinorField out = rep;
    simd::active().apply_real_multiplier(out.data(), out.grid().inv_lambda().data(),
                                         out.grid().npts(), out.ncomp());
    return out;
}

void project_tangent(const SpinorField& w, SpinorField& h) {
    const double c = re_dot_mom(w, h);
    simd::active().axpy(cxd{-c, 0.0}, w.data(), h.data(), h.size());
}

SpinorField retract(const SpinorField& w, const SpinorField& d, double step) {
    SpinorField out = w;
    simd::active().axpy(cxd{step, 0.0}, d.data(), out.data(), out.size());
    normalize_l2(out);
    return out;
}

} // namespace

void GroundStateSolver::validate_config(const SolverConfig& c) {
    if (c.grid_points < 2 || c.grid_points % 2 != 0)
        throw ConfigError("grid_points must be even and >= 2");
    if (!(c.box_length > 0.0)) throw ConfigError("box_length must be positive");
    if (c.atomic_number < 1) throw ConfigError("atomic_number must be >= 1");
    if (c.alpha_fs < 0.0) throw ConfigError("alpha_fs must be >= 0");
    if (!(c.tol_inner > 0.0) || !(c.tol_outer > 0.0)) throw ConfigError("tolerances must be positive");
    if (c.max_iter_inner < 1 || c.max_iter_outer < 1) throw ConfigError("iteration limits must be >= 1");
    if (c.multi_starts < 1) throw ConfigError("multi_starts must be >= 1");
    const double margin = (c.atomic_number + 1) * c.alpha_fs * constants::gamma_tix;
    if (margin > 1.0)
        throw ConfigError("(Z+1)*alpha*gamma_T exceeds 1 (" + std::to_string(margin) +
                          "): strict concavity margin lost");
    if (c.atomic_number < 5 || c.atomic_number > 123)
        std::cerr << "[mdc] warning: Z = " << c.atomic_number
                  << " outside the existence range 4 < Z < 124\n";
}

GroundStateSolver::GroundStateSolver(const SpectralGrid& grid, const SolverConfig& config)
    : grid_(&grid), config_(config),
      functional_(grid, config.atomic_number, config.alpha_fs,
                  FunctionalFlags{!config.disable_self_field, !config.disable_external_potential}) {
    validate_config(config);
    if (grid.n() != config.grid_points || grid.box_length() != config.box_length)
        throw ConfigError("grid does not match config");
}

SpinorField GroundStateSolver::newton_direction(const EnergyFunctional::Prepared& p,
                                                double grad_norm) const {
    // PCG on A x = g with A = -Hess J_W, SPD near the maximizer.
    const auto& g = *grid_;
    const SpinorField& b = p.grad_j;
    SpinorField x(g, 2, Rep::Momentum);
    SpinorField r = b;
    const double sa = p.s / p.state.a;
    std::vector<double> dinv(g.npts());
    for (std::size_t i = 0; i < g.npts(); ++i) dinv[i] = 1.0 / (2.0 * g.lambda()[i] + std::abs(sa));
    auto precond_apply = [&](const SpinorField& v) {
        SpinorField z = v;
        simd::active().apply_real_multiplier(z.data(), dinv.data(), g.npts(), 2);
        return z;
    };
    SpinorField z = precond_apply(r);
    SpinorField d = z;
    double rz = re_dot_mom(r, z);
    const double b_norm = std::sqrt(re_dot_mom(b, b));
    const double eta = std::min(0.25, std::sqrt(grad_norm));
    for (int it = 0; it < 64; ++it) {
        SpinorField ad = functional_.hessian_J_apply(p, d);
        ad.scale(-1.0);
        const double dad = re_dot_mom(d, ad);
        if (!(dad > 0.0)) return precondition(b); // lost positive definiteness, fall back
        const double alpha = rz / dad;
        simd::active().axpy(cxd{alpha, 0.0}, d.data(), x.data(), x.size());
        simd::active().axpy(cxd{-alpha, 0.0}, ad.data(), r.data(), r.size());
        if (std::sqrt(re_dot_mom(r, r)) <= eta * b_norm) break;
        SpinorField z2 = precond_apply(r);
        const double rz2 = re_dot_mom(r, z2);
        const double beta = rz2 / rz;
        rz = rz2;
        SpinorField d2 = z2;
        simd::active().axpy(cxd{beta, 0.0}, d.data(), d2.data(), d2.size());
        d = std::move(d2);
        z = std::move(z2);
    }
    return x;
}

InnerResult GroundStateSolver::inner_maximize(const SpinorField& w, const SpinorField* warm_u,
                                              double tol_override) const {
    const double tol = tol_override > 0.0 ? tol_override : config_.tol_inner;
    SpinorField u = warm_u != nullptr ? transform(*warm_u, Rep::Momentum)
                                      : SpinorField(*grid_, 2, Rep::Momentum);
    {
        const double un = norm2_l2(u);
        if (un >= 0.5) u.scale(std::sqrt(0.45 / un));
    }
    SpinorField wm = transform(w, Rep::Momentum);

    auto make_state = [&](const SpinorField& uu) {
        const double un = norm2_l2(uu);
        return TraceState{wm, uu, std::sqrt(1.0 - un)};
    };
    EnergyFunctional::Prepared p = functional_.prepare(make_state(u));

    bool have_prev = false;
    SpinorField prev_u(*grid_, 2, Rep::Momentum);
    SpinorField prev_pg(*grid_, 2, Rep::Momentum);
    double step = config_.step_init;

    for (int it = 0; it <= config_.max_iter_inner; ++it) {
        const double gn = functional_.dual_norm(p.grad_j);
        if (gn <= tol) {
            if (!(p.value.I > 0.0))
                throw SolverError("inner maximum with lambda_W <= 0; configuration outside the "
                                  "variational regime");
            return InnerResult{u, p.value.I, it, true, gn};
        }
        const bool use_newton = gn < config_.newton_threshold;
        SpinorField pg = precondition(p.grad_j);
        SpinorField d = use_newton ? newton_direction(p, gn) : pg;
        double dir = re_dot_mom(p.grad_j, d);
        if (!(dir > 0.0)) { // fall back to the metric gradient
            d = pg;
            dir = re_dot_mom(p.grad_j, d);
        }

        double s = 1.0;
        if (!use_newton) {
            s = step;
            if (have_prev) {
                SpinorField du = u;
                simd::active().axpy(cxd{-1.0, 0.0}, prev_u.data(), du.data(), du.size());
                SpinorField dg = pg;
                simd::active().axpy(cxd{-1.0, 0.0}, prev_pg.data(), dg.data(), dg.size());
                const double num = re_dot_mom(du, du);
                const double den = -re_dot_mom(du, dg); // ascent: curvature negative
                if (den > 0.0) s = num / den;
            }
            s = std::min(std::max(s, config_.step_min), config_.step_max);
        }

        // Armijo with a round-off allowance: near stationarity the true
        // increase ~ |grad|^2 drops below double noise while the gradient is
        // still contracting under Newton.
        const double noise = 1e-14 * (1.0 + std::abs(p.value.I));
        bool accepted = false;
        while (s >= config_.step_min) {
            SpinorField u_try = u;
            simd::active().axpy(cxd{s, 0.0}, d.data(), u_try.data(), u_try.size());
            const double un = norm2_l2(u_try);
            if (un < 0.5) {
                EnergyFunctional::Prepared p_try = functional_.prepare(make_state(u_try));
                if (p_try.value.I >= p.value.I + config_.armijo_c * s * dir - noise) {
                    have_prev = true;
                    prev_u = u;
                    prev_pg = pg;
                    u = std::move(u_try);
                    p = std::move(p_try);
                    step = s;
                    accepted = true;
                    break;
                }
            }
            s *= config_.backtrack;
        }
        if (!accepted) {
            // Ascent direction with no admissible step: only possible if the
            // 1/2-ball boundary blocks every trial, which the boundary
            // repulsion d J_W(u)[u] < 0 rules out for sane configurations.
            if (norm2_l2(u) > 0.45)
                throw SolverError("inner ball-boundary breach: no admissible ascent step below "
                                  "|u|^2 = 1/2");
            throw SolverError("inner line search failed");
        }
    }
    throw SolverError("inner iteration limit reached");
}

double GroundStateSolver::outer_directional(const SpinorField& w, const SpinorField& h,
                                            const SpinorField* warm_u,
                                            double tol_override) const {
    SpinorField wm = transform(w, Rep::Momentum);
    InnerResult inner = inner_maximize(wm, warm_u, tol_override);
    TraceState st{wm, inner.u, std::sqrt(1.0 - norm2_l2(inner.u))};
    EnergyFunctional::Prepared p = functional_.prepare(st);
    SpinorField t = functional_.residual_t_field(p);
    SpinorField hm = transform(h, Rep::Momentum);
    const double th = re_dot_mom(t, hm);
    const double wh = re_dot_mom(wm, hm);
    const double tw = re_dot_mom(t, wm);
    return st.a * (th - wh * tw);
}

SolveReport GroundStateSolver::outer_minimize(const SpinorField& w0) const {
    SpinorField w = transform(w0, Rep::Momentum);
    if (!(norm2_l2(w) > 0.0)) throw SolverError("outer: zero initial trace");
    normalize_l2(w);

    SolveReport report;
    InnerResult inner = inner_maximize(w, nullptr);
    report.iterations_inner_total += inner.iterations;
    SpinorField u = inner.u;

    auto state_of = [&](const SpinorField& ww, const SpinorField& uu) {
        return TraceState{ww, uu, std::sqrt(1.0 - norm2_l2(uu))};
    };
    EnergyFunctional::Prepared p = functional_.prepare(state_of(w, u));

    bool have_prev = false;
    SpinorField prev_w(*grid_, 2, Rep::Momentum);
    SpinorField prev_g(*grid_, 2, Rep::Momentum);
    double step = config_.step_init;
    bool converged = false;

    for (int it = 0; it <= config_.max_iter_outer; ++it) {
        if (p.state.a <= 0.5) throw SolverError("outer: a <= 1/2 anomaly");
        SpinorField t = functional_.residual_t_field(p);
        const double t_dual = functional_.dual_norm(t);
        report.history.push_back({it, p.value.I, t_dual, inner.iterations});
        report.iterations_outer = it;
        if (t_dual <= config_.tol_outer) {
            converged = true;
            break;
        }
        if (it == config_.max_iter_outer) break;

        // ambient L2 representative of dF: a * t; preconditioned + projected
        SpinorField g = t;
        g.scale(p.state.a);
        g = precondition(g);
        project_tangent(w, g);

        double s = step;
        if (have_prev) {
            SpinorField dw = w;
            simd::active().axpy(cxd{-1.0, 0.0}, prev_w.data(), dw.data(), dw.size());
            SpinorField dg = g;
            simd::active().axpy(cxd{-1.0, 0.0}, prev_g.data(), dg.data(), dg.size());
            const double num = re_dot_mom(dw, dw);
            const double den = re_dot_mom(dw, dg);
            if (den > 0.0) s = num / den;
        }
        s = std::min(std::max(s, config_.step_min), config_.step_max);

        // dF along -g through the L2 representative a*t (g is tangent)
        SpinorField at = t;
        at.scale(p.state.a);
        const double dir = -re_dot_mom(at, g);

        const double noise = 1e-14 * (1.0 + std::abs(p.value.I));
        bool accepted = false;
        while (s >= config_.step_min) {
            SpinorField w_try = retract(w, g, -s);
            InnerResult in_try = inner_maximize(w_try, &u);
            report.iterations_inner_total += in_try.iterations;
            EnergyFunctional::Prepared p_try = functional_.prepare(state_of(w_try, in_try.u));
            if (p_try.value.I <= p.value.I + config_.armijo_c * s * dir + noise) {
                have_prev = true;
                prev_w = w;
                prev_g = g;
                w = std::move(w_try);
                u = in_try.u;
                inner = std::move(in_try);
                p = std::move(p_try);
                step = s;
                accepted = true;
                break;
            }
            s *= config_.backtrack;
        }
        if (!accepted) throw SolverError("outer line search failed");
    }

    report.converged = converged;
    if (!converged) throw SolverError("outer iteration limit reached");

    report.mu = p.value.mu;
    report.lambda_w = p.value.I;
    report.lambda1_estimate = p.value.I;
    report.i_parts = p.value;
    report.upper_trace_mass = p.state.a * p.state.a;
    report.residual_t_dual = functional_.residual_t_dual_norm_prepared(p);
    report.residual_el = functional_.euler_lagrange_residual_prepared(p, p.value.mu);
    fill_report_diagnostics(p, report);
    report.w_final = w;
    report.u_final = u;
    return report;
}

void GroundStateSolver::fill_report_diagnostics(const EnergyFunctional::Prepared& p,
                                                SolveReport& r) const {
    // strict mu < 1 belongs to the interacting bound state; with the coupling
    // switched off the ground level IS the continuum edge mu = 1.
    const bool interacting = config_.alpha_fs > 0.0 && !config_.disable_external_potential;
    r.diagnostics.mu_in_0_1 = r.mu > 0.0 && (interacting ? r.mu < 1.0 : r.mu < 1.0 + 1e-10);
    r.diagnostics.mass_gt_half = r.upper_trace_mass > 0.5;

    const double gt = constants::gamma_tix;
    const double zeff = config_.disable_external_potential ? 0.0 : config_.atomic_number;
    const double c = (1.0 + config_.alpha_fs * gt * zeff) /
                     ((1.0 - config_.alpha_fs * gt) * (1.0 - config_.alpha_fs * gt * zeff));
    r.norm_bound_lhs = p.value.kinetic_plus + p.value.kinetic_minus;
    r.norm_bound_rhs = c * p.value.I;
    r.diagnostics.norm_bound = r.norm_bound_lhs <= r.norm_bound_rhs + 1e-8;

    SpinorField zero2(*grid_, 2, Rep::Momentum);
    SpinorField eta = join_blocks(zero2, p.state.u);
    fw_rotate_momentum(eta, FwDirection::Inverse);
    r.gamma_eta = functional_.gamma_prepared(p, eta);
    r.diagnostics.gamma_nonneg = r.gamma_eta >= -1e-8;
}

SpinorField GroundStateSolver::initial_guess(int start_index) const {
    const bool coulombic = !config_.disable_external_potential && config_.alpha_fs > 0.0;
    const double r0 = coulombic
                          ? 1.0 / (config_.atomic_number * config_.alpha_fs)
                          : grid_->box_length() / 6.0;
    SpinorField w(*grid_, 2, Rep::Position);
    for (std::size_t i = 0; i < grid_->npts(); ++i) {
        const double r = grid_->radius_from_center(i);
        const double v = coulombic ? std::exp(-r / r0) : std::exp(-(r * r) / (r0 * r0));
        w(i, 0) = cxd{v, 0.0};
    }
    SpinorField wm = transform(w, Rep::Momentum);
    normalize_l2(wm);
    if (start_index > 0) {
        SpinorField noise = random_field(*grid_, 2, config_.seed * 1000003u + start_index);
        axpy(cxd{0.35, 0.0}, noise, wm);
        normalize_l2(wm);
    }
    return wm;
}

SolveReport GroundStateSolver::solve() const {
    SolveReport best;
    bool have_best = false;
    std::string failures;
    for (int k = 0; k < config_.multi_starts; ++k) {
        try {
            SolveReport r = outer_minimize(initial_guess(k));
            r.start_index = k;
            if (!have_best || r.lambda1_estimate < best.lambda1_estimate) {
                best = std::move(r);
                have_best = true;
            }
        } catch (const SolverError& e) {
            failures += std::string(failures.empty() ? "" : "; ") + "start " + std::to_string(k) +
                        ": " + e.what();
        }
    }
    if (!have_best) throw SolverError("all starts failed: " + failures);
    return best;
}

GroundStateSolver::ProbeResult GroundStateSolver::hessian_probe(const SpinorField& w_star,
                                                                int n_directions,
                                                                std::uint64_t seed,
                                                                double eps) const {
    SpinorField w = transform(w_star, Rep::Momentum);
    normalize_l2(w);
    InnerResult base = inner_maximize(w, nullptr, 1e-12);
    ProbeResult res;
    res.min_quotient = 0.0;
    for (int k = 0; k < n_directions; ++k) {
        SpinorField h = k == 0 ? [&] {
            SpinorField ph = w; // phase direction i w
            ph.scale(cxd{0.0, 1.0});
            return ph;
        }()
                               : random_field(*grid_, 2, seed + 77777u * k);
        if (k > 0) project_tangent(w, h);
        const double hn = std::sqrt(norm2_h_half(h));
        if (!(hn > 0.0)) continue;
        h.scale(1.0 / hn);
        SpinorField wp = retract(w, h, eps);
        SpinorField wm2 = retract(w, h, -eps);
        const double dp = outer_directional(wp, h, &base.u, 1e-12);
        const double dm = outer_directional(wm2, h, &base.u, 1e-12);
        const double q = (dp - dm) / (2.0 * eps);
        res.quotients.push_back(q);
        if (k == 0 || q < res.min_quotient) res.min_quotient = std::min(res.min_quotient, q);
    }
    if (!res.quotients.empty()) {
        res.min_quotient = res.quotients.front();
        for (double q : res.quotients) res.min_quotient = std::min(res.min_quotient, q);
    }
    return res;
}

} // namespace mdc
