// Acceptance suite: one pass/fail line per criterion, exit 0 iff all pass.
// Usage: mdc_acceptance [--cli /path/to/mdc] [--only N]

#include "mdc/constants.hpp"
#include "mdc/halfspace.hpp"
#include "mdc/inequalities.hpp"
#include "mdc/random_fields.hpp"
#include "mdc/report.hpp"
#include "mdc/solver.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

using namespace mdc;

namespace {

std::string g_cli_path;
int g_failures = 0;

struct Timer {
    std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    }
};

void result(int criterion, const std::string& name, bool pass, const std::string& detail) {
    std::printf("[%s] criterion %2d: %s (%s)\n", pass ? "PASS" : "FAIL", criterion, name.c_str(),
                detail.c_str());
    std::fflush(stdout);
    if (!pass) ++g_failures;
}

std::string fmt(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6g", x);
    return buf;
}

SpinorField random_tangent(const SpectralGrid& g, const SpinorField& w, std::uint64_t seed) {
    SpinorField h = random_field(g, 2, seed);
    const cxd c = inner_l2(w, h);
    axpy(-cxd{c.real(), 0.0}, w, h);
    return h;
}

// ---------------------------------------------------------------- criterion 1
void criterion1() {
    Timer timer;
    SolverConfig c;
    c.atomic_number = 20;
    c.alpha_fs = 0.0;
    c.grid_points = 16;
    c.box_length = 20.0;
    c.tol_inner = 1e-12;
    c.tol_outer = 1e-11;
    c.multi_starts = 1;
    SpectralGrid grid(c.grid_points, c.box_length);
    GroundStateSolver solver(grid, c);
    SolveReport r = solver.solve();
    const double u_mass = r.u_final ? norm2_l2(*r.u_final) : 1.0;
    const double wall = timer.seconds();
    const bool pass = r.converged && std::abs(r.mu - 1.0) <= 1e-10 &&
                      std::abs(r.lambda_w - 1.0) <= 1e-10 && u_mass <= 1e-20 &&
                      r.residual_el <= 1e-10 && r.residual_t_dual <= 1e-10 && wall < 10.0;
    result(1, "free-case exactness", pass,
           "mu-1=" + fmt(r.mu - 1.0) + " lambdaW-1=" + fmt(r.lambda_w - 1.0) +
               " |u|^2=" + fmt(u_mass) + " res_EL=" + fmt(r.residual_el) +
               " res_T=" + fmt(r.residual_t_dual) + " wall=" + fmt(wall) + "s");
}

// ---------------------------------------------------------------- criterion 2
void criterion2() {
    const double alpha = 1.0 / 137.036;
    const double oracle = std::sqrt(1.0 - std::pow(20.0 * alpha, 2));
    const double tol = 0.1 * (1.0 - oracle);
    struct Point {
        int n;
        double box;
    };
    const std::vector<Point> sweep{{24, 30.0}, {32, 40.0}, {48, 60.0}};
    std::vector<double> errors;
    std::string detail;
    bool all_converged = true;
    for (const auto& pt : sweep) {
        SolverConfig c;
        c.atomic_number = 20;
        c.grid_points = pt.n;
        c.box_length = pt.box;
        c.disable_self_field = true;
        c.tol_outer = 1e-8;
        c.multi_starts = 1;
        SpectralGrid grid(c.grid_points, c.box_length);
        GroundStateSolver solver(grid, c);
        try {
            SolveReport r = solver.solve();
            errors.push_back(std::abs(r.mu - oracle));
            detail += "N=" + std::to_string(pt.n) + ":err=" + fmt(errors.back()) + " ";
        } catch (const std::exception& e) {
            all_converged = false;
            detail += std::string("N=") + std::to_string(pt.n) + ":" + e.what() + " ";
            errors.push_back(1.0);
        }
    }
    bool decreasing = errors.size() == 3 && errors[1] < errors[0] && errors[2] < errors[1];
    const bool pass = all_converged && errors.back() <= tol && decreasing;
    result(2, "Dirac-Coulomb oracle (Z=20, self-field off)", pass,
           detail + "target<=" + fmt(tol) + (decreasing ? " decreasing" : " NOT-decreasing"));
}

// ---------------------------------------------------------------- criterion 3
void criterion3() {
    SolverConfig c;
    c.atomic_number = 20;
    c.grid_points = 24;
    c.box_length = 30.0;
    c.tol_outer = 1e-8;
    c.multi_starts = 1;
    SpectralGrid grid(c.grid_points, c.box_length);
    GroundStateSolver full_solver(grid, c);
    SolveReport full = full_solver.solve();

    SolverConfig c2 = c;
    c2.disable_self_field = true;
    GroundStateSolver coulomb_solver(grid, c2);
    SolveReport coulomb = coulomb_solver.solve();

    const double mu_identity =
        std::abs(full.mu - (full.lambda_w + 0.5 * c.alpha_fs *
                                                (full.i_parts.d_rho - full.i_parts.d_j)));
    const bool pass = full.converged && full.mu > 0.0 && full.mu < 1.0 &&
                      full.upper_trace_mass > 0.5 && mu_identity <= 1e-8 &&
                      full.mu >= coulomb.mu - 1e-10 && full.diagnostics.norm_bound;
    result(3, "full MDC run at Z=20", pass,
           "mu=" + fmt(full.mu) + " mass=" + fmt(full.upper_trace_mass) +
               " |mu-identity|=" + fmt(mu_identity) + " mu_full-mu_C=" +
               fmt(full.mu - coulomb.mu) + " norm_bound lhs=" + fmt(full.norm_bound_lhs) +
               " rhs=" + fmt(full.norm_bound_rhs));
}

// ---------------------------------------------------------------- criterion 4
void criterion4() {
    SpectralGrid g(6, 9.0);
    const double alpha = 1.0 / 137.036;
    EnergyFunctional F(g, 10, alpha);
    std::mt19937_64 rng(202);
    double worst_gi = 0.0, worst_gj = 0.0, worst_hi = 0.0, worst_hj = 0.0, worst_df = 0.0;

    auto phi_of = [](const TraceState& st) {
        SpinorField up = st.w;
        up.scale(st.a);
        return join_blocks(up, st.u);
    };

    for (int t = 0; t < 100; ++t) {
        const std::uint64_t s = rng();
        SpinorField w = random_field(g, 2, s);
        SpinorField u = random_field(g, 2, s + 1);
        u.scale(std::sqrt(0.1 + 0.3 * (t % 4) / 4.0));
        TraceState st = TraceState::make(w, u);
        SpinorField h4 = random_field(g, 4, s + 2, {true, 1.0, true});
        SpinorField h2 = random_field(g, 2, s + 3);

        const double eps = 1e-5;
        // grad_I
        {
            SpinorField pp = phi_of(st);
            axpy(cxd{eps, 0.0}, h4, pp);
            SpinorField pm = phi_of(st);
            axpy(cxd{-eps, 0.0}, h4, pm);
            const double fd = (F.eval_I_free(pp).I - F.eval_I_free(pm).I) / (2.0 * eps);
            const double an = F.grad_I(st, h4);
            worst_gi = std::max(worst_gi, std::abs(an - fd) / std::max(1.0, std::abs(an)));
        }
        // grad_J
        {
            SpinorField up = st.u;
            axpy(cxd{eps, 0.0}, h2, up);
            SpinorField um = st.u;
            axpy(cxd{-eps, 0.0}, h2, um);
            const double fd = (F.eval_J(TraceState::make(st.w, up)) -
                               F.eval_J(TraceState::make(st.w, um))) /
                              (2.0 * eps);
            const double an = F.grad_J(st, h2);
            worst_gj = std::max(worst_gj, std::abs(an - fd) / std::max(1.0, std::abs(an)));
        }
        if (t < 25) { // hessians: second differences, quarter of the battery
            SpinorField k4 = random_field(g, 4, s + 4);
            const double an = F.hessian_I(st, h4, k4);
            auto dI_along_h = [&](const SpinorField& base) {
                SpinorField p2 = base;
                axpy(cxd{eps, 0.0}, h4, p2);
                SpinorField m2 = base;
                axpy(cxd{-eps, 0.0}, h4, m2);
                return (F.eval_I_free(p2).I - F.eval_I_free(m2).I) / (2.0 * eps);
            };
            SpinorField bp = phi_of(st);
            axpy(cxd{eps, 0.0}, k4, bp);
            SpinorField bm = phi_of(st);
            axpy(cxd{-eps, 0.0}, k4, bm);
            const double fd = (dI_along_h(bp) - dI_along_h(bm)) / (2.0 * eps);
            worst_hi = std::max(worst_hi, std::abs(an - fd) / std::max(1.0, std::abs(an)));

            SpinorField k2 = random_field(g, 2, s + 5);
            const double anj = F.hessian_J(st, h2, k2);
            SpinorField up = st.u;
            axpy(cxd{eps, 0.0}, k2, up);
            SpinorField um = st.u;
            axpy(cxd{-eps, 0.0}, k2, um);
            const double fdj = (F.grad_J(TraceState::make(st.w, up), h2) -
                                F.grad_J(TraceState::make(st.w, um), h2)) /
                               (2.0 * eps);
            worst_hj = std::max(worst_hj, std::abs(anj - fdj) / std::max(1.0, std::abs(anj)));
        }
    }

    // dF against finite differences of F(w) = I(phi(w)) through the inner solve
    SolverConfig c;
    c.atomic_number = 10;
    c.grid_points = 6;
    c.box_length = 9.0;
    c.tol_inner = 1e-13;
    SpectralGrid g2(c.grid_points, c.box_length);
    GroundStateSolver solver(g2, c);
    for (int t = 0; t < 100; ++t) {
        SpinorField w = random_field(g2, 2, 9000 + 2 * t);
        SpinorField h = random_tangent(g2, w, 9001 + 2 * t);
        InnerResult inner = solver.inner_maximize(w, nullptr, 1e-13);
        const double an = solver.outer_directional(w, h, &inner.u, 1e-13);
        const double eps = 1e-5;
        auto F_at = [&](double sgn) {
            SpinorField wp = w;
            axpy(cxd{sgn * eps, 0.0}, h, wp);
            normalize_l2(wp);
            InnerResult in2 = solver.inner_maximize(wp, &inner.u, 1e-13);
            return in2.lambda_w;
        };
        const double fd = (F_at(1.0) - F_at(-1.0)) / (2.0 * eps);
        worst_df = std::max(worst_df, std::abs(an - fd) / std::max(1.0, std::abs(an)));
    }

    const bool pass = worst_gi <= 1e-6 && worst_gj <= 1e-6 && worst_df <= 1e-6 &&
                      worst_hi <= 1e-5 && worst_hj <= 1e-5;
    result(4, "derivative consistency vs finite differences", pass,
           "grad_I=" + fmt(worst_gi) + " grad_J=" + fmt(worst_gj) + " dF=" + fmt(worst_df) +
               " hess_I=" + fmt(worst_hi) + " hess_J=" + fmt(worst_hj));
}

// ---------------------------------------------------------------- criterion 5
void criterion5() {
    SolverConfig c;
    c.atomic_number = 20;
    c.grid_points = 12;
    c.box_length = 14.0;
    c.tol_inner = 1e-10;
    SpectralGrid g(c.grid_points, c.box_length);
    GroundStateSolver solver(g, c);
    const EnergyFunctional& F = solver.functional();
    const double margin = 1.0 - 8.0 * c.alpha_fs * constants::gamma_tix; // ~0.93557
    double worst = -1e30;
    bool ok = true;
    for (int iw = 0; iw < 10; ++iw) {
        SpinorField w = iw == 0 ? solver.initial_guess(0) : random_field(g, 2, 400 + iw);
        InnerResult inner = solver.inner_maximize(w);
        TraceState st{transform(w, Rep::Momentum), inner.u, std::sqrt(1.0 - norm2_l2(inner.u))};
        auto p = F.prepare(st);
        for (int t = 0; t < 50; ++t) {
            SpinorField h = random_field(g, 2, 10000 + 100 * iw + t);
            const double h2 = norm2_h_half(h);
            const double q = F.hessian_J_prepared(p, h, h) / h2;
            worst = std::max(worst, q);
            if (q > -margin + 1e-8) ok = false;
        }
    }
    result(5, "inner concavity margin -(1 - 8 alpha gamma_T)", ok,
           "worst quotient=" + fmt(worst) + " must be <= " + fmt(-margin) + " + 1e-8");
}

// ---------------------------------------------------------------- criterion 6
void criterion6() {
    SolverConfig c;
    c.atomic_number = 20;
    c.grid_points = 12;
    c.box_length = 14.0;
    c.tol_inner = 1e-10;
    SpectralGrid g(c.grid_points, c.box_length);
    GroundStateSolver solver(g, c);
    double worst = 0.0;
    for (int iw = 0; iw < 5; ++iw) {
        SpinorField w = iw == 0 ? solver.initial_guess(0) : random_field(g, 2, 800 + iw);
        InnerResult ref = solver.inner_maximize(w);
        for (int t = 0; t < 5; ++t) {
            SpinorField start = random_field(g, 2, 900 + 10 * iw + t);
            start.scale(std::sqrt(0.05 + 0.08 * t));
            InnerResult other = solver.inner_maximize(w, &start);
            SpinorField diff = other.u;
            axpy(cxd{-1.0, 0.0}, ref.u, diff);
            worst = std::max(worst, std::sqrt(norm2_h_half(diff)));
        }
    }
    result(6, "inner maximizer uniqueness across starts", worst < 1e-7,
           "worst H^{1/2} distance=" + fmt(worst));
}

// ---------------------------------------------------------------- criterion 7
void criterion7() {
    Timer timer;
    SpectralGrid g(16, 20.0);
    InequalitySuite suite(g, 1e-6);
    auto reports = suite.run_all(1000, 7);
    int violations = 0;
    std::string detail;
    for (const auto& r : reports) {
        violations += r.violations;
        detail += r.name + "=" + fmt(r.worst_ratio) + " ";
    }
    // N = 8 spectral-vs-oracle agreement at 1e-10
    SpectralGrid g8(8, 10.0);
    SpectralKernel pair = coulomb_kernel(g8);
    double worst_oracle = 0.0;
    for (int t = 0; t < 5; ++t) {
        SpinorField psi = transform(random_field(g8, 4, 50 + t), Rep::Position);
        RealField rho = density(psi);
        auto j = current(psi);
        const double s1 = pair_energy(rho, rho, pair);
        const double o1 = oracle_pair_energy(rho, rho, pair);
        worst_oracle = std::max(worst_oracle, std::abs(s1 - o1) / std::max(1e-30, std::abs(o1)));
        for (int k = 0; k < 3; ++k) {
            const double s2 = pair_energy(j[k], j[k], pair);
            const double o2 = oracle_pair_energy(j[k], j[k], pair);
            worst_oracle =
                std::max(worst_oracle, std::abs(s2 - o2) / std::max(1e-12, std::abs(o2)));
        }
    }
    const double wall = timer.seconds();
    const bool pass = violations == 0 && worst_oracle <= 1e-10 && wall < 60.0;
    result(7, "inequality battery (1000 band-limited trials)", pass,
           detail + "oracle_rel=" + fmt(worst_oracle) + " wall=" + fmt(wall) + "s");
}

// ---------------------------------------------------------------- criterion 8
void criterion8() {
    bool pass = true;
    std::string detail;

    // per-mode U(p) identities on random momenta
    std::mt19937_64 rng(7);
    std::normal_distribution<double> gauss(0.0, 2.5);
    double worst_unitary = 0.0, worst_diag = 0.0;
    for (int t = 0; t < 500; ++t) {
        const std::array<double, 3> p{gauss(rng), gauss(rng), gauss(rng)};
        const FwSymbol s = fw_symbol_at(p);
        const auto& d = dirac_matrices();
        // U U^{-1} and U D0(p) U^{-1} - lambda beta
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j) {
                cxd uid{0.0, 0.0};
                for (int k = 0; k < 4; ++k) uid += s.U[i * 4 + k] * s.Uinv[k * 4 + j];
                worst_unitary = std::max(worst_unitary,
                                         std::abs(uid - (i == j ? cxd{1, 0} : cxd{0, 0})));
            }
        Mat4 d0{};
        for (int e = 0; e < 16; ++e)
            d0[e] = d.beta[e] + p[0] * d.alpha[0][e] + p[1] * d.alpha[1][e] + p[2] * d.alpha[2][e];
        Mat4 ud{}, udu{};
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j)
                for (int k = 0; k < 4; ++k) ud[i * 4 + j] += s.U[i * 4 + k] * d0[k * 4 + j];
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j)
                for (int k = 0; k < 4; ++k) udu[i * 4 + j] += ud[i * 4 + k] * s.Uinv[k * 4 + j];
        for (int e = 0; e < 16; ++e)
            worst_diag = std::max(worst_diag, std::abs(udu[e] - s.lambda * d.beta[e]));
    }
    pass = pass && worst_unitary <= 1e-12 && worst_diag <= 1e-12;
    detail += "unitary=" + fmt(worst_unitary) + " diag=" + fmt(worst_diag);

    // projector algebra and D2N identity on fields
    SpectralGrid g(12, 15.0);
    SpinorField f = random_field(g, 4, 12, {false});
    SpinorField fp = project(f, +1);
    SpinorField fm = project(f, -1);
    double worst_proj = 0.0;
    {
        SpinorField idem = project(fp, +1);
        SpinorField sum = fp;
        axpy(cxd{1.0, 0.0}, fm, sum);
        for (std::size_t k = 0; k < f.size(); ++k) {
            worst_proj = std::max(worst_proj, std::abs(idem.data()[k] - fp.data()[k]));
            worst_proj = std::max(worst_proj, std::abs(sum.data()[k] - f.data()[k]));
        }
        SpinorField cross = project(fp, -1);
        for (std::size_t k = 0; k < f.size(); ++k)
            worst_proj = std::max(worst_proj, std::abs(cross.data()[k]));
    }
    pass = pass && worst_proj <= 1e-12;
    detail += " proj=" + fmt(worst_proj);

    SpinorField u2 = random_field(g, 2, 13, {false});
    SpinorField d2n = dirichlet_to_neumann(u2);
    SpinorField sq = apply_sqrt_operator(u2);
    double worst_d2n = 0.0;
    for (std::size_t k = 0; k < u2.size(); ++k)
        worst_d2n = std::max(worst_d2n, std::abs(d2n.data()[k] - sq.data()[k]));
    pass = pass && worst_d2n <= 1e-12;
    detail += " d2n=" + fmt(worst_d2n);

    const double closed = h1_norm_optimal(u2);
    const double traced = norm2_h_half(u2);
    const double quad = quadrature_h1_norm(extend(u2, 64));
    const double id_err = std::abs(closed - traced) / traced;
    const double quad_err = std::abs(quad - traced) / traced;
    pass = pass && id_err <= 1e-12 && quad_err <= 1e-6;
    detail += " ext_id=" + fmt(id_err) + " quad=" + fmt(quad_err);

    result(8, "operator identities", pass, detail);
}

// ---------------------------------------------------------------- criterion 9
void criterion9() {
    const double alpha = 1.0 / 137.036;
    auto c124 = InequalitySuite::check_coupling_constants(124, alpha);
    auto c123 = InequalitySuite::check_coupling_constants(123, alpha);
    bool pass = c124.z_admissible && std::abs(c124.z_alpha_gamma_t - 0.9987) < 2e-3 &&
                c123.z1_admissible && std::abs(c123.z1_alpha_gamma_t - 0.9987) < 2e-3;

    // rejected configuration: Z = 200
    bool rejected = false;
    try {
        SolverConfig c;
        c.atomic_number = 200;
        GroundStateSolver::validate_config(c);
    } catch (const ConfigError&) {
        rejected = true;
    }
    pass = pass && rejected;

    std::string detail = "Z=124:" + fmt(c124.z_alpha_gamma_t) + " Z=123(+1):" +
                         fmt(c123.z1_alpha_gamma_t) + (rejected ? " Z=200-rejected" : " Z=200-NOT-rejected");

    if (!g_cli_path.empty()) {
        const std::string cmd = g_cli_path + " solve --Z 200 --grid 8 --box 10 >/dev/null 2>&1";
        const int rc = std::system(cmd.c_str());
        const int exit_code = WEXITSTATUS(rc);
        pass = pass && exit_code == 1;
        detail += " cli_exit=" + std::to_string(exit_code);
    }
    result(9, "coupling-constant table and config rejection", pass, detail);
}

// --------------------------------------------------------------- criterion 10
void criterion10() {
    SolverConfig c;
    c.atomic_number = 20;
    c.grid_points = 12;
    c.box_length = 14.0;
    c.tol_outer = 1e-7;
    c.seed = 5;
    c.multi_starts = 2;
    SpectralGrid g(c.grid_points, c.box_length);
    std::string r1, r2;
    {
        GroundStateSolver solver(g, c);
        r1 = report_to_json(solver.solve(), c);
    }
    {
        GroundStateSolver solver(g, c);
        r2 = report_to_json(solver.solve(), c);
    }
    bool pass = !r1.empty() && r1 == r2;
    std::string detail = pass ? "library reports byte-identical" : "library reports differ";

    if (!g_cli_path.empty()) {
        const std::string base = g_cli_path +
                                 " solve --Z 20 --grid 12 --box 14 --tol-outer 1e-7 --seed 5 "
                                 "--starts 2 --out ";
        const int rc1 = std::system((base + "acc_det_1.json >/dev/null 2>&1").c_str());
        const int rc2 = std::system((base + "acc_det_2.json >/dev/null 2>&1").c_str());
        auto slurp = [](const char* p) {
            std::ifstream in(p);
            std::ostringstream ss;
            ss << in.rdbuf();
            return ss.str();
        };
        const std::string f1 = slurp("acc_det_1.json");
        const std::string f2 = slurp("acc_det_2.json");
        const bool cli_ok = WEXITSTATUS(rc1) == 0 && WEXITSTATUS(rc2) == 0 && !f1.empty() &&
                            f1 == f2;
        pass = pass && cli_ok;
        detail += cli_ok ? "; cli reports byte-identical" : "; cli reports differ";
        std::remove("acc_det_1.json");
        std::remove("acc_det_2.json");
    }
    result(10, "determinism of reports", pass, detail);
}

} // namespace

int main(int argc, char** argv) {
    int only = 0;
    for (int i = 1; i < argc; ++i) {
        const std::string a = argv[i];
        if (a == "--cli" && i + 1 < argc) g_cli_path = argv[++i];
        else if (a == "--only" && i + 1 < argc) only = std::atoi(argv[++i]);
    }
    const std::function<void()> criteria[] = {criterion1, criterion2, criterion3, criterion4,
                                              criterion5, criterion6, criterion7, criterion8,
                                              criterion9, criterion10};
    Timer total;
    for (int i = 0; i < 10; ++i) {
        if (only != 0 && only != i + 1) continue;
        try {
            criteria[i]();
        } catch (const std::exception& e) {
            result(i + 1, "criterion threw", false, e.what());
        }
    }
    std::printf("acceptance: %s (%d failure%s, %.1fs)\n", g_failures == 0 ? "ALL PASS" : "FAILED",
                g_failures, g_failures == 1 ? "" : "s", total.seconds());
    return g_failures == 0 ? 0 : 1;
}
