#pragma once

#include "mdc/functional.hpp"

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace mdc {

struct SolverConfig {
    int atomic_number = 20;
    double alpha_fs = 1.0 / 137.036;
    int grid_points = 32;
    double box_length = 40.0;
    double tol_inner = 1e-9; // on the H^{1/2} dual norm of dJ_W
    double tol_outer = 1e-8; // on the H^{1/2} dual norm of T
    int max_iter_inner = 4000;
    int max_iter_outer = 20000;
    int multi_starts = 3;
    std::uint64_t seed = 1;
    bool disable_self_field = false;
    bool disable_external_potential = false;
    // step control
    double newton_threshold = 1e-4; // switch the inner loop to Newton-CG below this
    double step_init = 0.5;
    double step_min = 1e-10;
    double step_max = 100.0;
    double armijo_c = 1e-4;
    double backtrack = 0.5;
};

struct ConfigError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct SolverError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct IterationRecord {
    int outer;
    double f_value;
    double t_dual;
    int inner_iterations;
};

struct Diagnostics {
    bool mu_in_0_1 = false;
    bool mass_gt_half = false;
    bool norm_bound = false;
    bool gamma_nonneg = false;
    bool all() const { return mu_in_0_1 && mass_gt_half && norm_bound && gamma_nonneg; }
};

struct SolveReport {
    bool converged = false;
    double mu = 0.0;
    double lambda_w = 0.0;
    double lambda1_estimate = 0.0;
    FunctionalValue i_parts;
    double upper_trace_mass = 0.0; // |a w|^2_{L2} = a^2
    double residual_el = 0.0;
    double residual_t_dual = 0.0;
    int iterations_inner_total = 0;
    int iterations_outer = 0;
    Diagnostics diagnostics;
    double gamma_eta = 0.0;     // Gamma_psi(eta) at the solution
    double norm_bound_lhs = 0.0;
    double norm_bound_rhs = 0.0;
    int start_index = -1;
    std::vector<IterationRecord> history;
    // converged trace variables (momentum representation)
    std::optional<SpinorField> w_final;
    std::optional<SpinorField> u_final;
};

struct InnerResult {
    SpinorField u;
    double lambda_w = 0.0;
    int iterations = 0;
    bool converged = false;
    double grad_norm = 0.0;
};

/// Two-level min-max: the inner strictly concave maximization over the lower
/// FW trace u (yielding phi_2(w) and lambda_W) and the outer minimization of
/// F(w) = I(phi(w)) over the unit L2 sphere of upper traces (yielding the
/// Lambda_1 estimate and the ground state).
class GroundStateSolver {
public:
    GroundStateSolver(const SpectralGrid& grid, const SolverConfig& config);

    static void validate_config(const SolverConfig& config);

    const EnergyFunctional& functional() const { return functional_; }
    const SolverConfig& config() const { return config_; }

    /// Preconditioned ascent + Newton-CG endgame on J_W for fixed w.
    /// Throws SolverError on iteration limit or a ball-boundary breach.
    InnerResult inner_maximize(const SpinorField& w, const SpinorField* warm_u = nullptr,
                               double tol_override = 0.0) const;

    /// Riemannian Barzilai-Borwein descent of F on the sphere, re-solving the
    /// inner problem (warm-started) at every trial point.
    SolveReport outer_minimize(const SpinorField& w0) const;

    /// Multi-start driver; returns the best converged report.
    SolveReport solve() const;

    struct ProbeResult {
        double min_quotient = 0.0;
        std::vector<double> quotients;
    };
    /// d^2 F along random tangent directions by central differences of dF.
    ProbeResult hessian_probe(const SpinorField& w_star, int n_directions, std::uint64_t seed,
                              double eps = 1e-3) const;

    SpinorField initial_guess(int start_index) const;

    /// dF(w)[h] = a dI(phi(w))[(dP(w)h, 0)] at the inner maximizer for w.
    double outer_directional(const SpinorField& w, const SpinorField& h,
                             const SpinorField* warm_u = nullptr, double tol_override = 0.0) const;

private:
    const SpectralGrid* grid_;
    SolverConfig config_;
    EnergyFunctional functional_;

    SpinorField newton_direction(const EnergyFunctional::Prepared& p, double grad_norm) const;
    void fill_report_diagnostics(const EnergyFunctional::Prepared& p, SolveReport& r) const;
};

} // namespace mdc
