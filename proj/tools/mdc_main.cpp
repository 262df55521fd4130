// mdc: Maxwell-Dirac-Coulomb ground-state solver and property-check battery.
//
//   mdc solve  --Z 20 --grid 32 --box 60 [--no-self-field] [--out report.json]
//   mdc verify --trials 1000 --seed 7 [--suite kato]
//   mdc sweep  --param box --values 30,45,60 --Z 20 --grid 32 [--out sweep.csv]

#include "mdc/report.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>

namespace {

struct SolveFlags {
    std::string config_path;
    std::string out_path;
    std::string csv_prefix;
};

void add_solver_options(CLI::App* cmd, mdc::SolverConfig& c, SolveFlags& f) {
    cmd->add_option("--config", f.config_path, "flat key = value config file");
    cmd->add_option("--Z", c.atomic_number, "atomic number");
    cmd->add_option("--alpha", c.alpha_fs, "fine structure constant");
    cmd->add_option("--grid", c.grid_points, "grid points per axis (even)");
    cmd->add_option("--box", c.box_length, "box length (natural units)");
    cmd->add_option("--tol-inner", c.tol_inner, "inner gradient tolerance");
    cmd->add_option("--tol-outer", c.tol_outer, "outer stationarity tolerance");
    cmd->add_option("--max-iter-inner", c.max_iter_inner, "inner iteration cap");
    cmd->add_option("--max-iter-outer", c.max_iter_outer, "outer iteration cap");
    cmd->add_option("--seed", c.seed, "seed for the multi-start initial guesses");
    cmd->add_option("--starts", c.multi_starts, "number of seeded starts");
    cmd->add_flag("--no-self-field", c.disable_self_field, "drop the electron's own Phi and A");
    cmd->add_flag("--no-external-potential", c.disable_external_potential,
                  "drop the nuclear -Z/|x|");
    cmd->add_option("--out", f.out_path, "report output path (default: stdout)");
    cmd->add_option("--csv", f.csv_prefix,
                    "prefix for <prefix>_radial.csv and <prefix>_history.csv");
}

// File config first, then any flag the user actually passed wins.
mdc::SolverConfig merge_config(const CLI::App* cmd, const mdc::SolverConfig& flag_values,
                               const SolveFlags& f) {
    if (f.config_path.empty()) return flag_values;
    mdc::SolverConfig c = mdc::load_config_file(f.config_path);
    auto passed = [&](const std::string& name) { return cmd->count(name) > 0; };
    if (passed("--Z")) c.atomic_number = flag_values.atomic_number;
    if (passed("--alpha")) c.alpha_fs = flag_values.alpha_fs;
    if (passed("--grid")) c.grid_points = flag_values.grid_points;
    if (passed("--box")) c.box_length = flag_values.box_length;
    if (passed("--tol-inner")) c.tol_inner = flag_values.tol_inner;
    if (passed("--tol-outer")) c.tol_outer = flag_values.tol_outer;
    if (passed("--max-iter-inner")) c.max_iter_inner = flag_values.max_iter_inner;
    if (passed("--max-iter-outer")) c.max_iter_outer = flag_values.max_iter_outer;
    if (passed("--seed")) c.seed = flag_values.seed;
    if (passed("--starts")) c.multi_starts = flag_values.multi_starts;
    if (passed("--no-self-field")) c.disable_self_field = flag_values.disable_self_field;
    if (passed("--no-external-potential"))
        c.disable_external_potential = flag_values.disable_external_potential;
    return c;
}

int run_solve(const mdc::SolverConfig& config, const SolveFlags& flags) {
    mdc::SpectralGrid grid(config.grid_points, config.box_length);
    mdc::GroundStateSolver solver(grid, config);
    mdc::SolveReport report = solver.solve();

    const std::string text = mdc::report_to_json(report, config);
    if (flags.out_path.empty()) {
        std::cout << text;
    } else {
        std::ofstream out(flags.out_path);
        if (!out) throw mdc::ConfigError("cannot open output path: " + flags.out_path);
        out << text;
    }
    if (!flags.csv_prefix.empty()) {
        std::ofstream radial(flags.csv_prefix + "_radial.csv");
        mdc::write_radial_csv(radial, solver.functional(), report);
        std::ofstream history(flags.csv_prefix + "_history.csv");
        mdc::write_history_csv(history, report);
    }
    if (!report.diagnostics.all()) {
        std::cerr << "mdc solve: diagnostics failed (mu_in_0_1=" << report.diagnostics.mu_in_0_1
                  << " mass_gt_half=" << report.diagnostics.mass_gt_half
                  << " norm_bound=" << report.diagnostics.norm_bound
                  << " gamma_nonneg=" << report.diagnostics.gamma_nonneg << ")\n";
        return 3;
    }
    return 0;
}

int run_verify(int trials, std::uint64_t seed, int grid_n, double box, const std::string& suite,
               double slack, int z, double alpha) {
    mdc::SpectralGrid grid(grid_n, box);
    mdc::InequalitySuite s(grid, slack);
    std::vector<mdc::InequalityReport> reports;
    const bool all = suite == "all";
    if (all) {
        reports = s.run_all(trials, seed);
    } else if (suite == "hardy") reports.push_back(s.check_hardy(trials, seed));
    else if (suite == "kato") reports.push_back(s.check_kato(trials, seed));
    else if (suite == "tix") reports.push_back(s.check_tix(trials, seed));
    else if (suite == "convolution") reports.push_back(s.check_convolution_bounds(trials, seed));
    else if (suite == "positivity") reports.push_back(s.check_positivity(trials, seed));
    else if (suite == "current") reports.push_back(s.check_current_bound(trials, seed));
    else if (suite == "apm") reports.push_back(s.check_apm_expansion());
    else if (suite != "coupling")
        throw mdc::ConfigError("unknown suite: " + suite);

    int violations = 0;
    for (const auto& r : reports) violations += r.violations;
    std::cout << mdc::inequality_reports_to_text(reports);

    if (all || suite == "coupling") {
        const auto c = mdc::InequalitySuite::check_coupling_constants(z, alpha);
        std::cout << "coupling: Z*alpha*gamma_T=" << c.z_alpha_gamma_t
                  << " (Z+1)*alpha*gamma_T=" << c.z1_alpha_gamma_t
                  << " 1-8*alpha*gamma_T=" << c.one_minus_8_alpha_gt
                  << " 1-2*alpha*gamma_T=" << c.one_minus_2_alpha_gt
                  << (c.z_admissible ? "" : " [Z inadmissible]")
                  << (c.z1_admissible ? "" : " [Z+1 inadmissible]")
                  << (c.in_existence_range ? "" : " [outside 4 < Z < 124]") << '\n';
        if (!c.z_admissible || !c.z1_admissible) ++violations;
    }
    return violations == 0 ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Maxwell-Dirac-Coulomb ground-state solver (Fourier-spectral min-max)"};
    app.require_subcommand(1);

    mdc::SolverConfig solve_cfg;
    SolveFlags solve_flags;
    CLI::App* solve_cmd = app.add_subcommand("solve", "compute the ground state (psi, mu)");
    add_solver_options(solve_cmd, solve_cfg, solve_flags);

    int v_trials = 1000;
    std::uint64_t v_seed = 7;
    int v_grid = 16;
    double v_box = 20.0;
    double v_slack = 1e-6;
    int v_z = 20;
    double v_alpha = 1.0 / 137.036;
    std::string v_suite = "all";
    CLI::App* verify_cmd = app.add_subcommand("verify", "run the inequality property battery");
    verify_cmd->add_option("--trials", v_trials, "trials per inequality");
    verify_cmd->add_option("--seed", v_seed, "rng seed");
    verify_cmd->add_option("--grid", v_grid, "grid points per axis");
    verify_cmd->add_option("--box", v_box, "box length");
    verify_cmd->add_option("--slack", v_slack, "relative slack on each ratio");
    verify_cmd->add_option("--suite", v_suite,
                           "all|hardy|kato|tix|convolution|positivity|current|apm|coupling");
    verify_cmd->add_option("--Z", v_z, "atomic number for the coupling table");
    verify_cmd->add_option("--alpha", v_alpha, "fine structure constant for the coupling table");

    mdc::SolverConfig sweep_cfg;
    SolveFlags sweep_flags;
    std::string sweep_param;
    std::string sweep_values;
    std::string sweep_out;
    CLI::App* sweep_cmd = app.add_subcommand("sweep", "run solve over a parameter list");
    add_solver_options(sweep_cmd, sweep_cfg, sweep_flags);
    sweep_cmd->add_option("--param", sweep_param, "Z|box|grid")->required();
    sweep_cmd->add_option("--values", sweep_values, "comma-separated values")->required();
    sweep_cmd->add_option("--sweep-out", sweep_out, "sweep CSV path (default: stdout)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (solve_cmd->parsed()) {
            const mdc::SolverConfig config = merge_config(solve_cmd, solve_cfg, solve_flags);
            return run_solve(config, solve_flags);
        }
        if (verify_cmd->parsed()) {
            if (v_trials < 1) {
                std::cerr << "mdc verify: --trials must be >= 1\n";
                return 1;
            }
            return run_verify(v_trials, v_seed, v_grid, v_box, v_suite, v_slack, v_z, v_alpha);
        }
        if (sweep_cmd->parsed()) {
            std::vector<double> values;
            std::stringstream ss(sweep_values);
            std::string tok;
            while (std::getline(ss, tok, ','))
                if (!tok.empty()) values.push_back(std::stod(tok));
            if (values.empty()) {
                std::cerr << "mdc sweep: empty value list\n";
                return 1;
            }
            if (sweep_param != "Z" && sweep_param != "box" && sweep_param != "grid") {
                std::cerr << "mdc sweep: --param must be Z, box or grid\n";
                return 1;
            }
            std::ofstream file;
            std::ostream* os = &std::cout;
            if (!sweep_out.empty()) {
                file.open(sweep_out);
                if (!file) throw mdc::ConfigError("cannot open sweep output: " + sweep_out);
                os = &file;
            }
            *os << "param,value,mu,lambda_W,residual_EL,residual_T_dual,outer_iterations,"
                   "wall_seconds\n";
            for (double v : values) {
                mdc::SolverConfig c = merge_config(sweep_cmd, sweep_cfg, sweep_flags);
                if (sweep_param == "Z") c.atomic_number = static_cast<int>(v);
                else if (sweep_param == "box") c.box_length = v;
                else c.grid_points = static_cast<int>(v);
                mdc::SpectralGrid grid(c.grid_points, c.box_length);
                mdc::GroundStateSolver solver(grid, c);
                const auto t0 = std::chrono::steady_clock::now();
                mdc::SolveReport report = solver.solve();
                const double wall =
                    std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
                mdc::write_sweep_row(*os, sweep_param, v, report, wall);
            }
            return 0;
        }
    } catch (const mdc::ConfigError& e) {
        std::cerr << "mdc: config error: " << e.what() << '\n';
        return 1;
    } catch (const mdc::SolverError& e) {
        std::cerr << "mdc: solver failure: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "mdc: error: " << e.what() << '\n';
        return 2;
    }
    return 0;
}
