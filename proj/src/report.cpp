#include "mdc/report.hpp"

#include <json.hpp>

#include <cmath>
#include <fstream>
#include <iomanip>
#include <map>
#include <ostream>
#include <sstream>

namespace mdc {

namespace {

bool parse_bool(const std::string& v) {
    if (v == "true" || v == "1") return true;
    if (v == "false" || v == "0") return false;
    throw ConfigError("invalid boolean value: " + v);
}

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

} // namespace

void apply_config_entry(SolverConfig& c, const std::string& key, const std::string& value) {
    try {
        if (key == "atomic_number") c.atomic_number = std::stoi(value);
        else if (key == "alpha_fs") c.alpha_fs = std::stod(value);
        else if (key == "grid_points") c.grid_points = std::stoi(value);
        else if (key == "box_length") c.box_length = std::stod(value);
        else if (key == "tol_inner") c.tol_inner = std::stod(value);
        else if (key == "tol_outer") c.tol_outer = std::stod(value);
        else if (key == "max_iter_inner") c.max_iter_inner = std::stoi(value);
        else if (key == "max_iter_outer") c.max_iter_outer = std::stoi(value);
        else if (key == "disable_self_field") c.disable_self_field = parse_bool(value);
        else if (key == "disable_external_potential") c.disable_external_potential = parse_bool(value);
        else if (key == "seed") c.seed = std::stoull(value);
        else if (key == "multi_starts") c.multi_starts = std::stoi(value);
        else throw ConfigError("unknown config key: " + key);
    } catch (const std::invalid_argument&) {
        throw ConfigError("invalid value for " + key + ": " + value);
    } catch (const std::out_of_range&) {
        throw ConfigError("value out of range for " + key + ": " + value);
    }
}

SolverConfig load_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file: " + path);
    SolverConfig c;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError("config line " + std::to_string(lineno) + ": expected key = value");
        apply_config_entry(c, trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
    }
    return c;
}

std::string report_to_json(const SolveReport& r, const SolverConfig& c) {
    nlohmann::ordered_json j;
    j["schema_version"] = 1;
    j["units"] = "natural (m = c = hbar = 1); energies in units of the electron rest mass";
    j["mu"] = r.mu;
    j["lambda_W"] = r.lambda_w;
    j["Lambda1_estimate"] = r.lambda1_estimate;
    j["I_parts"] = {{"I", r.i_parts.I},
                    {"kinetic_plus", r.i_parts.kinetic_plus},
                    {"kinetic_minus", r.i_parts.kinetic_minus},
                    {"V_ext", r.i_parts.v_ext},
                    {"D_rho", r.i_parts.d_rho},
                    {"D_J", r.i_parts.d_j}};
    j["upper_trace_mass"] = r.upper_trace_mass;
    j["residual_EL"] = r.residual_el;
    j["residual_T_dual"] = r.residual_t_dual;
    j["iterations"] = {{"inner_total", r.iterations_inner_total}, {"outer", r.iterations_outer}};
    j["diagnostics"] = {{"mu_in_0_1", r.diagnostics.mu_in_0_1},
                        {"mass_gt_half", r.diagnostics.mass_gt_half},
                        {"norm_bound", r.diagnostics.norm_bound},
                        {"gamma_nonneg", r.diagnostics.gamma_nonneg}};
    j["gamma_eta"] = r.gamma_eta;
    j["norm_bound"] = {{"lhs", r.norm_bound_lhs}, {"rhs", r.norm_bound_rhs}};
    j["start_index"] = r.start_index;
    j["config_echo"] = {{"atomic_number", c.atomic_number},
                        {"alpha_fs", c.alpha_fs},
                        {"grid_points", c.grid_points},
                        {"box_length", c.box_length},
                        {"tol_inner", c.tol_inner},
                        {"tol_outer", c.tol_outer},
                        {"max_iter_inner", c.max_iter_inner},
                        {"max_iter_outer", c.max_iter_outer},
                        {"disable_self_field", c.disable_self_field},
                        {"disable_external_potential", c.disable_external_potential},
                        {"seed", c.seed},
                        {"multi_starts", c.multi_starts}};
    return j.dump(2) + "\n";
}

void write_radial_csv(std::ostream& os, const EnergyFunctional& functional,
                      const SolveReport& report) {
    if (!report.w_final || !report.u_final) throw SolverError("radial csv: no converged state");
    const auto& g = functional.grid();
    TraceState st = TraceState::make(*report.w_final, *report.u_final);
    auto p = functional.prepare(st);

    const double h = g.spacing();
    const int nbins = g.n() / 2 + 1;
    std::vector<double> rho(nbins, 0.0), phi(nbins, 0.0), jmag(nbins, 0.0);
    std::vector<int> count(nbins, 0);
    for (std::size_t i = 0; i < g.npts(); ++i) {
        const int b = std::min(nbins - 1, static_cast<int>(g.radius_from_center(i) / h));
        rho[b] += p.terms.rho.values[i];
        phi[b] += p.terms.phi.values[i];
        const double jn = std::sqrt(p.terms.current[0].values[i] * p.terms.current[0].values[i] +
                                    p.terms.current[1].values[i] * p.terms.current[1].values[i] +
                                    p.terms.current[2].values[i] * p.terms.current[2].values[i]);
        jmag[b] += jn;
        ++count[b];
    }
    os << "r,rho,phi,j_mag\n";
    os << std::setprecision(17);
    for (int b = 0; b < nbins; ++b) {
        if (count[b] == 0) continue;
        os << b * h << ',' << rho[b] / count[b] << ',' << phi[b] / count[b] << ','
           << jmag[b] / count[b] << '\n';
    }
}

void write_history_csv(std::ostream& os, const SolveReport& report) {
    os << "outer_iter,F,residual_T_dual,inner_iterations\n";
    os << std::setprecision(17);
    for (const auto& rec : report.history)
        os << rec.outer << ',' << rec.f_value << ',' << rec.t_dual << ',' << rec.inner_iterations
           << '\n';
}

void write_sweep_row(std::ostream& os, const std::string& param, double value,
                     const SolveReport& r, double wall_seconds) {
    os << std::setprecision(17) << param << ',' << value << ',' << r.mu << ',' << r.lambda_w << ','
       << r.residual_el << ',' << r.residual_t_dual << ',' << r.iterations_outer << ','
       << std::setprecision(3) << wall_seconds << '\n';
}

std::string inequality_reports_to_text(const std::vector<InequalityReport>& reports) {
    std::ostringstream os;
    os << std::left;
    for (const auto& r : reports) {
        os << (r.violations == 0 ? "[PASS] " : "[FAIL] ") << std::setw(22) << r.name
           << " trials=" << std::setw(6) << r.trials << " worst_ratio=" << std::setprecision(9)
           << r.worst_ratio << " violations=" << r.violations << " slack=" << r.slack;
        if (r.fullband_trials > 0)
            os << " fullband(" << r.fullband_trials << ", ungated)=" << r.worst_ratio_fullband;
        os << '\n';
    }
    return os.str();
}

} // namespace mdc
