#pragma once

#include "mdc/inequalities.hpp"
#include "mdc/solver.hpp"

#include <iosfwd>
#include <string>

namespace mdc {

/// Flat key = value configuration file; '#' starts a comment.  Unknown keys
/// are rejected.  Command-line flags override file values at the CLI layer.
SolverConfig load_config_file(const std::string& path);
void apply_config_entry(SolverConfig& config, const std::string& key, const std::string& value);

/// Versioned machine-diffable report; identical inputs produce identical text.
std::string report_to_json(const SolveReport& report, const SolverConfig& config);

/// Radially averaged rho(r), Phi(r), |J|(r) for the converged state.
void write_radial_csv(std::ostream& os, const EnergyFunctional& functional,
                      const SolveReport& report);

/// Per-outer-iteration convergence history.
void write_history_csv(std::ostream& os, const SolveReport& report);

/// One row per sweep point; header written by the caller once.
void write_sweep_row(std::ostream& os, const std::string& param, double value,
                     const SolveReport& report, double wall_seconds);

std::string inequality_reports_to_text(const std::vector<InequalityReport>& reports);

} // namespace mdc
