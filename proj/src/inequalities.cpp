#include "mdc/inequalities.hpp"

#include "mdc/constants.hpp"
#include "mdc/dirac.hpp"
#include "mdc/random_fields.hpp"
#include "mdc/simd/kernels.hpp"

#include <cmath>
#include <stdexcept>

namespace mdc {

namespace {

RealField unit_delta_field(const SpectralKernel& k) {
    // (delta * K): the kernel's regularized potential of a unit point charge
    // at the box center.
    RealField v = nuclear_potential(1, k);
    for (auto& x : v.values) x = -x;
    return v;
}

void tally(InequalityReport& r, double ratio) {
    r.worst_ratio = std::max(r.worst_ratio, ratio);
    if (ratio > 1.0 + r.slack) ++r.violations;
}

void tally_fullband(InequalityReport& r, double ratio) {
    ++r.fullband_trials;
    r.worst_ratio_fullband = std::max(r.worst_ratio_fullband, ratio);
}

} // namespace

InequalitySuite::InequalitySuite(const SpectralGrid& grid, double slack)
    : grid_(&grid), slack_(slack), pair_(coulomb_kernel(grid)), invsq_(inverse_square_kernel(grid)),
      nuclear_(nuclear_kernel(grid)), w_coulomb_(unit_delta_field(pair_)),
      w_invsq_(unit_delta_field(invsq_)), w_nuclear_(unit_delta_field(nuclear_)),
      abs_p_(grid.npts()) {
    for (std::size_t i = 0; i < grid.npts(); ++i) abs_p_[i] = std::sqrt(grid.p2()[i]);
}

double InequalitySuite::weighted_density_integral(const SpinorField& psi_pos,
                                                  const RealField& w) const {
    double s = 0.0;
    for (std::size_t i = 0; i < grid_->npts(); ++i) {
        double rho = 0.0;
        for (int c = 0; c < psi_pos.ncomp(); ++c) rho += std::norm(psi_pos(i, c));
        s += rho * w.values[i];
    }
    return s * grid_->cell_volume();
}

InequalityReport InequalitySuite::check_hardy(int n_trials, std::uint64_t seed) const {
    InequalityReport r{"hardy", n_trials, 0.0, 0, slack_};
    for (int t = 0; t < n_trials; ++t) {
        SpinorField psi = random_field(*grid_, 4, seed + 11u * t, {true, 1.0 + t % 4, true});
        SpinorField pos = transform(psi, Rep::Position);
        const double lhs = weighted_density_integral(pos, w_invsq_);
        const double rhs = constants::gamma_hardy * constants::gamma_hardy * norm2_grad(psi);
        tally(r, lhs / rhs);
        if (t % 10 == 0) {
            SpinorField raw = random_field(*grid_, 4, seed + 11u * t + 5u, {false});
            SpinorField rp = transform(raw, Rep::Position);
            tally_fullband(r, weighted_density_integral(rp, w_invsq_) /
                                  (constants::gamma_hardy * constants::gamma_hardy *
                                   norm2_grad(raw)));
        }
    }
    return r;
}

InequalityReport InequalitySuite::check_kato(int n_trials, std::uint64_t seed) const {
    InequalityReport r{"kato", n_trials, 0.0, 0, slack_};
    for (int t = 0; t < n_trials; ++t) {
        SpinorField psi = random_field(*grid_, 4, seed + 13u * t, {true, 1.0 + t % 4, true});
        SpinorField pos = transform(psi, Rep::Position);
        const double lhs = weighted_density_integral(pos, w_coulomb_);
        const double rhs = constants::gamma_kato * norm2_h_half(psi);
        tally(r, lhs / rhs);
        if (t % 10 == 0) {
            SpinorField raw = random_field(*grid_, 4, seed + 13u * t + 5u, {false});
            SpinorField rp = transform(raw, Rep::Position);
            tally_fullband(r, weighted_density_integral(rp, w_coulomb_) /
                                  (constants::gamma_kato * norm2_h_half(raw)));
        }
    }
    return r;
}

InequalityReport InequalitySuite::check_kato_nuclear(int n_trials, std::uint64_t seed) const {
    InequalityReport r{"kato-nuclear-kernel", n_trials, 0.0, 0, slack_};
    for (int t = 0; t < n_trials; ++t) {
        SpinorField psi = random_field(*grid_, 4, seed + 13u * t, {true, 1.0 + t % 4, true});
        SpinorField pos = transform(psi, Rep::Position);
        const double lhs = weighted_density_integral(pos, w_nuclear_);
        const double rhs = constants::gamma_kato * norm2_h_half(psi);
        tally(r, lhs / rhs);
    }
    return r;
}

InequalityReport InequalitySuite::check_tix(int n_trials, std::uint64_t seed) const {
    InequalityReport r{"tix", 2 * n_trials, 0.0, 0, slack_};
    for (int t = 0; t < n_trials; ++t) {
        SpinorField psi = random_field(*grid_, 4, seed + 17u * t, {true, 1.0 + t % 4, true});
        for (int sign : {+1, -1}) {
            SpinorField proj = project(psi, sign);
            const double rhs = constants::gamma_tix * norm2_h_half(proj);
            if (!(rhs > 0.0)) continue;
            SpinorField pos = transform(proj, Rep::Position);
            const double lhs = weighted_density_integral(pos, w_coulomb_);
            tally(r, lhs / rhs);
        }
        if (t % 10 == 0) {
            SpinorField raw = project(random_field(*grid_, 4, seed + 17u * t + 5u, {false}), +1);
            const double rhs = constants::gamma_tix * norm2_h_half(raw);
            if (rhs > 0.0)
                tally_fullband(r, weighted_density_integral(transform(raw, Rep::Position),
                                                            w_coulomb_) /
                                      rhs);
        }
    }
    return r;
}

InequalityReport InequalitySuite::check_tix_nuclear(int n_trials, std::uint64_t seed) const {
    InequalityReport r{"tix-nuclear-kernel", 2 * n_trials, 0.0, 0, slack_};
    for (int t = 0; t < n_trials; ++t) {
        SpinorField psi = random_field(*grid_, 4, seed + 17u * t, {true, 1.0 + t % 4, true});
        for (int sign : {+1, -1}) {
            SpinorField proj = project(psi, sign);
            const double rhs = constants::gamma_tix * norm2_h_half(proj);
            if (!(rhs > 0.0)) continue;
            SpinorField pos = transform(proj, Rep::Position);
            const double lhs = weighted_density_integral(pos, w_nuclear_);
            tally(r, lhs / rhs);
        }
    }
    return r;
}

InequalityReport InequalitySuite::check_convolution_bounds(int n_trials, std::uint64_t seed) const {
    // both kernel realizations: the k(0) = 0 pair convention and the
    // truncated kernel the solver's potentials are built from
    InequalityReport r{"convolution", 6 * n_trials, 0.0, 0, slack_};
    for (int t = 0; t < n_trials; ++t) {
        SpinorField source = random_field(*grid_, 4, seed + 19u * t);
        SpinorField psi = random_field(*grid_, 4, seed + 19u * t + 7u);
        RealField rho = density(transform(source, Rep::Position));
        const double rho_l1 = rho.integrate();
        RealField rho_psi = density(transform(psi, Rep::Position));
        for (const SpectralKernel* k : {&pair_, &nuclear_}) {
            const double lhs = pair_energy(rho, rho_psi, *k);
            tally(r, lhs / (constants::gamma_kato * rho_l1 * norm2_h_half(psi)));
            for (int sign : {+1, -1}) {
                SpinorField proj = project(psi, sign);
                const double h2 = norm2_h_half(proj);
                if (!(h2 > 0.0)) continue;
                RealField rho_proj = density(transform(proj, Rep::Position));
                const double lhs_p = pair_energy(rho, rho_proj, *k);
                tally(r, lhs_p / (constants::gamma_tix * rho_l1 * h2));
            }
        }
    }
    return r;
}

InequalityReport InequalitySuite::check_positivity(int n_trials, std::uint64_t seed) const {
    // D-terms carry the physical (truncated) kernel, whose monopole term is
    // what keeps D_rho - D_J >= 0 like on R^3.
    InequalityReport r{"positivity", n_trials, 0.0, 0, slack_};
    const double tol = 1e-10;
    const bool with_oracle = grid_->n() <= 8;
    for (int t = 0; t < n_trials; ++t) {
        SpinorField psi = random_field(*grid_, 4, seed + 23u * t);
        SpinorField pos = transform(psi, Rep::Position);
        RealField rho = density(pos);
        auto j = current(pos);
        const double d_rho = pair_energy(rho, rho, nuclear_);
        double d_j = 0.0;
        for (int k = 0; k < 3; ++k) d_j += pair_energy(j[k], j[k], nuclear_);
        if (d_j < -tol) ++r.violations;
        if (d_rho - d_j < -tol) ++r.violations;
        // D_J from the pair kernel is nonnegative as well (k >= 0 termwise)
        double d_j_pair = 0.0;
        for (int k = 0; k < 3; ++k) d_j_pair += pair_energy(j[k], j[k], pair_);
        if (d_j_pair < -tol) ++r.violations;
        // ratio bookkeeping: how close D_J comes to D_rho
        if (d_rho > 0.0) r.worst_ratio = std::max(r.worst_ratio, d_j / d_rho);
        if (with_oracle && t < 3) {
            for (const SpectralKernel* k : {&pair_, &nuclear_}) {
                const double ds = pair_energy(rho, rho, *k);
                const double scale = std::max(1.0, std::abs(ds));
                if (std::abs(ds - oracle_pair_energy(rho, rho, *k)) / scale > 1e-10)
                    ++r.violations;
                double djs = 0.0, djo = 0.0;
                for (int c = 0; c < 3; ++c) {
                    djs += pair_energy(j[c], j[c], *k);
                    djo += oracle_pair_energy(j[c], j[c], *k);
                }
                if (std::abs(djs - djo) / scale > 1e-10) ++r.violations;
            }
        }
    }
    return r;
}

InequalityReport InequalitySuite::check_current_bound(int n_trials, std::uint64_t seed) const {
    InequalityReport r{"current-bound", n_trials, 0.0, 0, slack_};
    for (int t = 0; t < n_trials; ++t) {
        SpinorField psi = random_field(*grid_, 4, seed + 29u * t, {false});
        SpinorField pos = transform(psi, Rep::Position);
        RealField rho = density(pos);
        auto j = current(pos);
        for (std::size_t i = 0; i < grid_->npts(); ++i) {
            const double jn = std::sqrt(j[0].values[i] * j[0].values[i] +
                                        j[1].values[i] * j[1].values[i] +
                                        j[2].values[i] * j[2].values[i]);
            if (jn > rho.values[i] + 1e-12) ++r.violations;
            if (rho.values[i] > 0.0) r.worst_ratio = std::max(r.worst_ratio, jn / rho.values[i]);
        }
    }
    return r;
}

InequalityReport InequalitySuite::check_apm_expansion(const std::vector<double>& eps_list) const {
    InequalityReport r{"apm-expansion", static_cast<int>(eps_list.size()), 0.0, 0, slack_};
    std::vector<double> plus_ratios;
    for (double eps : eps_list) {
        double worst_plus = 0.0;
        for (std::size_t i = 0; i < grid_->npts(); ++i) {
            const double p2 = grid_->p2()[i];
            if (p2 == 0.0) continue;
            const double e2p2 = eps * eps * p2;
            const double lam = std::sqrt(1.0 + e2p2);
            const double a_plus = std::sqrt(0.5 * (1.0 + 1.0 / lam));
            const double a_minus = std::sqrt(0.5 * (1.0 - 1.0 / lam));
            tally(r, std::abs(a_plus - 1.0) / e2p2);
            tally(r, a_minus / (eps * std::sqrt(p2)));
            worst_plus = std::max(worst_plus, std::abs(a_plus - 1.0) / e2p2);
        }
        plus_ratios.push_back(worst_plus);
    }
    // O(eps^2) confirmation: the normalized ratio stays stable across decades
    for (std::size_t k = 1; k < plus_ratios.size(); ++k)
        if (plus_ratios[k] > 2.0 * plus_ratios[k - 1] + 1e-12) ++r.violations;
    return r;
}

InequalitySuite::CouplingReport InequalitySuite::check_coupling_constants(int atomic_number,
                                                                          double alpha_fs) {
    CouplingReport c;
    const double gt = constants::gamma_tix;
    c.z_alpha_gamma_t = atomic_number * alpha_fs * gt;
    c.z1_alpha_gamma_t = (atomic_number + 1) * alpha_fs * gt;
    c.one_minus_8_alpha_gt = 1.0 - 8.0 * alpha_fs * gt;
    c.one_minus_2_alpha_gt = 1.0 - 2.0 * alpha_fs * gt;
    c.z_admissible = c.z_alpha_gamma_t < 1.0;
    c.z1_admissible = c.z1_alpha_gamma_t <= 1.0;
    c.in_existence_range = atomic_number > 4 && atomic_number < 124;
    return c;
}

std::vector<InequalityReport> InequalitySuite::run_all(int n_trials, std::uint64_t seed) const {
    if (n_trials < 1) throw std::invalid_argument("run_all: n_trials must be >= 1");
    std::vector<InequalityReport> out;
    out.push_back(check_hardy(n_trials, seed));
    out.push_back(check_kato(n_trials, seed + 1));
    out.push_back(check_tix(n_trials, seed + 2));
    out.push_back(check_convolution_bounds(n_trials, seed + 3));
    out.push_back(check_positivity(n_trials, seed + 4));
    out.push_back(check_current_bound(std::max(1, n_trials / 10), seed + 5));
    out.push_back(check_apm_expansion());
    out.push_back(check_kato_nuclear(n_trials, seed + 6));
    out.push_back(check_tix_nuclear(n_trials, seed + 7));
    return out;
}

} // namespace mdc
