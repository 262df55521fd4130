#include "mdc/inequalities.hpp"
#include "mdc/constants.hpp"
#include "mdc/random_fields.hpp"

#include <doctest.h>

#include <cmath>

using namespace mdc;

TEST_CASE("constants themselves") {
    CHECK(constants::gamma_kato == doctest::Approx(1.5707963).epsilon(1e-7));
    CHECK(constants::gamma_tix == doctest::Approx(1.103708).epsilon(1e-6));
    CHECK(constants::gamma_tix < constants::gamma_kato); // projector improves the constant
    CHECK(1.0 - 8.0 * constants::gamma_tix / 137.036 == doctest::Approx(0.93557).epsilon(1e-5));
}

TEST_CASE("battery on a small grid: zero violations") {
    SpectralGrid g(8, 12.0);
    InequalitySuite suite(g);
    auto reports = suite.run_all(60, 7);
    for (const auto& r : reports) {
        CAPTURE(r.name);
        CHECK(r.violations == 0);
    }
    // determinism: identical seeds reproduce identical worst ratios
    auto again = suite.run_all(60, 7);
    for (std::size_t i = 0; i < reports.size(); ++i)
        CHECK(reports[i].worst_ratio == again[i].worst_ratio);
    auto different = suite.check_kato(60, 12345);
    CHECK(different.worst_ratio != doctest::Approx(reports[1].worst_ratio).epsilon(1e-12));
}

TEST_CASE("hardy: near-extremal concentrated field stays below the constant") {
    SpectralGrid g(16, 16.0);
    InequalitySuite suite(g);
    // field concentrated at scale L/8 around the center
    SpinorField psi(g, 4, Rep::Position);
    const double s = g.box_length() / 8.0;
    for (std::size_t i = 0; i < g.npts(); ++i) {
        const double r = g.radius_from_center(i);
        psi(i, 0) = cxd{std::exp(-r * r / (2.0 * s * s)), 0.0};
    }
    normalize_l2(psi);
    RealField w2 = [&] {
        RealField v = nuclear_potential(1, inverse_square_kernel(g));
        for (auto& x : v.values) x = -x;
        return v;
    }();
    double lhs = 0.0;
    for (std::size_t i = 0; i < g.npts(); ++i) lhs += std::norm(psi(i, 0)) * w2.values[i];
    lhs *= g.cell_volume();
    const double rhs = 4.0 * norm2_grad(psi);
    CHECK(lhs / rhs <= 1.0 + 1e-6);
    CHECK(lhs / rhs > 0.2); // genuinely probes the constant
}

TEST_CASE("kato: middle bound is sharper than the H^{1/2} bound") {
    // the truncated-kernel potential is pointwise >= 0, so the sign of the
    // ratio ordering is meaningful
    SpectralGrid g(8, 12.0);
    SpinorField psi = random_field(g, 4, 42);
    SpinorField pos = transform(psi, Rep::Position);
    RealField w1 = [&] {
        RealField v = nuclear_potential(1, nuclear_kernel(g));
        for (auto& x : v.values) x = -x;
        return v;
    }();
    double lhs = 0.0;
    for (std::size_t i = 0; i < g.npts(); ++i) {
        double rho = 0.0;
        for (int c = 0; c < 4; ++c) rho += std::norm(pos(i, c));
        lhs += rho * w1.values[i];
    }
    lhs *= g.cell_volume();
    // |(-Delta)^{1/4} psi|^2 = sum |p| |psihat|^2
    SpinorField mom = transform(psi, Rep::Momentum);
    double quarter = 0.0;
    for (std::size_t i = 0; i < g.npts(); ++i) {
        const double ap = std::sqrt(g.p2()[i]);
        for (int c = 0; c < 4; ++c) quarter += ap * std::norm(mom(i, c));
    }
    quarter *= g.mode_volume();
    const double ratio_mid = lhs / (constants::gamma_kato * quarter);
    const double ratio_full = lhs / (constants::gamma_kato * norm2_h_half(psi));
    CHECK(ratio_mid >= ratio_full);
    CHECK(ratio_mid <= 1.0 + 1e-6);
}

TEST_CASE("convolution bound with a grid delta reproduces the kato integrand exactly") {
    SpectralGrid g(8, 12.0);
    SpectralKernel pair = coulomb_kernel(g);
    SpinorField psi = transform(random_field(g, 4, 77), Rep::Position);
    RealField rho_psi = density(psi);
    RealField delta(g);
    delta.values[g.center_index()] = 1.0 / g.cell_volume();
    const double via_pair = pair_energy(delta, rho_psi, pair);
    RealField w1 = [&] {
        RealField v = nuclear_potential(1, pair);
        for (auto& x : v.values) x = -x;
        return v;
    }();
    double direct = 0.0;
    for (std::size_t i = 0; i < g.npts(); ++i) direct += rho_psi.values[i] * w1.values[i];
    direct *= g.cell_volume();
    CHECK(via_pair == doctest::Approx(direct).epsilon(1e-11));
}

TEST_CASE("apm expansion bounds") {
    SpectralGrid g(8, 12.0);
    InequalitySuite suite(g);
    auto r = suite.check_apm_expansion();
    CHECK(r.violations == 0);
    CHECK(r.worst_ratio <= 1.0 + 1e-12);

    // eps = 0 is exact: a_+ = 1, a_- = 0
    const double lam = 1.0;
    CHECK(std::sqrt(0.5 * (1.0 + 1.0 / lam)) == 1.0);
    CHECK(std::sqrt(0.5 * (1.0 - 1.0 / lam)) == 0.0);

    // eps = 0.01 at |p| = 1: |a_-| <= 0.01
    const double l2 = std::sqrt(1.0 + 1e-4);
    CHECK(std::sqrt(0.5 * (1.0 - 1.0 / l2)) <= 0.01);
}

TEST_CASE("coupling constant table") {
    auto c124 = InequalitySuite::check_coupling_constants(124, 1.0 / 137.036);
    CHECK(c124.z_alpha_gamma_t == doctest::Approx(0.9987).epsilon(1e-3));
    CHECK(c124.z_admissible);

    auto c123 = InequalitySuite::check_coupling_constants(123, 1.0 / 137.036);
    CHECK(c123.z1_alpha_gamma_t == doctest::Approx(0.9987).epsilon(1e-3));
    CHECK(c123.z1_admissible);

    auto c4 = InequalitySuite::check_coupling_constants(4, 1.0 / 137.036);
    CHECK_FALSE(c4.in_existence_range);

    auto c200 = InequalitySuite::check_coupling_constants(200, 1.0 / 137.036);
    CHECK_FALSE(c200.z1_admissible);
    CHECK(c200.z1_alpha_gamma_t == doctest::Approx(1.619).epsilon(1e-3));
}

TEST_CASE("positivity check includes the N = 8 oracle cross-check") {
    SpectralGrid g(8, 10.0);
    InequalitySuite suite(g);
    auto r = suite.check_positivity(5, 3);
    CHECK(r.violations == 0);
    CHECK(r.worst_ratio <= 1.0 + 1e-10); // D_J never exceeds D_rho
}
