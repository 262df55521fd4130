#include "mdc/simd/kernels.hpp"

#include <doctest.h>

#include <random>
#include <vector>

using mdc::simd::cxd;

namespace {

std::vector<cxd> random_complex(std::size_t n, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> g(0.0, 1.0);
    std::vector<cxd> v(n);
    for (auto& z : v) z = cxd{g(rng), g(rng)};
    return v;
}

std::vector<double> random_real(std::size_t n, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> g(0.0, 1.0);
    std::vector<double> v(n);
    for (auto& x : v) x = g(rng);
    return v;
}

bool close(cxd a, cxd b, double tol) { return std::abs(a - b) <= tol * (1.0 + std::abs(a)); }

} // namespace

TEST_CASE("scalar and avx2 backends agree on every kernel") {
    if (!mdc::simd::avx2_available()) {
        MESSAGE("avx2 not available on this machine; dispatch test skipped");
        return;
    }
    const auto& s = mdc::simd::scalar_kernels();
    const auto& v = mdc::simd::avx2_kernels();
    const double tol = 1e-13;

    for (std::size_t npts : {1u, 2u, 3u, 7u, 64u, 1001u}) {
        for (int ncomp : {1, 2, 4}) {
            const std::size_t n = npts * ncomp;
            auto f = random_complex(n, 5 * npts + ncomp);
            auto g = random_complex(n, 7 * npts + ncomp);
            auto m = random_real(npts, 11 * npts + ncomp);

            // apply_real_multiplier
            auto zs = f, zv = f;
            s.apply_real_multiplier(zs.data(), m.data(), npts, ncomp);
            v.apply_real_multiplier(zv.data(), m.data(), npts, ncomp);
            for (std::size_t k = 0; k < n; ++k) CHECK(close(zs[k], zv[k], tol));

            // weighted_dot / weighted_norm2
            CHECK(close(s.weighted_dot(f.data(), g.data(), m.data(), npts, ncomp),
                        v.weighted_dot(f.data(), g.data(), m.data(), npts, ncomp), tol));
            CHECK(s.weighted_norm2(f.data(), m.data(), npts, ncomp) ==
                  doctest::Approx(v.weighted_norm2(f.data(), m.data(), npts, ncomp))
                      .epsilon(tol));

            // dot / norm2 / axpy over the flat arrays
            CHECK(close(s.dot(f.data(), g.data(), n), v.dot(f.data(), g.data(), n), tol));
            CHECK(s.norm2(f.data(), n) == doctest::Approx(v.norm2(f.data(), n)).epsilon(tol));
            auto ys = g, yv = g;
            const cxd a{0.3, -1.7};
            s.axpy(a, f.data(), ys.data(), n);
            v.axpy(a, f.data(), yv.data(), n);
            for (std::size_t k = 0; k < n; ++k) CHECK(close(ys[k], yv[k], tol));
        }

        // density_current and apply_potential act on 4-spinors
        auto psi = random_complex(4 * npts, 31 * npts);
        std::vector<double> rs(npts), r1(npts), r2(npts), r3(npts);
        std::vector<double> vs(npts), v1(npts), v2(npts), v3(npts);
        s.density_current(psi.data(), rs.data(), r1.data(), r2.data(), r3.data(), npts);
        v.density_current(psi.data(), vs.data(), v1.data(), v2.data(), v3.data(), npts);
        for (std::size_t k = 0; k < npts; ++k) {
            CHECK(rs[k] == doctest::Approx(vs[k]).epsilon(tol));
            CHECK(r1[k] == doctest::Approx(v1[k]).epsilon(tol));
            CHECK(r2[k] == doctest::Approx(v2[k]).epsilon(tol));
            CHECK(r3[k] == doctest::Approx(v3[k]).epsilon(tol));
        }

        auto sf = random_real(npts, 41 * npts);
        auto a1 = random_real(npts, 43 * npts);
        auto a2 = random_real(npts, 47 * npts);
        auto a3 = random_real(npts, 53 * npts);
        std::vector<cxd> os(4 * npts), ov(4 * npts);
        s.apply_potential(os.data(), psi.data(), sf.data(), a1.data(), a2.data(), a3.data(), npts);
        v.apply_potential(ov.data(), psi.data(), sf.data(), a1.data(), a2.data(), a3.data(), npts);
        for (std::size_t k = 0; k < 4 * npts; ++k) CHECK(close(os[k], ov[k], tol));
        s.apply_potential(os.data(), psi.data(), sf.data(), nullptr, nullptr, nullptr, npts);
        v.apply_potential(ov.data(), psi.data(), sf.data(), nullptr, nullptr, nullptr, npts);
        for (std::size_t k = 0; k < 4 * npts; ++k) CHECK(close(os[k], ov[k], tol));
    }
}

TEST_CASE("density_current matches the componentwise definition") {
    const auto& k = mdc::simd::active();
    auto psi = random_complex(4 * 17, 99);
    std::vector<double> rho(17), j1(17), j2(17), j3(17);
    k.density_current(psi.data(), rho.data(), j1.data(), j2.data(), j3.data(), 17);
    for (std::size_t i = 0; i < 17; ++i) {
        const cxd c1 = psi[4 * i], c2 = psi[4 * i + 1], c3 = psi[4 * i + 2], c4 = psi[4 * i + 3];
        const double rr = std::norm(c1) + std::norm(c2) + std::norm(c3) + std::norm(c4);
        CHECK(rho[i] == doctest::Approx(rr).epsilon(1e-14));
        // |J| <= rho pointwise (Cauchy-Schwarz in C^4)
        const double jn = std::sqrt(j1[i] * j1[i] + j2[i] * j2[i] + j3[i] * j3[i]);
        CHECK(jn <= rho[i] * (1.0 + 1e-12));
    }
}
