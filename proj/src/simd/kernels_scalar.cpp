#include "mdc/simd/kernels.hpp"

namespace mdc::simd {
namespace {

void apply_real_multiplier_scalar(cxd* z, const double* m, std::size_t npts, int ncomp) {
    for (std::size_t i = 0; i < npts; ++i) {
        const double mi = m[i];
        for (int c = 0; c < ncomp; ++c) z[i * ncomp + c] *= mi;
    }
}

cxd weighted_dot_scalar(const cxd* f, const cxd* g, const double* m, std::size_t npts, int ncomp) {
    double re = 0.0, im = 0.0;
    for (std::size_t i = 0; i < npts; ++i) {
        double ar = 0.0, ai = 0.0;
        for (int c = 0; c < ncomp; ++c) {
            const cxd a = f[i * ncomp + c];
            const cxd b = g[i * ncomp + c];
            ar += a.real() * b.real() + a.imag() * b.imag();
            ai += a.real() * b.imag() - a.imag() * b.real();
        }
        re += m[i] * ar;
        im += m[i] * ai;
    }
    return {re, im};
}

double weighted_norm2_scalar(const cxd* f, const double* m, std::size_t npts, int ncomp) {
    double s = 0.0;
    for (std::size_t i = 0; i < npts; ++i) {
        double a = 0.0;
        for (int c = 0; c < ncomp; ++c) a += std::norm(f[i * ncomp + c]);
        s += m[i] * a;
    }
    return s;
}

cxd dot_scalar(const cxd* f, const cxd* g, std::size_t n) {
    double re = 0.0, im = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
        re += f[k].real() * g[k].real() + f[k].imag() * g[k].imag();
        im += f[k].real() * g[k].imag() - f[k].imag() * g[k].real();
    }
    return {re, im};
}

double norm2_scalar(const cxd* f, std::size_t n) {
    double s = 0.0;
    for (std::size_t k = 0; k < n; ++k) s += std::norm(f[k]);
    return s;
}

void axpy_scalar(cxd a, const cxd* x, cxd* y, std::size_t n) {
    for (std::size_t k = 0; k < n; ++k) y[k] += a * x[k];
}

void density_current_scalar(const cxd* psi, double* rho, double* j1, double* j2, double* j3,
                            std::size_t npts) {
    for (std::size_t i = 0; i < npts; ++i) {
        const cxd c1 = psi[4 * i + 0], c2 = psi[4 * i + 1];
        const cxd c3 = psi[4 * i + 2], c4 = psi[4 * i + 3];
        rho[i] = std::norm(c1) + std::norm(c2) + std::norm(c3) + std::norm(c4);
        const cxd t14 = std::conj(c1) * c4;
        const cxd t23 = std::conj(c2) * c3;
        const cxd t13 = std::conj(c1) * c3;
        const cxd t24 = std::conj(c2) * c4;
        j1[i] = 2.0 * (t14.real() + t23.real());
        j2[i] = 2.0 * (t14.imag() - t23.imag());
        j3[i] = 2.0 * (t13.real() - t24.real());
    }
}

void apply_potential_scalar(cxd* out, const cxd* psi, const double* s, const double* a1,
                            const double* a2, const double* a3, std::size_t npts) {
    const bool has_vec = (a1 != nullptr);
    for (std::size_t i = 0; i < npts; ++i) {
        const cxd u1 = psi[4 * i + 0], u2 = psi[4 * i + 1];
        const cxd l1 = psi[4 * i + 2], l2 = psi[4 * i + 3];
        const double si = s[i];
        if (!has_vec) {
            out[4 * i + 0] = si * u1;
            out[4 * i + 1] = si * u2;
            out[4 * i + 2] = si * l1;
            out[4 * i + 3] = si * l2;
            continue;
        }
        // M = A.sigma = [[A3, A1 - i A2], [A1 + i A2, -A3]]
        const double A1 = a1[i], A2 = a2[i], A3 = a3[i];
        const cxd moff(A1, -A2);
        const cxd moffc(A1, A2);
        const cxd Ml1 = A3 * l1 + moff * l2;
        const cxd Ml2 = moffc * l1 - A3 * l2;
        const cxd Mu1 = A3 * u1 + moff * u2;
        const cxd Mu2 = moffc * u1 - A3 * u2;
        out[4 * i + 0] = si * u1 - Ml1;
        out[4 * i + 1] = si * u2 - Ml2;
        out[4 * i + 2] = si * l1 - Mu1;
        out[4 * i + 3] = si * l2 - Mu2;
    }
}

} // namespace

const Kernels& scalar_kernels() {
    static const Kernels k{apply_real_multiplier_scalar,
                           weighted_dot_scalar,
                           weighted_norm2_scalar,
                           dot_scalar,
                           norm2_scalar,
                           axpy_scalar,
                           density_current_scalar,
                           apply_potential_scalar};
    return k;
}

} // namespace mdc::simd
