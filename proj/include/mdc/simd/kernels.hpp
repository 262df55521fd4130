#pragma once

#include <complex>
#include <cstddef>

// Data-parallel inner loops shared by the spectral modules.  Every kernel has
// a scalar reference implementation and (on x86-64) an AVX2+FMA variant; the
// variant actually used is picked once at runtime from CPUID, overridable via
// the MDC_SIMD environment variable ("scalar" or "avx2").  The two backends
// are equivalence-tested against each other in tests/test_simd_kernels.cpp.
//
// Complex data is interleaved (re,im) and multi-component fields are stored
// point-major: value of component c at grid point i lives at z[i*ncomp + c].

namespace mdc::simd {

using cxd = std::complex<double>;

struct Kernels {
    // z[i*ncomp + c] *= m[i]
    void (*apply_real_multiplier)(cxd* z, const double* m, std::size_t npts, int ncomp);

    // sum_i m[i] * sum_c conj(f[i,c]) g[i,c]
    cxd (*weighted_dot)(const cxd* f, const cxd* g, const double* m, std::size_t npts, int ncomp);

    // sum_i m[i] * sum_c |f[i,c]|^2
    double (*weighted_norm2)(const cxd* f, const double* m, std::size_t npts, int ncomp);

    // sum_k conj(f[k]) g[k]   (flat arrays)
    cxd (*dot)(const cxd* f, const cxd* g, std::size_t n);

    // sum_k |f[k]|^2
    double (*norm2)(const cxd* f, std::size_t n);

    // y[k] += a * x[k]
    void (*axpy)(cxd a, const cxd* x, cxd* y, std::size_t n);

    // 4-spinor charge density and current:
    //   rho[i] = sum_c |psi[i,c]|^2
    //   j1[i]  = 2 Re(conj(psi1) psi4 + conj(psi2) psi3)
    //   j2[i]  = 2 Im(conj(psi1) psi4) - 2 Im(conj(psi2) psi3)
    //   j3[i]  = 2 Re(conj(psi1) psi3) - 2 Re(conj(psi2) psi4)
    void (*density_current)(const cxd* psi, double* rho, double* j1, double* j2, double* j3,
                            std::size_t npts);

    // Pointwise matrix potential acting on a 4-spinor:
    //   out = s(y) psi - sum_k A_k(y) alpha_k psi
    // with s real scalar and A a real 3-vector field; a1/a2/a3 may all be
    // nullptr, in which case only the scalar part is applied.
    void (*apply_potential)(cxd* out, const cxd* psi, const double* s, const double* a1,
                            const double* a2, const double* a3, std::size_t npts);
};

// Backend selected at startup (CPUID + MDC_SIMD override).
const Kernels& active();

// Reference backend, always available.
const Kernels& scalar_kernels();

// AVX2 backend; only valid to call if avx2_available().
const Kernels& avx2_kernels();

bool avx2_available();
const char* active_name();

} // namespace mdc::simd
