// AVX2+FMA variants of the data-parallel kernels.  Compiled with -mavx2 -mfma
// on x86-64; the dispatcher only hands these out when CPUID reports support.
// Complex doubles are interleaved, so one __m256d holds two complex values.

#include "mdc/simd/kernels.hpp"

#if defined(__x86_64__) || defined(__i386__)

#include <immintrin.h>

namespace mdc::simd {
namespace {

inline double hsum(__m256d v) {
    __m128d lo = _mm256_castpd256_pd128(v);
    __m128d hi = _mm256_extractf128_pd(v, 1);
    __m128d s = _mm_add_pd(lo, hi);
    return _mm_cvtsd_f64(s) + _mm_cvtsd_f64(_mm_unpackhi_pd(s, s));
}

// [a b c d] -> a + b - c - d
inline double hsum_ppmm(__m256d v) {
    const __m256d sign = _mm256_set_pd(-0.0, -0.0, 0.0, 0.0);
    return hsum(_mm256_xor_pd(v, sign));
}

void apply_real_multiplier_avx2(cxd* z, const double* m, std::size_t npts, int ncomp) {
    double* zd = reinterpret_cast<double*>(z);
    if (ncomp == 4) {
        for (std::size_t i = 0; i < npts; ++i) {
            const __m256d mi = _mm256_broadcast_sd(m + i);
            double* p = zd + 8 * i;
            _mm256_storeu_pd(p, _mm256_mul_pd(_mm256_loadu_pd(p), mi));
            _mm256_storeu_pd(p + 4, _mm256_mul_pd(_mm256_loadu_pd(p + 4), mi));
        }
    } else if (ncomp == 2) {
        for (std::size_t i = 0; i < npts; ++i) {
            const __m256d mi = _mm256_broadcast_sd(m + i);
            double* p = zd + 4 * i;
            _mm256_storeu_pd(p, _mm256_mul_pd(_mm256_loadu_pd(p), mi));
        }
    } else if (ncomp == 1) {
        std::size_t i = 0;
        for (; i + 2 <= npts; i += 2) {
            __m256d mm = _mm256_castpd128_pd256(_mm_loadu_pd(m + i));
            __m256d md = _mm256_permute4x64_pd(mm, 0x50); // [m0 m0 m1 m1]
            double* p = zd + 2 * i;
            _mm256_storeu_pd(p, _mm256_mul_pd(_mm256_loadu_pd(p), md));
        }
        for (; i < npts; ++i) z[i] *= m[i];
    } else {
        scalar_kernels().apply_real_multiplier(z, m, npts, ncomp);
    }
}

// Accumulates sum over one __m256d pair-block of conj(f)*g into (acc_re, acc_im).
inline void conj_dot_block(__m256d vf, __m256d vg, __m256d& acc_re, __m256d& acc_im) {
    acc_re = _mm256_fmadd_pd(vf, vg, acc_re);
    const __m256d sign = _mm256_set_pd(-0.0, 0.0, -0.0, 0.0); // negate imag lanes of f
    __m256d vfs = _mm256_xor_pd(vf, sign);
    __m256d vgs = _mm256_permute_pd(vg, 0x5); // swap re/im within each complex
    acc_im = _mm256_fmadd_pd(vfs, vgs, acc_im);
}

cxd weighted_dot_avx2(const cxd* f, const cxd* g, const double* m, std::size_t npts, int ncomp) {
    const double* fd = reinterpret_cast<const double*>(f);
    const double* gd = reinterpret_cast<const double*>(g);
    __m256d acc_re = _mm256_setzero_pd();
    __m256d acc_im = _mm256_setzero_pd();
    if (ncomp == 4) {
        for (std::size_t i = 0; i < npts; ++i) {
            const __m256d mi = _mm256_broadcast_sd(m + i);
            const double* pf = fd + 8 * i;
            const double* pg = gd + 8 * i;
            conj_dot_block(_mm256_mul_pd(_mm256_loadu_pd(pf), mi), _mm256_loadu_pd(pg), acc_re,
                           acc_im);
            conj_dot_block(_mm256_mul_pd(_mm256_loadu_pd(pf + 4), mi), _mm256_loadu_pd(pg + 4),
                           acc_re, acc_im);
        }
        return {hsum(acc_re), hsum(acc_im)};
    }
    if (ncomp == 2) {
        for (std::size_t i = 0; i < npts; ++i) {
            const __m256d mi = _mm256_broadcast_sd(m + i);
            conj_dot_block(_mm256_mul_pd(_mm256_loadu_pd(fd + 4 * i), mi),
                           _mm256_loadu_pd(gd + 4 * i), acc_re, acc_im);
        }
        return {hsum(acc_re), hsum(acc_im)};
    }
    if (ncomp == 1) {
        std::size_t i = 0;
        for (; i + 2 <= npts; i += 2) {
            __m256d mm = _mm256_castpd128_pd256(_mm_loadu_pd(m + i));
            __m256d md = _mm256_permute4x64_pd(mm, 0x50);
            conj_dot_block(_mm256_mul_pd(_mm256_loadu_pd(fd + 2 * i), md),
                           _mm256_loadu_pd(gd + 2 * i), acc_re, acc_im);
        }
        cxd tail{0.0, 0.0};
        for (; i < npts; ++i) tail += m[i] * std::conj(f[i]) * g[i];
        return cxd{hsum(acc_re), hsum(acc_im)} + tail;
    }
    return scalar_kernels().weighted_dot(f, g, m, npts, ncomp);
}

double weighted_norm2_avx2(const cxd* f, const double* m, std::size_t npts, int ncomp) {
    const double* fd = reinterpret_cast<const double*>(f);
    __m256d acc = _mm256_setzero_pd();
    if (ncomp == 4) {
        for (std::size_t i = 0; i < npts; ++i) {
            const __m256d mi = _mm256_broadcast_sd(m + i);
            __m256d a = _mm256_loadu_pd(fd + 8 * i);
            __m256d b = _mm256_loadu_pd(fd + 8 * i + 4);
            acc = _mm256_fmadd_pd(_mm256_mul_pd(a, mi), a, acc);
            acc = _mm256_fmadd_pd(_mm256_mul_pd(b, mi), b, acc);
        }
        return hsum(acc);
    }
    if (ncomp == 2) {
        for (std::size_t i = 0; i < npts; ++i) {
            const __m256d mi = _mm256_broadcast_sd(m + i);
            __m256d a = _mm256_loadu_pd(fd + 4 * i);
            acc = _mm256_fmadd_pd(_mm256_mul_pd(a, mi), a, acc);
        }
        return hsum(acc);
    }
    if (ncomp == 1) {
        std::size_t i = 0;
        for (; i + 2 <= npts; i += 2) {
            __m256d mm = _mm256_castpd128_pd256(_mm_loadu_pd(m + i));
            __m256d md = _mm256_permute4x64_pd(mm, 0x50);
            __m256d a = _mm256_loadu_pd(fd + 2 * i);
            acc = _mm256_fmadd_pd(_mm256_mul_pd(a, md), a, acc);
        }
        double tail = 0.0;
        for (; i < npts; ++i) tail += m[i] * std::norm(f[i]);
        return hsum(acc) + tail;
    }
    return scalar_kernels().weighted_norm2(f, m, npts, ncomp);
}

cxd dot_avx2(const cxd* f, const cxd* g, std::size_t n) {
    const double* fd = reinterpret_cast<const double*>(f);
    const double* gd = reinterpret_cast<const double*>(g);
    __m256d acc_re = _mm256_setzero_pd();
    __m256d acc_im = _mm256_setzero_pd();
    std::size_t k = 0;
    for (; k + 2 <= n; k += 2)
        conj_dot_block(_mm256_loadu_pd(fd + 2 * k), _mm256_loadu_pd(gd + 2 * k), acc_re, acc_im);
    cxd tail{0.0, 0.0};
    for (; k < n; ++k) tail += std::conj(f[k]) * g[k];
    return cxd{hsum(acc_re), hsum(acc_im)} + tail;
}

double norm2_avx2(const cxd* f, std::size_t n) {
    const double* fd = reinterpret_cast<const double*>(f);
    __m256d acc = _mm256_setzero_pd();
    std::size_t k = 0;
    for (; k + 2 <= n; k += 2) {
        __m256d a = _mm256_loadu_pd(fd + 2 * k);
        acc = _mm256_fmadd_pd(a, a, acc);
    }
    double tail = 0.0;
    for (; k < n; ++k) tail += std::norm(f[k]);
    return hsum(acc) + tail;
}

void axpy_avx2(cxd a, const cxd* x, cxd* y, std::size_t n) {
    const double* xd = reinterpret_cast<const double*>(x);
    double* yd = reinterpret_cast<double*>(y);
    const __m256d ar = _mm256_set1_pd(a.real());
    const __m256d ai = _mm256_set_pd(a.imag(), -a.imag(), a.imag(), -a.imag());
    std::size_t k = 0;
    for (; k + 2 <= n; k += 2) {
        __m256d vx = _mm256_loadu_pd(xd + 2 * k);
        __m256d vxs = _mm256_permute_pd(vx, 0x5);
        __m256d vy = _mm256_loadu_pd(yd + 2 * k);
        vy = _mm256_fmadd_pd(ar, vx, vy);
        vy = _mm256_fmadd_pd(ai, vxs, vy);
        _mm256_storeu_pd(yd + 2 * k, vy);
    }
    for (; k < n; ++k) y[k] += a * x[k];
}

void density_current_avx2(const cxd* psi, double* rho, double* j1, double* j2, double* j3,
                          std::size_t npts) {
    const double* pd = reinterpret_cast<const double*>(psi);
    for (std::size_t i = 0; i < npts; ++i) {
        __m256d va = _mm256_loadu_pd(pd + 8 * i);     // c1, c2
        __m256d vb = _mm256_loadu_pd(pd + 8 * i + 4); // c3, c4
        rho[i] = hsum(_mm256_fmadd_pd(va, va, _mm256_mul_pd(vb, vb)));

        __m256d vb_sw = _mm256_permute4x64_pd(vb, 0x4E); // c4, c3
        // J1 = 2 (Re t14 + Re t23)
        j1[i] = 2.0 * hsum(_mm256_mul_pd(va, vb_sw));
        // J2 = 2 (Im t14 - Im t23)
        const __m256d sgn_im = _mm256_set_pd(-0.0, 0.0, -0.0, 0.0);
        __m256d vas = _mm256_xor_pd(va, sgn_im);          // [c1r -c1i c2r -c2i]
        __m256d vb_sw_p = _mm256_permute_pd(vb_sw, 0x5);  // [c4i c4r c3i c3r]
        j2[i] = 2.0 * hsum_ppmm(_mm256_mul_pd(vas, vb_sw_p));
        // J3 = 2 (Re t13 - Re t24)
        j3[i] = 2.0 * hsum_ppmm(_mm256_mul_pd(va, vb));
    }
}

void apply_potential_avx2(cxd* out, const cxd* psi, const double* s, const double* a1,
                          const double* a2, const double* a3, std::size_t npts) {
    const double* pd = reinterpret_cast<const double*>(psi);
    double* od = reinterpret_cast<double*>(out);
    const bool has_vec = (a1 != nullptr);
    const __m256d sgn_a3 = _mm256_set_pd(-0.0, -0.0, 0.0, 0.0); // [+ + - -]
    const __m256d sgn_a2 = _mm256_set_pd(0.0, -0.0, -0.0, 0.0); // [+ - - +]
    for (std::size_t i = 0; i < npts; ++i) {
        __m256d u = _mm256_loadu_pd(pd + 8 * i);
        __m256d l = _mm256_loadu_pd(pd + 8 * i + 4);
        const __m256d si = _mm256_broadcast_sd(s + i);
        if (!has_vec) {
            _mm256_storeu_pd(od + 8 * i, _mm256_mul_pd(si, u));
            _mm256_storeu_pd(od + 8 * i + 4, _mm256_mul_pd(si, l));
            continue;
        }
        const __m256d A1 = _mm256_broadcast_sd(a1 + i);
        const __m256d A2 = _mm256_broadcast_sd(a2 + i);
        const __m256d A3 = _mm256_broadcast_sd(a3 + i);
        // (A.sigma) v for a two-spinor block v = [v1, v2]:
        //   A3*[v1, -v2] + A1*[v2, v1] + A2*[ v2i, -v2r, -v1i, v1r ]
        auto asigma = [&](__m256d v) {
            __m256d sw = _mm256_permute4x64_pd(v, 0x4E); // [v2, v1]
            __m256d r = _mm256_mul_pd(A3, _mm256_xor_pd(v, sgn_a3));
            r = _mm256_fmadd_pd(A1, sw, r);
            __m256d swp = _mm256_xor_pd(_mm256_permute_pd(sw, 0x5), sgn_a2);
            return _mm256_fmadd_pd(A2, swp, r);
        };
        _mm256_storeu_pd(od + 8 * i, _mm256_fmsub_pd(si, u, asigma(l)));
        _mm256_storeu_pd(od + 8 * i + 4, _mm256_fmsub_pd(si, l, asigma(u)));
    }
}

} // namespace

const Kernels& avx2_kernels() {
    static const Kernels k{apply_real_multiplier_avx2,
                           weighted_dot_avx2,
                           weighted_norm2_avx2,
                           dot_avx2,
                           norm2_avx2,
                           axpy_avx2,
                           density_current_avx2,
                           apply_potential_avx2};
    return k;
}

} // namespace mdc::simd

#else

#include <cstdlib>

namespace mdc::simd {
const Kernels& avx2_kernels() { std::abort(); }
} // namespace mdc::simd

#endif
