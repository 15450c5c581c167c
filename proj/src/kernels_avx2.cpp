// AVX2/FMA variants of the hot kernels. Compiled with -mavx2 -mfma; only invoked
// after a runtime CPU check (see kernels.cpp).
#include <immintrin.h>

#include <cmath>
#include <vector>

#include "spdc/kernels.hpp"

namespace spdc::kernels {
namespace {

inline double hsum256(__m256d v) {
    __m128d lo = _mm256_castpd256_pd128(v);
    __m128d hi = _mm256_extractf128_pd(v, 1);
    lo = _mm_add_pd(lo, hi);
    return _mm_cvtsd_f64(_mm_add_sd(lo, _mm_unpackhi_pd(lo, lo)));
}

// sum_k a_k * conj(b_k) over n interleaved complex doubles.
inline void row_dot_conj_avx2(const double* a, const double* b, int n, double& re,
                              double& im) {
    __m256d acc_re = _mm256_setzero_pd();  // lanes: ar*br, ai*bi, ...
    __m256d acc_im = _mm256_setzero_pd();  // lanes: -ar*bi, ai*br, ...
    const __m256d sign = _mm256_set_pd(1.0, -1.0, 1.0, -1.0);
    int k = 0;
    for (; k + 2 <= n; k += 2) {
        const __m256d va = _mm256_loadu_pd(a + 2 * k);   // ar0 ai0 ar1 ai1
        const __m256d vb = _mm256_loadu_pd(b + 2 * k);   // br0 bi0 br1 bi1
        acc_re = _mm256_fmadd_pd(va, vb, acc_re);
        const __m256d vbs = _mm256_permute_pd(vb, 0x5);  // bi0 br0 bi1 br1
        acc_im = _mm256_fmadd_pd(_mm256_mul_pd(va, sign), vbs, acc_im);
    }
    re = hsum256(acc_re);
    im = hsum256(acc_im);
    for (; k < n; ++k) {
        const double ar = a[2 * k], ai = a[2 * k + 1];
        const double br = b[2 * k], bi = b[2 * k + 1];
        re += ar * br + ai * bi;
        im += ai * br - ar * bi;
    }
}

}  // namespace

double norm_sq_avx2(const cplx* x, std::size_t count) {
    const double* d = reinterpret_cast<const double*>(x);
    const std::size_t total = 2 * count;
    __m256d acc = _mm256_setzero_pd();
    std::size_t k = 0;
    for (; k + 4 <= total; k += 4) {
        const __m256d v = _mm256_loadu_pd(d + k);
        acc = _mm256_fmadd_pd(v, v, acc);
    }
    double s = hsum256(acc);
    for (; k < total; ++k) s += d[k] * d[k];
    return s;
}

double purity_gram_avx2(const cplx* f, int n) {
    const double* base = reinterpret_cast<const double*>(f);
    double acc = 0.0;
    for (int i = 0; i < n; ++i) {
        const double* ri = base + 2 * static_cast<std::size_t>(i) * n;
        double re, im;
        row_dot_conj_avx2(ri, ri, n, re, im);
        acc += re * re + im * im;
        for (int j = i + 1; j < n; ++j) {
            const double* rj = base + 2 * static_cast<std::size_t>(j) * n;
            row_dot_conj_avx2(ri, rj, n, re, im);
            acc += 2.0 * (re * re + im * im);
        }
    }
    return acc;
}

double phased_quadratic_form_avx2(const cplx* m, const double* w, int n, double tau) {
    std::vector<double> phase(2 * static_cast<std::size_t>(n));
    for (int k = 0; k < n; ++k) {
        phase[2 * k] = std::cos(w[k] * tau);
        phase[2 * k + 1] = std::sin(w[k] * tau);
    }
    const double* a = phase.data();
    const double* base = reinterpret_cast<const double*>(m);
    // Lanes low->high: (-1, 1, -1, 1); negates the real slots of a complex pair.
    const __m256d negate_real = _mm256_set_pd(1.0, -1.0, 1.0, -1.0);
    double acc = 0.0;
    for (int i = 0; i < n; ++i) {
        const double* row = base + 2 * static_cast<std::size_t>(i) * n;
        // v_i = sum_j M_ij a_j (complex multiply, no conjugation):
        //   re = mr*cr - mi*ci; lanes of (vm*negate_real)*va = (-mr*cr, mi*ci),
        //   so re = -hsum. im = mr*ci + mi*cr = hsum of vm * swap(va).
        __m256d accr = _mm256_setzero_pd();
        __m256d acci = _mm256_setzero_pd();
        int j = 0;
        for (; j + 2 <= n; j += 2) {
            const __m256d vm = _mm256_loadu_pd(row + 2 * j);  // mr0 mi0 mr1 mi1
            const __m256d va = _mm256_loadu_pd(a + 2 * j);    // cr0 ci0 cr1 ci1
            accr = _mm256_fmadd_pd(_mm256_mul_pd(vm, negate_real), va, accr);
            acci = _mm256_fmadd_pd(vm, _mm256_permute_pd(va, 0x5), acci);
        }
        double vr = -hsum256(accr);
        double vi = hsum256(acci);
        for (; j < n; ++j) {
            const double mr = row[2 * j], mi = row[2 * j + 1];
            const double cr = a[2 * j], ci = a[2 * j + 1];
            vr += mr * cr - mi * ci;
            vi += mr * ci + mi * cr;
        }
        // Re( conj(a_i) * v_i )
        acc += a[2 * i] * vr + a[2 * i + 1] * vi;
    }
    return acc;
}

}  // namespace spdc::kernels
