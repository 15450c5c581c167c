#include <cmath>
#include <vector>

#include "spdc/kernels.hpp"

namespace spdc::kernels {

double norm_sq_scalar(const cplx* x, std::size_t count) {
    double acc = 0.0;
    for (std::size_t k = 0; k < count; ++k)
        acc += x[k].real() * x[k].real() + x[k].imag() * x[k].imag();
    return acc;
}

namespace {

// dot = sum_k a_k * conj(b_k) for length-n rows.
inline cplx row_dot_conj(const cplx* a, const cplx* b, int n) {
    double re = 0.0, im = 0.0;
    for (int k = 0; k < n; ++k) {
        const double ar = a[k].real(), ai = a[k].imag();
        const double br = b[k].real(), bi = b[k].imag();
        re += ar * br + ai * bi;
        im += ai * br - ar * bi;
    }
    return {re, im};
}

}  // namespace

double purity_gram_scalar(const cplx* f, int n) {
    // p = sum_i |d_ii|^2 + 2 sum_{i<j} |d_ij|^2 with d_ij = row_i . conj(row_j);
    // the Gram matrix is Hermitian, so only the upper triangle is computed.
    double acc = 0.0;
    for (int i = 0; i < n; ++i) {
        const cplx* ri = f + static_cast<std::size_t>(i) * n;
        const cplx dii = row_dot_conj(ri, ri, n);
        acc += dii.real() * dii.real() + dii.imag() * dii.imag();
        for (int j = i + 1; j < n; ++j) {
            const cplx d = row_dot_conj(ri, f + static_cast<std::size_t>(j) * n, n);
            acc += 2.0 * (d.real() * d.real() + d.imag() * d.imag());
        }
    }
    return acc;
}

double phased_quadratic_form_scalar(const cplx* m, const double* w, int n, double tau) {
    // Re( a^H M a ), a_k = exp(i w_k tau). Row-wise: v_i = sum_j M_ij a_j, then
    // accumulate Re( conj(a_i) v_i ).
    double acc = 0.0;
    std::vector<double> cr(n), ci(n);
    for (int k = 0; k < n; ++k) {
        cr[k] = std::cos(w[k] * tau);
        ci[k] = std::sin(w[k] * tau);
    }
    for (int i = 0; i < n; ++i) {
        const cplx* row = m + static_cast<std::size_t>(i) * n;
        double vr = 0.0, vi = 0.0;
        for (int j = 0; j < n; ++j) {
            const double mr = row[j].real(), mi = row[j].imag();
            vr += mr * cr[j] - mi * ci[j];
            vi += mr * ci[j] + mi * cr[j];
        }
        // conj(a_i) * v = (cr - i ci)(vr + i vi); real part:
        acc += cr[i] * vr + ci[i] * vi;
    }
    return acc;
}

}  // namespace spdc::kernels
