#pragma once

#include <complex>
#include <cstddef>

// Scalar reference kernels plus AVX2 variants selected at runtime. The dispatch
// honors the SPDC_FORCE_SCALAR=1 environment variable; both variants are
// equivalence-tested against each other.
namespace spdc::kernels {

using cplx = std::complex<double>;

// True when the AVX2 variants are selected by the dispatcher.
bool avx2_active();

// sum |x_k|^2 over count complex entries.
double norm_sq(const cplx* x, std::size_t count);

// Purity of a row-major n x n matrix F with unit Frobenius norm:
//   p = sum_{ij} |(F F^H)_{ij}|^2
// computed from conjugate row dot products without materializing F F^H.
double purity_gram(const cplx* f, int n);

// Phased quadratic form Re( a^H M a ) with a_k = exp(i w_k tau) for a row-major
// n x n complex matrix M. Used for coincidence traces.
double phased_quadratic_form(const cplx* m, const double* w, int n, double tau);

// --- concrete variants (exposed for equivalence tests) ---
double norm_sq_scalar(const cplx* x, std::size_t count);
double norm_sq_avx2(const cplx* x, std::size_t count);
double purity_gram_scalar(const cplx* f, int n);
double purity_gram_avx2(const cplx* f, int n);
double phased_quadratic_form_scalar(const cplx* m, const double* w, int n, double tau);
double phased_quadratic_form_avx2(const cplx* m, const double* w, int n, double tau);

}  // namespace spdc::kernels
