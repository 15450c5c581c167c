#include "spdc/kernels.hpp"

#include <cstdlib>

namespace spdc::kernels {
namespace {

bool detect_avx2() {
    const char* force = std::getenv("SPDC_FORCE_SCALAR");
    if (force && force[0] == '1') return false;
#if defined(__x86_64__) || defined(__i386__)
    return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
    return false;
#endif
}

const bool g_avx2 = detect_avx2();

}  // namespace

bool avx2_active() { return g_avx2; }

double norm_sq(const cplx* x, std::size_t count) {
    return g_avx2 ? norm_sq_avx2(x, count) : norm_sq_scalar(x, count);
}

double purity_gram(const cplx* f, int n) {
    return g_avx2 ? purity_gram_avx2(f, n) : purity_gram_scalar(f, n);
}

double phased_quadratic_form(const cplx* m, const double* w, int n, double tau) {
    return g_avx2 ? phased_quadratic_form_avx2(m, w, n, tau)
                  : phased_quadratic_form_scalar(m, w, n, tau);
}

}  // namespace spdc::kernels
