#include "spdc/hom.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "spdc/kernels.hpp"

namespace spdc {
namespace {

bool axes_match(double c1, double s1, double c2, double s2) {
    const double scale = std::abs(c1) + std::abs(c2);
    return std::abs(c1 - c2) <= 1e-9 * scale && std::abs(s1 - s2) <= 1e-9 * scale;
}

std::vector<double> axis_frequencies(const FrequencyGrid& grid, Photon which) {
    std::vector<double> w(grid.n);
    for (int k = 0; k < grid.n; ++k)
        w[k] = which == Photon::Signal ? grid.signal_omega(k) : grid.idler_omega(k);
    return w;
}

HomTrace finalize(std::vector<double> tau, std::vector<double> p) {
    HomTrace t;
    t.tau_s = std::move(tau);
    t.p = std::move(p);
    t.baseline = 0.5;
    const double pmin = *std::min_element(t.p.begin(), t.p.end());
    t.visibility = (t.baseline - pmin) / t.baseline;
    return t;
}

}  // namespace

std::vector<cplx> reduced_state(const JointAmplitude& jsa, Photon keep) {
    const int n = jsa.grid.n;
    std::vector<cplx> rho(static_cast<std::size_t>(n) * n);
    double trace = 0.0;
    for (int i = 0; i < n; ++i) {
        for (int j = i; j < n; ++j) {
            double re = 0.0, im = 0.0;
            for (int k = 0; k < n; ++k) {
                // keep == Signal: rho(ws, ws') = sum_h f(ws, h) conj(f(ws', h))
                // keep == Idler : rho(wi, wi') = sum_h f(h, wi) conj(f(h, wi'))
                const cplx a = keep == Photon::Signal ? jsa.at(i, k) : jsa.at(k, i);
                const cplx b = keep == Photon::Signal ? jsa.at(j, k) : jsa.at(k, j);
                re += a.real() * b.real() + a.imag() * b.imag();
                im += a.imag() * b.real() - a.real() * b.imag();
            }
            rho[static_cast<std::size_t>(i) * n + j] = {re, im};
            rho[static_cast<std::size_t>(j) * n + i] = {re, -im};
            if (j == i) trace += re;
        }
    }
    const double inv = 1.0 / trace;
    for (auto& v : rho) v *= inv;
    return rho;
}

std::vector<double> delay_grid(double tau_max_s, int count) {
    std::vector<double> tau(count);
    for (int k = 0; k < count; ++k)
        tau[k] = tau_max_s * (2.0 * k / (count - 1) - 1.0);
    return tau;
}

HomTrace hom_heralded(const JointAmplitude& jsa1, const JointAmplitude& jsa2,
                      Photon herald, const std::vector<double>& tau_s) {
    const Photon interfering = herald == Photon::Idler ? Photon::Signal : Photon::Idler;
    const FrequencyGrid& g1 = jsa1.grid;
    const FrequencyGrid& g2 = jsa2.grid;
    if (g1.n != g2.n)
        throw ComputeError("joint amplitudes use different grid sizes; resample first");
    const bool match =
        interfering == Photon::Signal
            ? axes_match(g1.signal_center, g1.signal_span, g2.signal_center, g2.signal_span)
            : axes_match(g1.idler_center, g1.idler_span, g2.idler_center, g2.idler_span);
    if (!match)
        throw ComputeError("interfering-photon frequency axes differ between the sources");

    const int n = g1.n;
    const std::vector<cplx> rho1 = reduced_state(jsa1, interfering);
    const std::vector<cplx> rho2 = reduced_state(jsa2, interfering);
    std::vector<cplx> m(static_cast<std::size_t>(n) * n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            m[static_cast<std::size_t>(i) * n + j] =
                rho1[static_cast<std::size_t>(i) * n + j] *
                rho2[static_cast<std::size_t>(j) * n + i];

    const std::vector<double> w = axis_frequencies(g1, interfering);
    std::vector<double> p(tau_s.size());
    for (std::size_t t = 0; t < tau_s.size(); ++t) {
        // sum_ij M_ij e^{i (w_i - w_j) tau} == a^H M a with a_k = e^{-i w_k tau}
        const double overlap =
            kernels::phased_quadratic_form(m.data(), w.data(), n, -tau_s[t]);
        p[t] = 0.5 * (1.0 - overlap);
    }
    return finalize(tau_s, std::move(p));
}

HomTrace hom_signal_idler(const JointAmplitude& jsa, const std::vector<double>& tau_s) {
    const FrequencyGrid& g = jsa.grid;
    if (!axes_match(g.signal_center, g.signal_span, g.idler_center, g.idler_span))
        throw ComputeError("signal and idler axes differ; the configuration is not degenerate");
    const int n = g.n;
    std::vector<cplx> m(static_cast<std::size_t>(n) * n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            m[static_cast<std::size_t>(i) * n + j] =
                jsa.at(i, j) * std::conj(jsa.at(j, i));
    const std::vector<double> w = axis_frequencies(g, Photon::Signal);
    std::vector<double> p(tau_s.size());
    for (std::size_t t = 0; t < tau_s.size(); ++t) {
        const double overlap =
            kernels::phased_quadratic_form(m.data(), w.data(), n, -tau_s[t]);
        p[t] = 0.5 * (1.0 - overlap);
    }
    return finalize(tau_s, std::move(p));
}

namespace {

// rms angular-frequency bandwidth of one photon's marginal intensity.
double marginal_sigma(const JointAmplitude& jsa, Photon which) {
    const FrequencyGrid& g = jsa.grid;
    const int n = g.n;
    double w1 = 0.0, w2 = 0.0, mass = 0.0;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            const cplx v = jsa.at(i, j);
            const double p = v.real() * v.real() + v.imag() * v.imag();
            const double w = which == Photon::Signal ? g.signal_omega(i) : g.idler_omega(j);
            mass += p;
            w1 += p * w;
            w2 += p * w * w;
        }
    const double mean = w1 / mass;
    return std::sqrt(std::max(w2 / mass - mean * mean, 1e-30));
}

// A trace sampled from an n-point frequency grid is periodic in delay with
// period 2 pi / (grid spacing); windows must stay inside one period or the
// recurrence copies of the dip leak in.
template <typename TraceFn>
HomTrace widen_until_baseline(double sigma, double tau_recurrence, int count,
                              const TraceFn& make_trace) {
    const double tau_cap = 0.45 * tau_recurrence;
    double tau_max = std::min(5.0 * 2.355 / sigma, tau_cap);  // ~5x the dip FWHM
    for (int attempt = 0; attempt < 12; ++attempt) {
        HomTrace t = make_trace(delay_grid(tau_max, count));
        if (std::abs(t.p.front() - t.baseline) < 1e-3 &&
            std::abs(t.p.back() - t.baseline) < 1e-3)
            return t;
        if (tau_max >= tau_cap) break;
        tau_max = std::min(tau_max * 2.0, tau_cap);
    }
    throw ComputeError(
        "coincidence trace does not settle on its baseline within one grid "
        "recurrence period; refine the frequency grid");
}

}  // namespace

HomTrace hom_heralded_auto(const JointAmplitude& jsa1, const JointAmplitude& jsa2,
                           Photon herald, int count) {
    const Photon interfering = herald == Photon::Idler ? Photon::Signal : Photon::Idler;
    const FrequencyGrid& g = jsa1.grid;
    const double span =
        interfering == Photon::Signal ? g.signal_span : g.idler_span;
    const double tau_rec = 2.0 * std::numbers::pi * (g.n - 1) / span;
    return widen_until_baseline(marginal_sigma(jsa1, interfering), tau_rec, count,
                                [&](const std::vector<double>& taus) {
                                    return hom_heralded(jsa1, jsa2, herald, taus);
                                });
}

HomTrace hom_signal_idler_auto(const JointAmplitude& jsa, int count) {
    // The signal-idler dip is displaced from zero delay by the group-delay
    // walk-off between the two polarizations, and the discrete grid makes the
    // trace periodic with period 2 pi / (grid spacing). Locate the dip with a
    // coarse scan over one period, then sample a window centered on it.
    const FrequencyGrid& g = jsa.grid;
    const double spacing = g.signal_span / (g.n - 1);
    const double tau_rec = 2.0 * std::numbers::pi / spacing;

    const int coarse_n = 1001;
    std::vector<double> coarse(coarse_n);
    for (int k = 0; k < coarse_n; ++k)
        coarse[k] = tau_rec * (static_cast<double>(k) / (coarse_n - 1) - 0.5);
    const HomTrace scan = hom_signal_idler(jsa, coarse);
    const std::size_t at =
        std::min_element(scan.p.begin(), scan.p.end()) - scan.p.begin();
    const double tau0 = scan.tau_s[at];

    const double sigma = std::min(marginal_sigma(jsa, Photon::Signal),
                                  marginal_sigma(jsa, Photon::Idler));
    double half_width = 5.0 * 2.355 / sigma;
    half_width = std::min(half_width, 0.45 * tau_rec);
    std::vector<double> taus(count);
    for (int k = 0; k < count; ++k)
        taus[k] = tau0 + half_width * (2.0 * static_cast<double>(k) / (count - 1) - 1.0);
    return hom_signal_idler(jsa, taus);
}

double dip_width(const HomTrace& trace) {
    const auto it = std::min_element(trace.p.begin(), trace.p.end());
    const double pmin = *it;
    if (trace.baseline - pmin < 1e-6)
        throw ComputeError("trace is flat; dip width undefined");
    const double half = 0.5 * (trace.baseline + pmin);
    const int n = static_cast<int>(trace.p.size());
    // Walk outward from the deepest point so that secondary dips (e.g. grid
    // recurrences at the window edge) do not inflate the width.
    const int at = static_cast<int>(it - trace.p.begin());
    int lo = at, hi = at;
    while (lo > 0 && trace.p[lo - 1] <= half) --lo;
    while (hi + 1 < n && trace.p[hi + 1] <= half) ++hi;
    double t_left = trace.tau_s[lo];
    if (lo > 0) {
        const double f = (trace.p[lo - 1] - half) / (trace.p[lo - 1] - trace.p[lo]);
        t_left = trace.tau_s[lo - 1] + f * (trace.tau_s[lo] - trace.tau_s[lo - 1]);
    }
    double t_right = trace.tau_s[hi];
    if (hi + 1 < n) {
        const double f = (trace.p[hi] - half) / (trace.p[hi] - trace.p[hi + 1]);
        t_right = trace.tau_s[hi] + f * (trace.tau_s[hi + 1] - trace.tau_s[hi]);
    }
    return t_right - t_left;
}

}  // namespace spdc
