#pragma once

#include <vector>

#include "spdc/jsa.hpp"

namespace spdc {

enum class Photon { Signal, Idler };

struct HomTrace {
    std::vector<double> tau_s;  // delays, seconds, uniform ascending
    std::vector<double> p;      // coincidence probability
    double baseline = 0.5;
    double visibility = 0.0;  // (baseline - min) / baseline
};

// Reduced spectral state of one photon: rho(w, w') = sum_h f(w, h) conj(f(w', h))
// for keep == Signal (and the transpose-contracted analogue for Idler).
// Hermitian, unit trace, PSD.
std::vector<cplx> reduced_state(const JointAmplitude& jsa, Photon keep);

// Delay grid: count points spanning [-tau_max, tau_max].
std::vector<double> delay_grid(double tau_max_s, int count = 201);

// Interference of the two non-herald photons from two sources:
//   P(tau) = 1/2 (1 - Re sum_{w,w'} rho1(w,w') rho2(w',w) e^{i(w-w')tau}).
// Both JSAs must share the interfering photon's frequency axis. herald names the
// detected photon; the other one interferes.
HomTrace hom_heralded(const JointAmplitude& jsa1, const JointAmplitude& jsa2,
                      Photon herald, const std::vector<double>& tau_s);

// Two-photon interference of signal against idler from one source:
//   P(tau) = 1/2 (1 - Re sum_{w,w'} f(w,w') conj(f(w',w)) e^{i(w-w')tau}).
// Requires identical signal and idler axes (degenerate configuration).
HomTrace hom_signal_idler(const JointAmplitude& jsa, const std::vector<double>& tau_s);

// Auto-sized heralded trace: spans +-5x the expected dip width (inverse marginal
// bandwidth of the interfering photon), widened until the baseline is reached.
HomTrace hom_heralded_auto(const JointAmplitude& jsa1, const JointAmplitude& jsa2,
                           Photon herald, int count = 201);

// Auto-sized signal-idler trace; the window follows the narrower marginal (the
// broader dip). Requires identical signal and idler axes.
HomTrace hom_signal_idler_auto(const JointAmplitude& jsa, int count = 201);

// FWHM of the dip below the 0.5 baseline, seconds, linearly interpolated.
// Throws ComputeError for a flat trace.
double dip_width(const HomTrace& trace);

}  // namespace spdc
