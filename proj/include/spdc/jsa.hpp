#pragma once

#include <complex>
#include <vector>

#include "spdc/gvm.hpp"
#include "spdc/registry.hpp"

namespace spdc {

using cplx = std::complex<double>;

// Gaussian pump: bandwidth is the FWHM of the intensity spectrum, in nm.
struct PumpSpec {
    double center_nm = 0.0;
    double fwhm_nm = 0.0;

    double center_omega() const;  // rad/s
    // Standard deviation of the amplitude envelope, rad/s, chosen so that the
    // intensity spectrum has the declared FWHM:
    //   sigma = dw_fwhm / (2 sqrt(ln 2)),  dw_fwhm = 2 pi c dlam / lam^2.
    double sigma_omega() const;
};

// Crystal + convention + length + poling period defining the type-II process.
struct PhaseMatchSpec {
    const CrystalRecord* crystal = nullptr;
    ProcessConvention convention;
    double length_mm = 0.0;
    double period_um = 0.0;
    int period_sign = 1;  // sign of the bare mismatch the grating compensates
    bool include_pm_phase = true;
};

// Uniform angular-frequency grid, one axis per photon.
struct FrequencyGrid {
    int n = 0;
    double signal_center = 0.0, signal_span = 0.0;  // rad/s
    double idler_center = 0.0, idler_span = 0.0;    // rad/s

    double signal_omega(int i) const;
    double idler_omega(int j) const;
    double signal_lambda_um(int i) const;
    double idler_lambda_um(int j) const;
};

// f[i*n + j] = f(ws_i, wi_j), unit Frobenius norm.
struct JointAmplitude {
    FrequencyGrid grid;
    std::vector<cplx> values;

    cplx at(int i, int j) const { return values[static_cast<std::size_t>(i) * grid.n + j]; }
};

// Real Gaussian envelope alpha(w) = exp(-(w - w_p0)^2 / (2 sigma^2)).
double pump_envelope(const PumpSpec& pump, double omega);

// dk = k_p(ws + wi) - k_s(ws) - k_i(wi) - sign * 2 pi / period, rad/um.
// Throws RangeError when any of the three wavelengths leaves the validity window.
double phase_mismatch(const PhaseMatchSpec& pm, double omega_s, double omega_i);

// phi = sinc(dk L / 2) * exp(i dk L / 2); the phase factor is dropped when
// include_pm_phase is off. sinc uses a series branch near zero.
cplx phase_matching_function(const PhaseMatchSpec& pm, double omega_s, double omega_i);

// Grid centered at degeneracy. Per-axis span = max(6 sigma_pump, 6 * width between
// the first sinc zeros along that axis); expanded by 1.5x (within the validity
// window) until the boundary intensity is below 1e-3 of the peak.
FrequencyGrid auto_grid(const PumpSpec& pump, const PhaseMatchSpec& pm,
                        double lambda_degenerate_nm, int n);

// Normalized JSA f = alpha * phi sampled on the grid. Deterministic.
JointAmplitude compute_jsa(const PumpSpec& pump, const PhaseMatchSpec& pm,
                           const FrequencyGrid& grid);

// Convenience: degenerate configuration at lambda_nm with auto-computed poling
// period and auto-sized grid. swap_roles exchanges signal/idler axes (used at
// asymmetric group-velocity-matched points where the pump-matched photon is the
// broadband "signal").
struct JsaConfig {
    double lambda_nm = 0.0;
    double length_mm = 30.0;
    double pump_fwhm_nm = 0.0;
    int grid_n = 512;
    bool include_pm_phase = true;
    bool swap_roles = false;
    // Force equal signal/idler spans (needed when both photons must share one
    // frequency axis, e.g. for signal-idler interference).
    bool square_grid = false;
    double period_um = 0.0;  // 0 -> compute from the degenerate poling period
};

JointAmplitude build_degenerate_jsa(const CrystalRecord& record, const JsaConfig& config);

}  // namespace spdc
