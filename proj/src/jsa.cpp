#include "spdc/jsa.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "spdc/kernels.hpp"

namespace spdc {
namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kCUm = kSpeedOfLight * 1e6;  // um/s

double lambda_um_of(double omega) { return kTwoPi * kCUm / omega; }

double sinc(double x) {
    if (std::abs(x) < 1e-6) return 1.0 - x * x / 6.0;
    return std::sin(x) / x;
}

}  // namespace

double PumpSpec::center_omega() const { return kTwoPi * kCUm / (center_nm * 1e-3); }

double PumpSpec::sigma_omega() const {
    const double lam_um = center_nm * 1e-3;
    const double dw_fwhm = kTwoPi * kCUm * (fwhm_nm * 1e-3) / (lam_um * lam_um);
    return dw_fwhm / (2.0 * std::sqrt(std::numbers::ln2));
}

double FrequencyGrid::signal_omega(int i) const {
    return signal_center + signal_span * (static_cast<double>(i) / (n - 1) - 0.5);
}
double FrequencyGrid::idler_omega(int j) const {
    return idler_center + idler_span * (static_cast<double>(j) / (n - 1) - 0.5);
}
double FrequencyGrid::signal_lambda_um(int i) const { return lambda_um_of(signal_omega(i)); }
double FrequencyGrid::idler_lambda_um(int j) const { return lambda_um_of(idler_omega(j)); }

double pump_envelope(const PumpSpec& pump, double omega) {
    const double d = omega - pump.center_omega();
    const double s = pump.sigma_omega();
    return std::exp(-d * d / (2.0 * s * s));
}

double phase_mismatch(const PhaseMatchSpec& pm, double omega_s, double omega_i) {
    const CrystalRecord& rec = *pm.crystal;
    const double lam_s = lambda_um_of(omega_s);
    const double lam_i = lambda_um_of(omega_i);
    const double lam_p = lambda_um_of(omega_s + omega_i);
    double dk = wavenumber(rec, pm.convention.pump_axis, lam_p) -
                wavenumber(rec, pm.convention.signal_axis, lam_s) -
                wavenumber(rec, pm.convention.idler_axis, lam_i);
    if (pm.period_um > 0.0) dk -= pm.period_sign * kTwoPi / pm.period_um;
    return dk;
}

cplx phase_matching_function(const PhaseMatchSpec& pm, double omega_s, double omega_i) {
    const double x = phase_mismatch(pm, omega_s, omega_i) * pm.length_mm * 1e3 / 2.0;
    const double s = sinc(x);
    if (!pm.include_pm_phase) return {s, 0.0};
    return {s * std::cos(x), s * std::sin(x)};
}

FrequencyGrid auto_grid(const PumpSpec& pump, const PhaseMatchSpec& pm,
                        double lambda_degenerate_nm, int n) {
    if (n < 16) throw ComputeError("grid size must be at least 16");
    const CrystalRecord& rec = *pm.crystal;
    const double w0 = kTwoPi * kCUm / (lambda_degenerate_nm * 1e-3);
    const double sigma = pump.sigma_omega();

    // Offset of the first sinc zero (|dk| L/2 = pi) along one axis, one direction.
    auto first_zero = [&](bool signal_axis, double direction) {
        const double l_half = pm.length_mm * 1e3 / 2.0;
        double x = std::max(sigma, 1e10);
        for (int iter = 0; iter < 200; ++iter) {
            const double ws = signal_axis ? w0 + direction * x : w0;
            const double wi = signal_axis ? w0 : w0 + direction * x;
            double dk;
            try {
                dk = phase_mismatch(pm, ws, wi);
            } catch (const RangeError&) {
                return x;  // zero not reached inside validity; span clamps below
            }
            if (std::abs(dk) * l_half >= std::numbers::pi) return x;
            x *= 1.3;
        }
        return x;
    };
    const double width_s = first_zero(true, 1.0) + first_zero(true, -1.0);
    const double width_i = first_zero(false, 1.0) + first_zero(false, -1.0);
    double span_s = std::max(6.0 * sigma, 6.0 * width_s);
    double span_i = std::max(6.0 * sigma, 6.0 * width_i);

    // Largest spans keeping every wavelength (signal, idler, and their pump sum)
    // inside the validity window.
    const double w_min = kTwoPi * kCUm / rec.validity_hi_um;
    const double w_max = kTwoPi * kCUm / rec.validity_lo_um;
    auto clamp_spans = [&](double& ss, double& si) {
        const double per_axis = 2.0 * std::min(w0 - w_min, w_max - w0);
        ss = std::min(ss, per_axis);
        si = std::min(si, per_axis);
        // pump: ws + wi must stay within [w_min, w_max]
        const double sum_budget = 2.0 * std::min(w_max - 2.0 * w0, 2.0 * w0 - w_min);
        if (sum_budget <= 0.0)
            throw ComputeError("pump wavelength for '" + rec.name +
                               "' lies outside the validity range");
        if (ss + si > sum_budget && ss + si > 0.0) {
            const double f = sum_budget / (ss + si);
            ss *= f;
            si *= f;
        }
    };

    const double intensity_limit = 1e-3;
    for (int attempt = 0; attempt < 16; ++attempt) {
        FrequencyGrid grid;
        grid.n = n;
        grid.signal_center = w0;
        grid.idler_center = w0;
        double ss = span_s, si = span_i;
        clamp_spans(ss, si);
        grid.signal_span = ss;
        grid.idler_span = si;
        const bool clamped = ss < span_s || si < span_i;

        // Boundary check: exported intensity |f|^2 at the grid edge relative to the
        // central peak must be below the limit.
        auto f_mag = [&](double ws, double wi) {
            return pump_envelope(pump, ws + wi) *
                   std::abs(phase_matching_function(pm, ws, wi));
        };
        const double peak = f_mag(w0, w0);
        double worst = 0.0;
        for (int k = 0; k < n; ++k) {
            worst = std::max(worst, f_mag(grid.signal_omega(k), grid.idler_omega(0)));
            worst = std::max(worst, f_mag(grid.signal_omega(k), grid.idler_omega(n - 1)));
            worst = std::max(worst, f_mag(grid.signal_omega(0), grid.idler_omega(k)));
            worst = std::max(worst, f_mag(grid.signal_omega(n - 1), grid.idler_omega(k)));
        }
        const double ratio = (worst / peak) * (worst / peak);
        if (ratio < intensity_limit) return grid;
        if (clamped) {
            std::ostringstream os;
            os << "cannot satisfy the grid boundary criterion inside the validity range "
               << "of '" << rec.name << "' (boundary intensity ratio " << ratio << ")";
            throw ComputeError(os.str());
        }
        span_s *= 1.5;
        span_i *= 1.5;
    }
    throw ComputeError("grid boundary criterion not met after repeated expansion");
}

JointAmplitude compute_jsa(const PumpSpec& pump, const PhaseMatchSpec& pm,
                           const FrequencyGrid& grid) {
    JointAmplitude jsa;
    jsa.grid = grid;
    const int n = grid.n;
    jsa.values.resize(static_cast<std::size_t>(n) * n);
    for (int i = 0; i < n; ++i) {
        const double ws = grid.signal_omega(i);
        for (int j = 0; j < n; ++j) {
            const double wi = grid.idler_omega(j);
            const double alpha = pump_envelope(pump, ws + wi);
            jsa.values[static_cast<std::size_t>(i) * n + j] =
                alpha * phase_matching_function(pm, ws, wi);
        }
    }
    const double nrm = kernels::norm_sq(jsa.values.data(), jsa.values.size());
    if (!(nrm > 0.0) || !std::isfinite(nrm))
        throw ComputeError("joint amplitude vanishes or is non-finite on this grid");
    const double scale = 1.0 / std::sqrt(nrm);
    for (auto& v : jsa.values) v *= scale;
    return jsa;
}

JointAmplitude build_degenerate_jsa(const CrystalRecord& record, const JsaConfig& config) {
    ProcessConvention conv;
    if (config.swap_roles) conv = conv.swapped();
    PhaseMatchSpec pm;
    pm.crystal = &record;
    pm.convention = conv;
    pm.length_mm = config.length_mm;
    pm.include_pm_phase = config.include_pm_phase;
    const PolingResult poling =
        config.period_um > 0.0
            ? PolingResult{config.period_um,
                           poling_period_degenerate(record, conv, config.lambda_nm)
                               .mismatch_sign}
            : poling_period_degenerate(record, conv, config.lambda_nm);
    pm.period_um = poling.period_um;
    pm.period_sign = poling.mismatch_sign;
    PumpSpec pump;
    pump.center_nm = config.lambda_nm / 2.0;
    pump.fwhm_nm = config.pump_fwhm_nm;
    FrequencyGrid grid = auto_grid(pump, pm, config.lambda_nm, config.grid_n);
    if (config.square_grid) {
        // Widening the narrower axis only pushes its edge further into the tails,
        // so the boundary criterion established by auto_grid still holds.
        const double span = std::max(grid.signal_span, grid.idler_span);
        grid.signal_span = span;
        grid.idler_span = span;
    }
    return compute_jsa(pump, pm, grid);
}

}  // namespace spdc
