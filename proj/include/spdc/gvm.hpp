#pragma once

#include <vector>

#include "spdc/dispersion.hpp"
#include "spdc/registry.hpp"

namespace spdc {

// Collinear type-II process convention: propagation along x, pump and signal
// polarized along y, idler along z. Overridable (e.g. to swap signal/idler roles
// at asymmetric group-velocity-matched points).
struct ProcessConvention {
    Axis pump_axis = Axis::Y;
    Axis signal_axis = Axis::Y;
    Axis idler_axis = Axis::Z;
    bool degenerate_signal_idler = true;

    // Same axes with signal and idler roles exchanged.
    ProcessConvention swapped() const {
        ProcessConvention c = *this;
        c.signal_axis = idler_axis;
        c.idler_axis = signal_axis;
        return c;
    }
};

enum class GvmCondition { Symmetric, PumpMatchesIdler, PumpMatchesSignal };

const char* gvm_condition_name(GvmCondition c);

struct GvmSolution {
    double lambda_nm = 0.0;  // degenerate signal/idler wavelength
    GvmCondition condition = GvmCondition::Symmetric;
    double residual_s_per_m = 0.0;  // group-velocity mismatch at the root
    double bracket_lo_nm = 0.0;
    double bracket_hi_nm = 0.0;
};

// Root of g(lam) = 2/Vg_p(lam/2) - 1/Vg_s(lam) - 1/Vg_i(lam) in the window where
// both lam and lam/2 are inside the validity range. Brackets with a 1 nm scan and
// refines by bisection to |dlam| < tol_nm. Throws ComputeError (reporting g at the
// window edges) when no sign change exists.
GvmSolution solve_gvm_symmetric(const CrystalRecord& record,
                                const ProcessConvention& conv,
                                double tol_nm = 1e-4);

// All roots of 1/Vg_p(lam/2) = 1/Vg_{i|s}(lam) in the window, ascending.
// An empty result is not an error.
std::vector<GvmSolution> solve_gvm_asymmetric(const CrystalRecord& record,
                                              const ProcessConvention& conv,
                                              GvmCondition branch,
                                              double tol_nm = 1e-4);

struct PolingResult {
    double period_um = 0.0;  // first-order quasi-phase-matching period, > 0
    int mismatch_sign = 0;   // sign of k_p - k_s - k_i
};

// Lambda = 2*pi / |k_p - k_s - k_i| for the collinear process. Requires energy
// conservation 1/lp = 1/ls + 1/li to 1e-9 relative; wavelengths in nm.
PolingResult poling_period(const CrystalRecord& record, const ProcessConvention& conv,
                           double pump_nm, double signal_nm, double idler_nm);

// Convenience: degenerate poling period at lam (signal = idler = lam, pump = lam/2).
PolingResult poling_period_degenerate(const CrystalRecord& record,
                                      const ProcessConvention& conv, double lambda_nm);

}  // namespace spdc
