#pragma once

#include <vector>

#include "spdc/jsa.hpp"

namespace spdc {

struct SchmidtResult {
    std::vector<double> coefficients;  // c_j, descending, sum c_j^2 = 1
    double purity = 0.0;               // p = sum c_j^4
    double schmidt_number = 0.0;       // K = 1/p
    // Mode functions sampled on the grid (row-major, mode j at [j*n .. j*n+n-1]);
    // filled only when requested.
    std::vector<cplx> signal_modes;
    std::vector<cplx> idler_modes;
};

// Schmidt coefficients from the eigen-decomposition of the reduced signal state
// rho = F F^H (c_j^2 = eigenvalues). Throws ComputeError on non-finite input.
SchmidtResult schmidt_decompose(const JointAmplitude& jsa, bool want_modes = false);

// Fast purity sum_{ij} |(F F^H)_{ij}|^2 via the dispatched Gram kernel.
double purity(const JointAmplitude& jsa);

// Independent purity check: materializes rho = F F^H and evaluates Tr(rho^2)
// with two plain matrix products. O(n^3); intended for n <= 128.
double purity_oracle(const JointAmplitude& jsa);

struct BandwidthScanPoint {
    double pump_fwhm_nm;
    double purity;
};

struct BandwidthOptimum {
    double pump_fwhm_nm = 0.0;
    double purity = 0.0;
    std::vector<BandwidthScanPoint> trace;  // coarse scan, ascending bandwidth
};

// Coarse log-spaced scan of the pump bandwidth followed by golden-section
// refinement of the purity maximum. search_n is the grid size used during the
// search (the optimum is re-evaluated at grid_n from config). Throws
// ComputeError when the maximum sits at the range edge.
BandwidthOptimum optimize_pump_bandwidth(const CrystalRecord& record, JsaConfig config,
                                         double fwhm_lo_nm = 0.05,
                                         double fwhm_hi_nm = 10.0,
                                         int search_n = 256);

struct PurityScanRow {
    double lambda_nm = 0.0;
    double period_um = 0.0;
    double pump_fwhm_nm = 0.0;
    double purity = 0.0;
    bool ok = false;
    std::string error;  // per-row failure; the scan continues
};

enum class PumpPolicy { FixedBandwidth, Optimized };

// Per-wavelength: recompute the degenerate poling period, build the JSA, report
// purity. Rows ascend in wavelength.
std::vector<PurityScanRow> purity_scan(const CrystalRecord& record, double from_nm,
                                       double to_nm, double step_nm, double length_mm,
                                       PumpPolicy policy, double fixed_fwhm_nm,
                                       int grid_n = 512);

}  // namespace spdc
