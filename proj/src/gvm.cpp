#include "spdc/gvm.hpp"

#include <cmath>
#include <functional>
#include <numbers>
#include <sstream>

namespace spdc {
namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Bracket-scan + bisection over the window where both lam and lam/2 are valid.
std::vector<GvmSolution> find_roots(const CrystalRecord& record,
                                    const std::function<double(double)>& g,
                                    GvmCondition condition, double tol_nm,
                                    bool want_all) {
    const double lo = std::max(record.validity_lo_um, 2.0 * record.validity_lo_um);
    const double hi = record.validity_hi_um;
    std::vector<GvmSolution> out;
    if (lo >= hi) return out;
    const double step = 1e-3;  // 1 nm scan resolution
    double a = lo + 1e-9;
    double ga = g(a);
    for (double b = a + step; b < hi; b += step) {
        const double bb = std::min(b, hi - 1e-9);
        double gb = g(bb);
        if (ga == 0.0 || ga * gb < 0.0) {
            double x0 = a, x1 = bb, g0 = ga;
            const double tol_um = tol_nm * 1e-3;
            while (x1 - x0 > tol_um * 0.1) {
                const double mid = 0.5 * (x0 + x1);
                const double gm = g(mid);
                if (g0 * gm <= 0.0) {
                    x1 = mid;
                } else {
                    x0 = mid;
                    g0 = gm;
                }
            }
            GvmSolution sol;
            sol.lambda_nm = 0.5 * (x0 + x1) * 1e3;
            sol.condition = condition;
            sol.residual_s_per_m = g(0.5 * (x0 + x1));
            sol.bracket_lo_nm = a * 1e3;
            sol.bracket_hi_nm = bb * 1e3;
            out.push_back(sol);
            if (!want_all) return out;
        }
        a = bb;
        ga = gb;
    }
    return out;
}

}  // namespace

const char* gvm_condition_name(GvmCondition c) {
    switch (c) {
        case GvmCondition::Symmetric: return "symmetric";
        case GvmCondition::PumpMatchesIdler: return "pump_matches_idler";
        case GvmCondition::PumpMatchesSignal: return "pump_matches_signal";
    }
    return "?";
}

GvmSolution solve_gvm_symmetric(const CrystalRecord& record, const ProcessConvention& conv,
                                double tol_nm) {
    auto g = [&](double lam) {
        return 2.0 * inverse_group_velocity(record, conv.pump_axis, lam / 2.0) -
               inverse_group_velocity(record, conv.signal_axis, lam) -
               inverse_group_velocity(record, conv.idler_axis, lam);
    };
    auto roots = find_roots(record, g, GvmCondition::Symmetric, tol_nm, false);
    if (roots.empty()) {
        const double lo = std::max(record.validity_lo_um, 2.0 * record.validity_lo_um);
        const double hi = record.validity_hi_um;
        std::ostringstream os;
        os << "no symmetric GVM point for '" << record.name << "' in [" << lo * 1e3 << ", "
           << hi * 1e3 << "] nm";
        if (lo < hi)
            os << "; g(lo)=" << g(lo + 1e-9) << " s/m, g(hi)=" << g(hi - 1e-9) << " s/m";
        throw ComputeError(os.str());
    }
    return roots.front();
}

std::vector<GvmSolution> solve_gvm_asymmetric(const CrystalRecord& record,
                                              const ProcessConvention& conv,
                                              GvmCondition branch, double tol_nm) {
    const Axis matched = branch == GvmCondition::PumpMatchesIdler ? conv.idler_axis
                                                                  : conv.signal_axis;
    auto g = [&](double lam) {
        return inverse_group_velocity(record, conv.pump_axis, lam / 2.0) -
               inverse_group_velocity(record, matched, lam);
    };
    return find_roots(record, g, branch, tol_nm, true);
}

PolingResult poling_period(const CrystalRecord& record, const ProcessConvention& conv,
                           double pump_nm, double signal_nm, double idler_nm) {
    const double lhs = 1.0 / pump_nm;
    const double rhs = 1.0 / signal_nm + 1.0 / idler_nm;
    if (std::abs(lhs - rhs) > 1e-9 * lhs) {
        std::ostringstream os;
        os << "energy conservation violated: 1/" << pump_nm << " != 1/" << signal_nm
           << " + 1/" << idler_nm << " (nm)";
        throw ComputeError(os.str());
    }
    const double kp = wavenumber(record, conv.pump_axis, pump_nm * 1e-3);
    const double ks = wavenumber(record, conv.signal_axis, signal_nm * 1e-3);
    const double ki = wavenumber(record, conv.idler_axis, idler_nm * 1e-3);
    const double dk = kp - ks - ki;
    if (dk == 0.0) throw ComputeError("exact bulk phase matching; no finite poling period");
    PolingResult res;
    res.period_um = kTwoPi / std::abs(dk);
    res.mismatch_sign = dk > 0.0 ? 1 : -1;
    return res;
}

PolingResult poling_period_degenerate(const CrystalRecord& record,
                                      const ProcessConvention& conv, double lambda_nm) {
    return poling_period(record, conv, lambda_nm / 2.0, lambda_nm, lambda_nm);
}

}  // namespace spdc
