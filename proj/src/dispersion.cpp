#include "spdc/dispersion.hpp"

#include <cmath>
#include <numbers>

namespace spdc {

double wavenumber(const CrystalRecord& record, Axis axis, double lam_um) {
    record.check_range(lam_um);
    return 2.0 * std::numbers::pi * record.axis(axis).n(lam_um) / lam_um;
}

double dn_dlambda(const CrystalRecord& record, Axis axis, double lam_um) {
    record.check_range(lam_um);
    const auto& form = record.axis(axis);
    // dn/dlam = d(n^2)/dlam / (2 n)
    return form.dn2_dlambda(lam_um) / (2.0 * form.n(lam_um));
}

double group_index(const CrystalRecord& record, Axis axis, double lam_um) {
    record.check_range(lam_um);
    const auto& form = record.axis(axis);
    const double n = form.n(lam_um);
    return n - lam_um * form.dn2_dlambda(lam_um) / (2.0 * n);
}

double inverse_group_velocity(const CrystalRecord& record, Axis axis, double lam_um) {
    return group_index(record, axis, lam_um) / kSpeedOfLight;
}

}  // namespace spdc
