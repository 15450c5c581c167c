#pragma once

#include "spdc/registry.hpp"

namespace spdc {

// Speed of light, m/s (exact).
inline constexpr double kSpeedOfLight = 299792458.0;

// Wavenumber k = 2*pi*n(lam)/lam, rad/um.
double wavenumber(const CrystalRecord& record, Axis axis, double lam_um);

// Analytic dn/dlam, um^-1. Agrees with central finite differences to 1e-6 relative.
double dn_dlambda(const CrystalRecord& record, Axis axis, double lam_um);

// Group index n_g = n - lam * dn/dlam (dimensionless, >= 1 for shipped crystals).
double group_index(const CrystalRecord& record, Axis axis, double lam_um);

// Inverse group velocity n_g / c, s/m.
double inverse_group_velocity(const CrystalRecord& record, Axis axis, double lam_um);

}  // namespace spdc
