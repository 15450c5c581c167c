#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "spdc/dispersion.hpp"

using namespace spdc;

namespace {
const Registry& reg() {
    static Registry r = load_registry(SPDC_REGISTRY_FILE);
    return r;
}
}  // namespace

TEST_CASE("refractive index reference values") {
    const CrystalRecord& ktp = reg().get("PPKTP");
    CHECK(refractive_index(ktp, Axis::Y, 1.584) == doctest::Approx(1.734294890819).epsilon(1e-10));
    CHECK(refractive_index(ktp, Axis::Z, 1.584) == doctest::Approx(1.814117974830).epsilon(1e-10));
}

TEST_CASE("wavenumber reference value") {
    const CrystalRecord& ktp = reg().get("PPKTP");
    CHECK(wavenumber(ktp, Axis::Y, 0.792) == doctest::Approx(13.939034385144).epsilon(1e-10));
}

TEST_CASE("group index reference values") {
    const CrystalRecord& ktp = reg().get("PPKTP");
    CHECK(group_index(ktp, Axis::Y, 1.584) == doctest::Approx(1.7626687230).epsilon(1e-8));
    CHECK(group_index(ktp, Axis::Z, 1.584) == doctest::Approx(1.8510616010).epsilon(1e-8));
    CHECK(group_index(ktp, Axis::Y, 0.792) == doctest::Approx(1.8069155003).epsilon(1e-8));
}

TEST_CASE("analytic derivative reference value and sign") {
    const CrystalRecord& ktp = reg().get("PPKTP");
    CHECK(dn_dlambda(ktp, Axis::Z, 1.584) == doctest::Approx(-2.3322996e-02).epsilon(1e-6));
}

TEST_CASE("analytic derivative matches central finite differences") {
    const double h = 1e-6;
    for (const auto& rec : reg().records()) {
        for (Axis ax : {Axis::X, Axis::Y, Axis::Z}) {
            for (double lam = 0.55; lam < 2.8; lam += 0.25) {
                const double fd = (rec.axis(ax).n(lam + h) - rec.axis(ax).n(lam - h)) / (2 * h);
                const double an = dn_dlambda(rec, ax, lam);
                CHECK(an == doctest::Approx(fd).epsilon(1e-6));
            }
        }
    }
}

TEST_CASE("group index exceeds the phase index in the normal-dispersion band") {
    for (const auto& rec : reg().records())
        for (Axis ax : {Axis::Y, Axis::Z})
            for (double lam = 0.6; lam < 2.0; lam += 0.2) {
                CHECK(group_index(rec, ax, lam) >= 1.0);
                CHECK(inverse_group_velocity(rec, ax, lam) ==
                      doctest::Approx(group_index(rec, ax, lam) / kSpeedOfLight));
            }
}

TEST_CASE("dispersion queries enforce the validity window") {
    const CrystalRecord& ktp = reg().get("PPKTP");
    CHECK_THROWS_AS(wavenumber(ktp, Axis::Y, 0.30), RangeError);
    CHECK_THROWS_AS(group_index(ktp, Axis::Y, 3.20), RangeError);
    CHECK_THROWS_AS(dn_dlambda(ktp, Axis::Y, 0.30), RangeError);
}
