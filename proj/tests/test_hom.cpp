#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <complex>

#include "spdc/hom.hpp"
#include "spdc/schmidt.hpp"

using namespace spdc;

namespace {

const Registry& reg() {
    static Registry r = load_registry(SPDC_REGISTRY_FILE);
    return r;
}

JointAmplitude cta_asym_jsa(int n) {
    JsaConfig cfg;
    cfg.lambda_nm = 1505.7002;
    cfg.pump_fwhm_nm = 5.0;
    cfg.grid_n = n;
    cfg.swap_roles = true;
    return build_degenerate_jsa(reg().get("PPCTA"), cfg);
}

}  // namespace

TEST_CASE("reduced states are Hermitian, unit-trace and positive") {
    const JointAmplitude jsa = cta_asym_jsa(64);
    for (Photon keep : {Photon::Signal, Photon::Idler}) {
        const auto rho = reduced_state(jsa, keep);
        const int n = jsa.grid.n;
        double trace = 0.0;
        for (int i = 0; i < n; ++i) {
            trace += rho[static_cast<std::size_t>(i) * n + i].real();
            CHECK(rho[static_cast<std::size_t>(i) * n + i].real() >= -1e-12);
            for (int j = 0; j < n; ++j) {
                const cplx a = rho[static_cast<std::size_t>(i) * n + j];
                const cplx b = rho[static_cast<std::size_t>(j) * n + i];
                CHECK(std::abs(a - std::conj(b)) < 1e-12);
            }
        }
        CHECK(trace == doctest::Approx(1.0).epsilon(1e-10));
    }
}

TEST_CASE("delay grids are symmetric and uniform") {
    const auto tau = delay_grid(2e-12, 11);
    REQUIRE(tau.size() == 11);
    CHECK(tau.front() == doctest::Approx(-2e-12));
    CHECK(tau.back() == doctest::Approx(2e-12));
    CHECK(tau[5] == doctest::Approx(0.0));
    for (std::size_t k = 1; k < tau.size(); ++k)
        CHECK(tau[k] - tau[k - 1] == doctest::Approx(4e-13).epsilon(1e-12));
}

TEST_CASE("heralded traces: baseline, symmetry and zero-delay purity bridge") {
    const JointAmplitude jsa = cta_asym_jsa(256);
    const double p = purity(jsa);
    for (Photon herald : {Photon::Signal, Photon::Idler}) {
        const HomTrace t = hom_heralded_auto(jsa, jsa, herald, 101);
        CHECK(t.baseline == doctest::Approx(0.5));
        CHECK(std::abs(t.p.front() - 0.5) < 1e-3);
        CHECK(std::abs(t.p.back() - 0.5) < 1e-3);
        const std::size_t n = t.p.size();
        for (std::size_t k = 0; k < n; ++k)
            CHECK(std::abs(t.p[k] - t.p[n - 1 - k]) < 1e-9);
        // P(0) = (1 - Tr rho^2)/2: dip visibility at zero delay equals the purity.
        const double p0 = t.p[n / 2];
        CHECK(std::abs((0.5 - p0) / 0.5 - p) < 1e-6);
        CHECK(t.visibility >= p - 1e-9);
    }
}

TEST_CASE("reference metrics at the asymmetric point") {
    const JointAmplitude jsa = cta_asym_jsa(256);
    const HomTrace ts = hom_heralded_auto(jsa, jsa, Photon::Idler, 201);
    CHECK(ts.visibility == doctest::Approx(0.9687).epsilon(3e-3));
    CHECK(dip_width(ts) * 1e12 == doctest::Approx(0.238).epsilon(0.05));

    const HomTrace ti = hom_heralded_auto(jsa, jsa, Photon::Signal, 201);
    CHECK(ti.visibility == doctest::Approx(0.9687).epsilon(3e-3));
    CHECK(dip_width(ti) * 1e12 == doctest::Approx(3.575).epsilon(0.05));

    // Signal-idler interference needs one shared frequency axis.
    JsaConfig cfg;
    cfg.lambda_nm = 1505.7002;
    cfg.pump_fwhm_nm = 5.0;
    cfg.grid_n = 512;
    cfg.swap_roles = true;
    cfg.square_grid = true;
    const JointAmplitude sq = build_degenerate_jsa(reg().get("PPCTA"), cfg);
    const HomTrace tsi = hom_signal_idler_auto(sq);
    CHECK(tsi.visibility < 0.5 * ts.visibility);
    CHECK(tsi.visibility < 0.2);
    CHECK(tsi.visibility > 0.0);
    // The dip sits at the signal-idler group-delay walk-off, away from zero.
    const std::size_t at =
        std::min_element(tsi.p.begin(), tsi.p.end()) - tsi.p.begin();
    CHECK(std::abs(tsi.tau_s[at]) * 1e12 > 1.0);
}

TEST_CASE("mismatched grids are rejected") {
    const JointAmplitude a = cta_asym_jsa(64);
    const JointAmplitude b = cta_asym_jsa(32);
    CHECK_THROWS_AS(hom_heralded(a, b, Photon::Idler, delay_grid(1e-12, 11)), ComputeError);

    JointAmplitude c = a;
    c.grid.signal_center *= 1.001;
    CHECK_THROWS_AS(hom_heralded(a, c, Photon::Idler, delay_grid(1e-12, 11)), ComputeError);
}

TEST_CASE("signal-idler interference requires matching axes") {
    JointAmplitude a = cta_asym_jsa(32);
    JointAmplitude skew = a;
    skew.grid.idler_span *= 2.0;
    CHECK_THROWS_AS(hom_signal_idler(skew, delay_grid(1e-12, 11)), ComputeError);
}

TEST_CASE("dip width rejects a flat trace") {
    HomTrace flat;
    flat.tau_s = delay_grid(1e-12, 11);
    flat.p.assign(11, 0.5);
    flat.baseline = 0.5;
    CHECK_THROWS_AS(dip_width(flat), ComputeError);
}
