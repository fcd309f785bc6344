#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "cherry/conjugacy.hpp"

using namespace cherry;

namespace {

MapFamily std_boyd() {
    return MapFamily::boyd(make_beta_model(0.15, 0.85, 0.5, 0.5, 0.5), 0.0, 1.0);
}

}  // namespace

TEST_CASE("conjugacy of a diagram with itself is the identity on anchors") {
    MapFamily fam = std_boyd();
    BifDiagram d = scan_diagram(fam, {0.0, 1.0}, 8);
    ParameterConjugacy s = build_parameter_conjugacy(fam, d, fam, d);
    for (const auto& an : s.anchors()) {
        CHECK(an.theta_b_lo == doctest::Approx(an.theta_a_lo).epsilon(1e-12));
        CHECK(an.theta_b_hi == doctest::Approx(an.theta_a_hi).epsilon(1e-12));
    }
    for (double theta : {0.1, 0.5, 0.9}) CHECK(s(theta) == doctest::Approx(theta).epsilon(1e-9));
}

TEST_CASE("affine reparameterization is recovered at the anchors") {
    MapFamily fam_a = std_boyd();
    // B runs the same maps over tau in [0, 1] with theta = (tau - u)/v
    const double u = 0.0, v = 1.0 / 1.0;
    FlatCircleMap base = make_beta_model(0.15, 0.85, 0.5, 0.5, 0.5);
    const double scale = 0.5, shift = 0.25;  // theta = (tau - shift)/scale on tau in [.25, .75]
    auto fam_b = MapFamily::custom(
        "affine-reparam",
        [base, scale, shift](double tau) {
            double theta = (tau - shift) / scale;
            double c_tot = base.critical_lift() + theta;
            double c_raw = c_tot - std::floor(c_tot);
            return make_beta_model(base.flat_a(), base.flat_b(), c_raw, 0.5, 0.5,
                                   (int)std::floor(c_tot));
        },
        shift, shift + scale, 1.0 / scale);
    (void)u;
    (void)v;

    BifDiagram da = scan_diagram(fam_a, {0.0, 1.0}, 6);
    BifDiagram db = scan_diagram(fam_b, {shift, shift + scale}, 6);
    ParameterConjugacy s = build_parameter_conjugacy(fam_a, da, fam_b, db);
    REQUIRE(!s.anchors().empty());
    for (const auto& an : s.anchors()) {
        CHECK(an.theta_b_lo == doctest::Approx(shift + scale * an.theta_a_lo).epsilon(1e-9));
        CHECK(an.theta_b_hi == doctest::Approx(shift + scale * an.theta_a_hi).epsilon(1e-9));
    }
    for (double theta : {0.2, 0.42, 0.77})
        CHECK(s(theta) == doctest::Approx(shift + scale * theta).epsilon(1e-7));
}

TEST_CASE("independent families agree within enclosure widths on probes") {
    MapFamily fam_a = std_boyd();
    MapFamily fam_b =
        MapFamily::boyd(make_beta_model(0.17, 0.83, 0.4, 0.55, 0.55), 0.0, 1.0);
    BifDiagram da = scan_diagram(fam_a, {0.0, 1.0}, 8);
    BifDiagram db = scan_diagram(fam_b, {0.0, 1.0}, 8);
    ConjugacyOptions opt;
    opt.rot_enclosure = 1e-5;
    ParameterConjugacy s = build_parameter_conjugacy(fam_a, da, fam_b, db, opt);
    ConjugacyReport rep = audit_conjugacy(s, 21, opt);
    REQUIRE(rep.probes.size() == 21);
    for (const auto& p : rep.probes) CHECK(p.mismatch <= p.width_a + p.width_b + 1e-12);
    CHECK(rep.max_mismatch <= rep.max_width + 1e-12);
}

TEST_CASE("mismatched rotation ranges are rejected") {
    MapFamily fam_a = std_boyd();
    MapFamily fam_b = MapFamily::boyd(make_beta_model(0.15, 0.85, 0.5, 0.5, 0.5), 0.0, 0.5);
    BifDiagram da = scan_diagram(fam_a, {0.0, 1.0}, 4);
    BifDiagram db = scan_diagram(fam_b, {0.0, 0.5}, 4);
    CHECK_THROWS_AS(build_parameter_conjugacy(fam_a, da, fam_b, db), RangeMismatch);
}
