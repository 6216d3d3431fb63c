#include "acleggett/geometry.hpp"

#include <cmath>
#include <numbers>
#include <random>

#include <gtest/gtest.h>

#include "acleggett/layout_io.hpp"

using namespace acleggett;
using std::numbers::pi;

namespace {

Point2 on_circle(double angle, double r = 1.0) { return {r * std::cos(angle), r * std::sin(angle)}; }

Path pinned_arc(double from, double to, int sides) {
    Path p = arc_path({0, 0}, 1.0, from, to, sides);
    p.vertices.front() = on_circle(from);
    p.vertices.back() = on_circle(to);
    return p;
}

// O12 at -pi/4, A at 0, O34 at +pi/4, B at pi, all on the unit circle.
Layout encircling_layout() {
    Layout l;
    l.o12 = on_circle(-pi / 4);
    l.o34 = on_circle(pi / 4);
    l.a = on_circle(0.0);
    l.b = on_circle(pi);
    l.paths = {pinned_arc(-pi / 4, 0.0, 4), pinned_arc(-pi / 4, -pi, 12), pinned_arc(pi / 4, pi, 12),
               pinned_arc(pi / 4, 0.0, 4)};
    return l;
}

Path random_polyline(std::mt19937_64& rng, int n, Point2 charge, double clearance) {
    std::uniform_real_distribution<double> u(-3.0, 3.0);
    Path p;
    while (static_cast<int>(p.vertices.size()) < n) {
        const Point2 v{u(rng), u(rng)};
        Path trial = p;
        trial.vertices.push_back(v);
        if (trial.vertices.size() < 2 ? std::hypot(v.x - charge.x, v.y - charge.y) > clearance
                                      : min_distance(trial, charge) > clearance) {
            p = trial;
        }
    }
    return p;
}

}  // namespace

TEST(AcPhase, RadialSegmentIsZero) {
    const Path p{{{1, 0}, {5, 0}}};
    EXPECT_NEAR(ac_phase_numeric(p, {}), 0.0, 1e-15);
    EXPECT_NEAR(ac_phase_analytic(p, {}), 0.0, 1e-15);
}

TEST(AcPhase, ClosedUnitCircle) {
    const Path c = circle_path({0, 0}, 1.0, 64);
    EXPECT_NEAR(ac_phase_numeric(c, {}), -2 * pi, 1e-10);
    EXPECT_NEAR(ac_phase_analytic(c, {}), -2 * pi, 1e-12);
    EXPECT_NEAR(ac_phase_numeric(c.reversed(), {}), 2 * pi, 1e-10);
}

TEST(AcPhase, QuarterCircleWithStrengthTwo) {
    const LineCharge q{{0, 0}, 2.0};
    const Path arc = arc_path({0, 0}, 1.0, 0.0, pi / 2, 8);
    EXPECT_NEAR(ac_phase_numeric(arc, q), -pi, 1e-10);
    EXPECT_NEAR(ac_phase_analytic(arc, q), -pi, 1e-12);
}

TEST(AcPhase, DegeneratePathIsZero) {
    const Path p{{{1, 1}, {1, 1}}};
    EXPECT_DOUBLE_EQ(ac_phase_numeric(p, {}), 0.0);
    EXPECT_DOUBLE_EQ(ac_phase_analytic(p, {}), 0.0);
}

TEST(AcPhase, ExclusionZone) {
    const Path through{{{-1, 0}, {1, 0}}};
    EXPECT_THROW(ac_phase_numeric(through, {}), ExclusionZoneViolation);
    EXPECT_THROW(ac_phase_analytic(through, {}), ExclusionZoneViolation);
    const Path grazing{{{-1, 5e-4}, {1, 5e-4}}};
    EXPECT_THROW(ac_phase_numeric(grazing, {}), ExclusionZoneViolation);
}

TEST(AcPhase, NearExclusionRadiusStillAccurate) {
    for (double h : {2e-3, 1.1e-3}) {
        const Path p{{{-1, h}, {1, h}}};
        // Sweep of a straight line at height h seen from the origin: -(pi - 2 atan(h)).
        const double expected = (pi - 2 * std::atan(h));
        EXPECT_NEAR(ac_phase_numeric(p, {}), expected, 1e-10) << h;
        EXPECT_NEAR(ac_phase_analytic(p, {}), expected, 1e-12) << h;
    }
}

TEST(Winding, Classes) {
    const LineCharge q{};
    EXPECT_EQ(winding(circle_path({0, 0}, 1.0, 16), q), 1);
    EXPECT_EQ(winding(circle_path({0, 0}, 1.0, 16).reversed(), q), -1);
    EXPECT_EQ(winding(circle_path({5, 5}, 1.0, 16), q), 0);
    Path twice = circle_path({0, 0}, 1.0, 16);
    const auto once = twice.vertices;
    twice.vertices.insert(twice.vertices.end(), once.begin(), once.end());
    EXPECT_EQ(winding(twice, q), 2);
    EXPECT_THROW(winding(Path{{{1, 0}, {2, 0}}}, q), std::invalid_argument);
}

TEST(Turns, OpenPaths) {
    EXPECT_EQ(turns(arc_path({0, 0}, 1.0, 0.0, 1.5 * pi, 12), {0, 0}), 0);
    EXPECT_EQ(turns(arc_path({0, 0}, 1.0, 0.0, 2.5 * pi, 20), {0, 0}), 1);
    EXPECT_EQ(turns(arc_path({0, 0}, 1.0, 0.0, -2.5 * pi, 20), {0, 0}), -1);
}

TEST(Layout, RadialPathsGiveZeroPhases) {
    const Layout l = load_layout(ACL_TEST_DATA_DIR "/radial_layout.json");
    const LayoutPhases ph = layout_phases(l);
    for (double p : ph.phases.phases()) EXPECT_NEAR(p, 0.0, 1e-15);
    EXPECT_EQ(ph.loop_winding, 0);
}

TEST(Layout, EncirclingSweeps) {
    const LayoutPhases ph = layout_phases(encircling_layout());
    EXPECT_NEAR(ph.phases.phi(1), -pi / 4, 1e-10);
    EXPECT_NEAR(ph.phases.phi(4), pi / 4, 1e-10);
    EXPECT_NEAR(ph.phases.phi_a(), -pi / 2, 1e-10);
    EXPECT_NEAR(ph.phases.phi_b(), 1.5 * pi, 1e-10);
    EXPECT_EQ(ph.loop_winding, 1);
    for (const auto& pp : ph.per_path) {
        EXPECT_EQ(pp.turns, 0);
        EXPECT_NEAR(pp.numeric, pp.analytic, 1e-10);
    }
    // Around the combined loop the relative phases add up to one flux quantum.
    EXPECT_NEAR(ph.phases.phi_a() - ph.phases.phi_b(), -2 * pi * ph.loop_winding, 1e-10);
}

TEST(Layout, FileMatchesInMemory) {
    const LayoutPhases a = layout_phases(load_layout(ACL_TEST_DATA_DIR "/encircling_layout.json"));
    const LayoutPhases b = layout_phases(encircling_layout());
    for (int j = 1; j <= 4; ++j) EXPECT_NEAR(a.phases.phi(j), b.phases.phi(j), 1e-10);
    EXPECT_EQ(a.loop_winding, b.loop_winding);
}

TEST(Layout, ValidationRejectsLooseEnds) {
    Layout l = encircling_layout();
    l.paths[2].vertices.back() = {0.0, 2.0};
    EXPECT_THROW(validate_layout(l), EndpointMismatch);
}

TEST(Deformation, SameClassAgrees) {
    const Path arc = pinned_arc(0.0, pi, 16);
    const Path box{{{1, 0}, {1, 2}, {-1, 2}, {-1, 0}}};
    EXPECT_LT(deformation_check(arc, box, {}), 1e-10);
}

TEST(Deformation, Rejections) {
    const Path above = pinned_arc(0.0, pi, 16);
    const Path below = pinned_arc(0.0, -pi, 16);
    EXPECT_THROW(deformation_check(above, below, {}), WindingClassMismatch);
    const Path elsewhere{{{1, 0}, {3, 3}}};
    EXPECT_THROW(deformation_check(above, elsewhere, {}), EndpointMismatch);
}

TEST(AcPhase, RandomPolylines) {
    std::mt19937_64 rng(31);
    const LineCharge q{{0.1, -0.2}, 0.7};
    for (int t = 0; t < 200; ++t) {
        const Path a = random_polyline(rng, 5, q.position, 0.01);
        const double na = ac_phase_numeric(a, q);
        EXPECT_NEAR(na, ac_phase_analytic(a, q), 1e-9);
        EXPECT_NEAR(ac_phase_numeric(a.reversed(), q), -na, 1e-9);

        Path b = random_polyline(rng, 4, q.position, 0.01);
        b.vertices.front() = a.back();
        if (min_distance(b, q.position) <= 0.01) continue;
        EXPECT_NEAR(ac_phase_numeric(concatenate(a, b), q), na + ac_phase_numeric(b, q), 1e-9);
    }
}

TEST(LayoutIo, ParseErrors) {
    EXPECT_THROW(parse_layout("{"), ParseError);
    EXPECT_THROW(parse_layout("{}"), ParseError);
    EXPECT_THROW(parse_layout(R"({"charge": {"position": [0, 0], "k": "one"}})"), ParseError);
    const std::string loose = R"({"charge": {"position": [0, 0], "k": 1},
        "points": {"O12": [1, 0], "O34": [3, 0], "A": [2, 0], "B": [4, 0]},
        "paths": {"l1": [[1, 0], [2, 0]], "l2": [[1, 0], [4, 0]], "l3": [[3, 0], [4, 0]], "l4": [[3, 0], [2.5, 0]]}})";
    EXPECT_THROW(parse_layout(loose), ParseError);
    EXPECT_THROW(load_layout("/nonexistent/layout.json"), ParseError);
}
