#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <set>

#include "perc/lattice.hpp"

using namespace perc;

TEST_CASE("neighbor offsets have the right counts and are symmetric") {
    CHECK(neighbor_offsets(LatticeKind::Triangular, SiteColor::Open).size() == 6);
    CHECK(neighbor_offsets(LatticeKind::Triangular, SiteColor::Closed).size() == 6);
    CHECK(neighbor_offsets(LatticeKind::SquareSite, SiteColor::Open).size() == 4);
    CHECK(neighbor_offsets(LatticeKind::SquareSite, SiteColor::Closed).size() == 8);
    for (LatticeKind kind : {LatticeKind::Triangular, LatticeKind::SquareSite}) {
        for (SiteColor color : {SiteColor::Open, SiteColor::Closed}) {
            const auto& offs = neighbor_offsets(kind, color);
            for (Site d : offs) {
                CHECK(std::count_if(offs.begin(), offs.end(), [&](Site e) {
                          return e.x == -d.x && e.y == -d.y;
                      }) == 1);
                CHECK((d.x != 0 || d.y != 0));
            }
        }
    }
}

TEST_CASE("box region accessors") {
    BoxRegion box{{0, 0}, 4};
    CHECK(box.side() == 9);
    CHECK(box.site_count() == 81);
    CHECK(box.contains({4, -4}));
    CHECK(!box.contains({5, 0}));
    CHECK(box.xmin() == -4);
    CHECK(box.ymax() == 4);
    BoxRegion off{{3, -2}, 1};
    CHECK(off.contains({2, -3}));
    CHECK(!off.contains({2, 0}));
}

TEST_CASE("site norm is the box metric") {
    CHECK(site_norm({3, -1}) == 3);
    CHECK(site_norm({-2, 5}) == 5);
    CHECK(site_norm({0, 0}) == 0);
}

TEST_CASE("boundary sites per edge") {
    BoxRegion box{{0, 0}, 2};
    CHECK(boundary_sites(box, BoxEdge::Left).size() == 5);
    CHECK(boundary_sites(box, BoxEdge::Bottom).size() == 5);
    const auto tas = boundary_sites(box, BoxEdge::TopAndSides);
    CHECK(tas.size() == 5 + 5 + 3);  // corners counted once
    std::set<std::pair<int, int>> dedup;
    for (Site s : tas) dedup.insert({s.x, s.y});
    CHECK(dedup.size() == tas.size());
    for (Site s : tas) CHECK((s.y == 2 || s.x == -2 || s.x == 2));
    // Degenerate box: a single site, listed once.
    CHECK(boundary_sites(BoxRegion{{0, 0}, 0}, BoxEdge::TopAndSides).size() == 1);
}

TEST_CASE("sector membership and seed intervals") {
    SectorRegion quarter{SectorAperture::QuarterPlane, 8, 32};
    CHECK(in_sector(quarter, {16, 0}));     // bounding ray included
    CHECK(in_sector(quarter, {0, 16}));
    CHECK(!in_sector(quarter, {-1, 16}));   // outside the quarter plane
    CHECK(!in_sector(quarter, {4, 4}));     // inside the hole
    CHECK(!in_sector(quarter, {40, 0}));    // beyond the outer radius
    CHECK(!in_sector(quarter, {8, 3}));     // K1 sits on the edge of the hole

    SectorRegion half{SectorAperture::HalfPlane, 8, 32};
    CHECK(in_sector(half, {-16, 0}));
    CHECK(!in_sector(half, {-16, -1}));

    const auto k1 = quarter.seed_k1();
    REQUIRE(k1.size() == 3);  // y in [3, 5] at x = 8
    for (Site s : k1) {
        CHECK(s.x == 8);
        CHECK(s.y >= 3);
        CHECK(s.y <= 5);
    }
    const auto k2 = quarter.seed_k2();
    REQUIRE(k2.size() == 5);  // x in [2, 6] at y = 8
    for (Site s : k2) CHECK(s.y == 8);

    // Tiny sectors still get nonempty seeds.
    SectorRegion tiny{SectorAperture::QuarterPlane, 2, 4};
    CHECK(!tiny.seed_k1().empty());
    CHECK(!tiny.seed_k2().empty());
}

TEST_CASE("horseshoe geometry") {
    HorseshoeSpec spec{3, 5, {0, 0}};
    CHECK(spec.inner_radius() == 8);
    CHECK(spec.outer_radius() == 32);
    const BoxRegion b1 = spec.inner_box(), b2 = spec.outer_box();
    CHECK(b1.ymin() == b2.ymin());  // shared bottom edge
    CHECK(b1.center.x == b2.center.x);
    CHECK(b2.contains({b1.xmin(), b1.ymax()}));
    CHECK(spec.contains({20, 10}));
    CHECK(!spec.contains({0, 8}));       // inside the inner box
    CHECK(!spec.contains({0, 100}));

    const auto top = spec.default_arc_top();
    const auto left = spec.default_arc_left();
    CHECK(top.size() == 2);  // 2^(rho-2)
    CHECK(left.size() == 2);
    for (Site s : top) CHECK(s.y == b1.ymax());
    for (Site s : left) CHECK(s.x == b1.xmin());
    CHECK(HorseshoeSpec{1, 3, {0, 0}}.default_arc_top().empty());
}
