#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <map>
#include <stdexcept>
#include <vector>

#include "perc/connectivity.hpp"
#include "perc/oracle.hpp"

using namespace perc;

namespace {

// Rows listed top to bottom ('o' open, anything else closed), so the literal
// layout on screen matches the lattice picture.
Configuration make_config(LatticeKind lattice, int radius,
                          const std::vector<std::string>& rows_top_down) {
    const BoxRegion box{{0, 0}, radius};
    REQUIRE(int(rows_top_down.size()) == box.side());
    std::vector<uint8_t> states(size_t(box.site_count()), 0);
    for (int r = 0; r < box.side(); ++r) {
        REQUIRE(int(rows_top_down[size_t(r)].size()) == box.side());
        const int y = box.ymax() - r;
        for (int c = 0; c < box.side(); ++c) {
            const Site s{box.xmin() + c, y};
            states[size_t(s.y - box.ymin()) * size_t(box.side()) + size_t(s.x - box.xmin())] =
                rows_top_down[size_t(r)][size_t(c)] == 'o' ? 1 : 0;
        }
    }
    return Configuration(lattice, box, 0.5, {0, 0, 0}, states);
}

bool same_partition(const ClusterLabeling& a, const ClusterLabeling& b) {
    if (a.label.size() != b.label.size()) return false;
    if (a.cluster_count != b.cluster_count) return false;
    std::map<int32_t, int32_t> fwd, rev;
    for (size_t i = 0; i < a.label.size(); ++i) {
        if ((a.label[i] < 0) != (b.label[i] < 0)) return false;
        if (a.label[i] < 0) continue;
        auto [fit, finserted] = fwd.insert({a.label[i], b.label[i]});
        if (!finserted && fit->second != b.label[i]) return false;
        auto [rit, rinserted] = rev.insert({b.label[i], a.label[i]});
        if (!rinserted && rit->second != a.label[i]) return false;
    }
    return true;
}

}  // namespace

TEST_CASE("cluster labeling agrees with the BFS oracle") {
    const BoxRegion box{{0, 0}, 3};
    for (LatticeKind lattice : {LatticeKind::Triangular, LatticeKind::SquareSite}) {
        for (uint64_t trial = 0; trial < 300; ++trial) {
            const Configuration config = sample(lattice, box, critical_p(lattice), {31ULL, 0, trial});
            for (SiteColor color : {SiteColor::Open, SiteColor::Closed}) {
                CHECK(same_partition(label_clusters(config, color),
                                     bfs_label_clusters(config, color)));
            }
        }
    }
}

TEST_CASE("crossing detection on explicit pictures") {
    const Configuration row = make_config(LatticeKind::Triangular, 2,
                                          {".....",
                                           ".....",
                                           "ooooo",
                                           ".....",
                                           "....."});
    CHECK(has_crossing(row, SiteColor::Open, CrossDirection::Horizontal).exists);
    CHECK(!has_crossing(row, SiteColor::Open, CrossDirection::Vertical).exists);

    const Configuration column = make_config(LatticeKind::Triangular, 2,
                                             {"..o..",
                                              "..o..",
                                              "..o..",
                                              "..o..",
                                              "..o.."});
    CHECK(has_crossing(column, SiteColor::Open, CrossDirection::Vertical).exists);
    CHECK(!has_crossing(column, SiteColor::Open, CrossDirection::Horizontal).exists);

    const Configuration gap = make_config(LatticeKind::Triangular, 2,
                                          {".....",
                                           ".....",
                                           "oo.oo",
                                           ".....",
                                           "....."});
    CHECK(!has_crossing(gap, SiteColor::Open, CrossDirection::Horizontal).exists);

    // A diagonal step (1,-1) joins paths on the triangular lattice but is not
    // an open step on the matching square-site lattice.
    const Configuration diag = make_config(LatticeKind::Triangular, 1,
                                           {"..o",
                                            ".o.",
                                            "o.."});
    CHECK(!has_crossing(diag, SiteColor::Open, CrossDirection::Horizontal).exists);
    const Configuration anti = make_config(LatticeKind::Triangular, 1,
                                           {"o..",
                                            ".o.",
                                            "..o"});
    CHECK(has_crossing(anti, SiteColor::Open, CrossDirection::Horizontal).exists);
    const Configuration anti_sq = make_config(LatticeKind::SquareSite, 1,
                                              {"o..",
                                               ".o.",
                                               "..o"});
    CHECK(!has_crossing(anti_sq, SiteColor::Open, CrossDirection::Horizontal).exists);
    // Closed paths on square-site use the 8-neighborhood, so the same picture
    // read as closed sites does cross.
    const Configuration anti_sq_closed = make_config(LatticeKind::SquareSite, 1,
                                                     {".oo",
                                                      "o.o",
                                                      "oo."});
    CHECK(has_crossing(anti_sq_closed, SiteColor::Closed, CrossDirection::Horizontal).exists);
}

TEST_CASE("crossing witness lies in a spanning cluster") {
    const BoxRegion box{{0, 0}, 6};
    for (uint64_t trial = 0; trial < 200; ++trial) {
        const Configuration config = sample(LatticeKind::Triangular, box, 0.5, {41ULL, 0, trial});
        const CrossingReport report =
            has_crossing(config, SiteColor::Open, CrossDirection::Horizontal);
        if (!report.exists) continue;
        REQUIRE(report.witness.has_value());
        const Site w = *report.witness;
        CHECK(config.is_open(w));
        CHECK(two_disjoint_arms(config, w, SiteColor::Open,
                                boundary_sites(box, BoxEdge::Left),
                                boundary_sites(box, BoxEdge::Right)));
    }
}

TEST_CASE("duality: exactly one of open horizontal and closed vertical crossing") {
    const BoxRegion box{{0, 0}, 6};
    for (LatticeKind lattice : {LatticeKind::Triangular, LatticeKind::SquareSite}) {
        for (uint64_t trial = 0; trial < 500; ++trial) {
            const Configuration config =
                sample(lattice, box, critical_p(lattice), {53ULL, 0, trial});
            const bool open_h =
                has_crossing(config, SiteColor::Open, CrossDirection::Horizontal).exists;
            const bool closed_v =
                has_crossing(config, SiteColor::Closed, CrossDirection::Vertical).exists;
            CHECK(open_h != closed_v);
        }
    }
}

TEST_CASE("exact enumeration matches Monte Carlo on B(1)") {
    for (LatticeKind lattice : {LatticeKind::Triangular, LatticeKind::SquareSite}) {
        const double p = critical_p(lattice);
        const double exact = exact_crossing_probability(lattice, 1, p);
        CHECK(exact > 0.0);
        CHECK(exact < 1.0);
        const long long trials = 40000;
        long long hits = 0;
        for (long long t = 0; t < trials; ++t) {
            const Configuration config = sample(lattice, {{0, 0}, 1}, p, {67ULL, 0, uint64_t(t)});
            hits += has_crossing(config, SiteColor::Open, CrossDirection::Horizontal).exists;
        }
        const double se = std::sqrt(exact * (1.0 - exact) / double(trials));
        CHECK(std::fabs(double(hits) / double(trials) - exact) < 3.5 * se);
    }
    CHECK_THROWS_AS(exact_crossing_probability(LatticeKind::Triangular, 10, 0.5),
                    std::invalid_argument);
}

TEST_CASE("terminal analysis on explicit pictures") {
    const BoxRegion box{{0, 0}, 2};
    const auto left = boundary_sites(box, BoxEdge::Left);
    const auto right = boundary_sites(box, BoxEdge::Right);

    // Single spanning row: every site on it separates the sides.
    const Configuration row = make_config(LatticeKind::Triangular, 2,
                                          {".....",
                                           ".....",
                                           "ooooo",
                                           ".....",
                                           "....."});
    const TerminalStructure ts = analyze_terminals(row, SiteColor::Open, left, right);
    CHECK(ts.spans);
    CHECK(ts.cut_vertices.size() == 5);
    int on_path = 0;
    for (uint8_t b : ts.on_some_path) on_path += b != 0;
    CHECK(on_path == 5);

    // Two disjoint spanning rows: no cut vertex, both rows on some path.
    const Configuration two = make_config(LatticeKind::Triangular, 2,
                                          {"ooooo",
                                           ".....",
                                           ".....",
                                           ".....",
                                           "ooooo"});
    const TerminalStructure ts2 = analyze_terminals(two, SiteColor::Open, left, right);
    CHECK(ts2.spans);
    CHECK(ts2.cut_vertices.empty());
    on_path = 0;
    for (uint8_t b : ts2.on_some_path) on_path += b != 0;
    CHECK(on_path == 10);

    // Spanning chain through the center column: every chain site is a cut.
    const Configuration chain = make_config(LatticeKind::Triangular, 2,
                                            {"oo...",
                                             "..o..",
                                             "..o..",
                                             "..o..",
                                             "...oo"});
    const TerminalStructure ts3 = analyze_terminals(chain, SiteColor::Open, left, right);
    CHECK(ts3.spans);
    CHECK(ts3.cut_vertices.size() >= 5);  // at least the five interior chain sites

    // Three fragments that never join: no span.
    const Configuration frag = make_config(LatticeKind::Triangular, 2,
                                           {"oo...",
                                            ".....",
                                            "..o..",
                                            ".....",
                                            "...oo"});
    CHECK(!analyze_terminals(frag, SiteColor::Open, left, right).spans);

    const Configuration none = make_config(LatticeKind::Triangular, 2,
                                           {".....",
                                            ".....",
                                            ".....",
                                            ".....",
                                            "....."});
    CHECK(!analyze_terminals(none, SiteColor::Open, left, right).spans);
    CHECK_THROWS_AS(terminal_cut_vertices(none, left, right), std::invalid_argument);
}

TEST_CASE("terminal cut vertices match the flip oracle") {
    const BoxRegion box{{0, 0}, 4};
    for (LatticeKind lattice : {LatticeKind::Triangular, LatticeKind::SquareSite}) {
        int crossed = 0;
        for (uint64_t trial = 0; trial < 400; ++trial) {
            const Configuration config =
                sample(lattice, box, critical_p(lattice), {71ULL, 0, trial});
            if (!has_crossing(config, SiteColor::Open, CrossDirection::Horizontal).exists)
                continue;
            ++crossed;
            auto cuts = terminal_cut_vertices(config, boundary_sites(box, BoxEdge::Left),
                                              boundary_sites(box, BoxEdge::Right));
            std::sort(cuts.begin(), cuts.end());
            CHECK(cuts == flip_pivotal_oracle(config));
        }
        CHECK(crossed > 50);
    }
}

TEST_CASE("two_disjoint_arms basic properties") {
    const Configuration pend = make_config(LatticeKind::SquareSite, 2,
                                           {".....",
                                            "..o..",
                                            "ooooo",
                                            ".....",
                                            "....."});
    const BoxRegion box = pend.box();
    const auto left = boundary_sites(box, BoxEdge::Left);
    const auto right = boundary_sites(box, BoxEdge::Right);
    // A site of the spanning row has one arm to each side.
    CHECK(two_disjoint_arms(pend, {0, 0}, SiteColor::Open, left, right));
    // The pendant's only neighbor is (0,0); both arms would have to reuse it.
    CHECK(!two_disjoint_arms(pend, {0, 1}, SiteColor::Open, left, right));
    // Closed sites have no open arms at all.
    CHECK(!two_disjoint_arms(pend, {0, 2}, SiteColor::Open, left, right));
}
