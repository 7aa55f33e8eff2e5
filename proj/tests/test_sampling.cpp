#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <cstdint>

#include "perc/sampling.hpp"

using namespace perc;

TEST_CASE("open_threshold edge cases") {
    CHECK(open_threshold(0.0) == 0);
    CHECK(open_threshold(1.0) == 9007199254740992ULL);
    CHECK(open_threshold(0.5) == 4503599627370496ULL);
    CHECK(open_threshold(-0.1) == 0);
    CHECK(open_threshold(1.5) == 9007199254740992ULL);
}

TEST_CASE("critical probabilities") {
    CHECK(critical_p(LatticeKind::Triangular) == 0.5);
    CHECK(critical_p(LatticeKind::SquareSite) == doctest::Approx(0.59274605).epsilon(1e-9));
}

TEST_CASE("sampling is a pure function of the key") {
    const BoxRegion box{{0, 0}, 16};
    const TrialKey key{987654321ULL, 7, 42};
    const Configuration a = sample(LatticeKind::Triangular, box, 0.5, key);
    const Configuration b = sample(LatticeKind::Triangular, box, 0.5, key);
    CHECK(a.states() == b.states());

    const Configuration c = sample(LatticeKind::Triangular, box, 0.5, {987654321ULL, 7, 43});
    const Configuration d = sample(LatticeKind::Triangular, box, 0.5, {987654321ULL, 8, 42});
    const Configuration e = sample(LatticeKind::Triangular, box, 0.5, {987654322ULL, 7, 42});
    CHECK(a.states() != c.states());
    CHECK(a.states() != d.states());
    CHECK(a.states() != e.states());
}

TEST_CASE("per-site state matches the counter-mode formula") {
    const BoxRegion box{{2, -3}, 5};
    const double p = 0.59274605;
    const TrialKey key{11ULL, 3, 9};
    const Configuration config = sample(LatticeKind::SquareSite, box, p, key);
    const uint64_t stream = trial_stream_key(key);
    const uint64_t thr = open_threshold(p);
    for (size_t i = 0; i < config.states().size(); ++i) {
        const Site s = config.site_at(i);
        CHECK(config.index_of(s) == i);
        CHECK(config.is_open(s) == (site_uniform53(stream, i) < thr));
    }
}

TEST_CASE("open fraction near p") {
    const BoxRegion box{{0, 0}, 100};  // 201^2 = 40401 sites
    for (double p : {0.5, 0.59274605}) {
        const Configuration config = sample(LatticeKind::Triangular, box, p, {2024ULL, 0, 0});
        long long open = 0;
        for (uint8_t s : config.states()) open += s != 0;
        const double n = double(config.states().size());
        const double se = std::sqrt(p * (1.0 - p) / n);
        CHECK(std::fabs(open / n - p) < 3.0 * se);
    }
}

TEST_CASE("adjacent sites are independent (chi-squared)") {
    // 1e6 horizontally adjacent pairs from many independent trials; 2x2 table,
    // df = 1, reject threshold 10.828 at the 0.001 level.
    const BoxRegion box{{0, 0}, 50};  // 101x101
    long long counts[2][2] = {{0, 0}, {0, 0}};
    long long total = 0;
    for (uint64_t trial = 0; total < 1000000; ++trial) {
        const Configuration config = sample(LatticeKind::Triangular, box, 0.5, {77ULL, 1, trial});
        for (int y = box.ymin(); y <= box.ymax(); ++y) {
            for (int x = box.xmin(); x < box.xmax(); ++x) {
                ++counts[config.is_open({x, y})][config.is_open({x + 1, y})];
                ++total;
            }
        }
    }
    double chi2 = 0.0;
    const double row[2] = {double(counts[0][0] + counts[0][1]), double(counts[1][0] + counts[1][1])};
    const double col[2] = {double(counts[0][0] + counts[1][0]), double(counts[0][1] + counts[1][1])};
    for (int a = 0; a < 2; ++a) {
        for (int b = 0; b < 2; ++b) {
            const double expect = row[a] * col[b] / double(total);
            chi2 += (counts[a][b] - expect) * (counts[a][b] - expect) / expect;
        }
    }
    CHECK(chi2 < 10.828);
}

TEST_CASE("flip is a single-site involution") {
    const BoxRegion box{{0, 0}, 4};
    const Configuration config = sample(LatticeKind::Triangular, box, 0.5, {5ULL, 0, 1});
    const Site target{2, -3};
    const Configuration flipped = config.flip(target);
    CHECK(flipped.is_open(target) != config.is_open(target));
    for (size_t i = 0; i < config.states().size(); ++i) {
        const Site s = config.site_at(i);
        if (s != target) CHECK(flipped.is_open(s) == config.is_open(s));
    }
    CHECK(flipped.flip(target).states() == config.states());
}

TEST_CASE("serialize round-trip") {
    const BoxRegion box{{-2, 7}, 6};
    const Configuration config = sample(LatticeKind::SquareSite, box, 0.59274605, {99ULL, 2, 17});
    const Configuration back = Configuration::deserialize(config.serialize());
    CHECK(back.lattice() == config.lattice());
    CHECK(back.box().center == config.box().center);
    CHECK(back.box().radius == config.box().radius);
    CHECK(back.p_open() == doctest::Approx(config.p_open()).epsilon(1e-12));
    CHECK(back.key() == config.key());
    CHECK(back.states() == config.states());
}

TEST_CASE("explicit-state constructor preserves states") {
    const BoxRegion box{{0, 0}, 1};
    std::vector<uint8_t> states = {1, 0, 1, 0, 0, 1, 1, 1, 0};
    const Configuration config(LatticeKind::Triangular, box, 0.5, {0, 0, 0}, states);
    CHECK(config.states() == states);
    CHECK(config.is_open({-1, -1}));
    CHECK(!config.is_open({0, -1}));
    CHECK(!config.is_open({1, 1}));
}
