#pragma once

#include <optional>
#include <vector>

#include "perc/connectivity.hpp"

namespace perc {

struct CrossingPath {
    enum class Kind { Lowest, Highest, Exploration };
    Kind kind = Kind::Lowest;
    std::vector<Site> sites;  // ordered; simple for Lowest/Highest
};

// Pivotal set of the horizontal open crossing of the configuration's box,
// plus the derived height scalars.
struct PivotalReport {
    int box_radius = 0;
    bool crossing_exists = false;
    std::vector<Site> pivotal_sites;  // Q_n, sorted
    int min_height = 0;               // M_n; 2n when no pivotal site
};

PivotalReport pivotal_sites(const Configuration& config);
int min_pivotal_height(const PivotalReport& report);

// Number of m-by-m bottom blocks H_k meeting Q_n. Blocks k = 1..ceil(2n/m)
// cover x in (-n+(k-1)m, -n+km] with the first block extended to include
// x = -n, heights 0..m. Guarantees X >= 1 iff M_n <= m.
int block_indicator_count(const PivotalReport& report, int m);

// |{(x,y) in Q_n : y <= -n+m}|.
int strip_pivotal_count(const PivotalReport& report, int m);

// Site set of the lowest horizontal open crossing: sites lying on some
// crossing (two disjoint open arms to the sides) that also have a closed arm
// to the bottom. Empty when no crossing exists.
std::vector<Site> lowest_crossing_sites(const Configuration& config);
std::vector<Site> highest_crossing_sites(const Configuration& config);

// Ordered path variants; order recovered from the site set.
std::optional<CrossingPath> lowest_crossing(const Configuration& config);
std::optional<CrossingPath> highest_crossing(const Configuration& config);

int highest_crossing_min_height(const Configuration& config);
std::optional<int> lowest_site_height_of_highest_crossing(const Configuration& config);

struct ExplorationResult {
    CrossingPath walk;               // kind Exploration; probed interface sites in order
    std::vector<Site> pioneering;    // F_n, sorted
};

// Interface walk from the lower-left corner keeping closed sites on its right
// and open sites on its left, with closed boundary below the box and open
// boundary on the other three sides. Triangular lattice only.
ExplorationResult exploration_walk(const Configuration& config);

// Everything the experiment harness needs from one configuration, computed
// with one terminal analysis.
struct TrialFeatures {
    bool crossing = false;
    int min_pivotal_height = 0;       // M_n
    int highest_min_height = 0;       // M_hc (2n when no crossing)
    std::optional<int> lowest_site_of_highest;  // h
    std::vector<Site> pivotal;        // Q_n
    long long lowest_size = 0;        // |L_n| (0 when no crossing)
    long long pioneer_size = 0;       // |F_n|
};

struct TrialFeatureOptions {
    bool need_lowest = false;
    bool need_highest = false;
    bool need_pioneers = false;
};

TrialFeatures compute_trial_features(const Configuration& config,
                                     const TrialFeatureOptions& options);

}  // namespace perc
