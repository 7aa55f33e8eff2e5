#pragma once

#include <optional>
#include <vector>

#include "perc/sampling.hpp"

namespace perc {

enum class CrossDirection { Horizontal, Vertical };

// Per-site cluster ids for one color. label[i] == -1 for sites of the other
// color; two same-color sites share a label iff joined by a same-color path
// in that color's adjacency.
struct ClusterLabeling {
    SiteColor color = SiteColor::Open;
    std::vector<int32_t> label;
    int32_t cluster_count = 0;
};

ClusterLabeling label_clusters(const Configuration& config, SiteColor color);

struct CrossingReport {
    bool exists = false;
    std::optional<Site> witness;  // one site of a spanning cluster
};

CrossingReport has_crossing(const Configuration& config, SiteColor color, CrossDirection dir,
                            const BoxRegion& region);
CrossingReport has_crossing(const Configuration& config, SiteColor color, CrossDirection dir);

// Block-cut-tree analysis of the color subgraph between two terminal site
// sets, with one virtual vertex attached to each terminal set.
struct TerminalStructure {
    bool spans = false;
    // Sites whose removal disconnects the terminals; empty when !spans or when
    // two vertex-disjoint routes exist.
    std::vector<Site> cut_vertices;
    // Per config index: site lies on some simple terminal-to-terminal path of
    // the color (equivalently, two disjoint arms to the two terminal sets).
    std::vector<uint8_t> on_some_path;
};

TerminalStructure analyze_terminals(const Configuration& config, SiteColor color,
                                    const std::vector<Site>& terminal_a,
                                    const std::vector<Site>& terminal_b);

// Cut vertices separating the two terminal edges within the open subgraph.
// Throws if no cluster spans the terminals.
std::vector<Site> terminal_cut_vertices(const Configuration& config,
                                        const std::vector<Site>& left_terminal,
                                        const std::vector<Site>& right_terminal);

// Menger check: two paths of the color from s to target_a and target_b,
// vertex-disjoint except at s. Decided by unit-capacity flow.
bool two_disjoint_arms(const Configuration& config, Site s, SiteColor color,
                       const std::vector<Site>& target_a, const std::vector<Site>& target_b);

}  // namespace perc
