#pragma once

#include <vector>

#include "perc/armevents.hpp"
#include "perc/connectivity.hpp"

namespace perc {

// Brute-force reference implementations. Slow by design; they are the ground
// truth the fast algorithms are tested against on small instances.

// Plain breadth-first labeling, independent of the union-find path.
ClusterLabeling bfs_label_clusters(const Configuration& config, SiteColor color);

// Pivotal sites by definition: open sites whose single flip destroys the
// horizontal open crossing. Empty when there is no crossing.
std::vector<Site> flip_pivotal_oracle(const Configuration& config);

// Site-level three-arm predicate for membership in the lowest crossing: two
// disjoint open arms to the left and right sides plus a closed arm from a
// neighbor to the bottom (bottom-row sites qualify through the synthetic
// closed row below the box).
bool lowest_crossing_site_oracle(const Configuration& config, Site s);
std::vector<Site> lowest_crossing_oracle(const Configuration& config);

// Pioneering sites by the arm condition: open paths to the left and right
// sides (not necessarily disjoint) plus the same closed arm to the bottom.
std::vector<Site> pioneering_oracle(const Configuration& config);

// Exact crossing probability by full enumeration; guarded to tiny boxes.
double exact_crossing_probability(LatticeKind lattice, int radius, double p,
                                  SiteColor color = SiteColor::Open,
                                  CrossDirection dir = CrossDirection::Horizontal);

// Horseshoe events by direct search. kappa = 2: one open and one closed arm
// found by plain BFS. kappa = 3: enumerate simple closed crossing paths and
// test whether removing one leaves open crossings in two distinct components.
// Only intended for tiny horseshoes.
bool horseshoe_event_oracle(const Configuration& config, const HorseshoeSpec& spec, int kappa);

// Sector event by an independent depth-first search.
bool sector_event_oracle(const Configuration& config, const SectorRegion& region);

}  // namespace perc
