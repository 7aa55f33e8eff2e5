#include "perc/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>

namespace perc {
namespace {

// Closed-arm-to-bottom predicate, recomputed from scratch: the closed
// territory grown from the bottom row, plus the convention that the row just
// below the box is closed, so bottom-row sites always qualify.
std::vector<uint8_t> closed_bottom_territory(const Configuration& config) {
    const BoxRegion& box = config.box();
    const auto& offsets = neighbor_offsets(config.lattice(), SiteColor::Closed);
    std::vector<uint8_t> in_territory(size_t(box.site_count()), 0);
    std::vector<Site> queue;
    for (int x = box.xmin(); x <= box.xmax(); ++x) {
        const Site s{x, box.ymin()};
        if (!config.is_open(s)) {
            in_territory[config.index_of(s)] = 1;
            queue.push_back(s);
        }
    }
    for (size_t head = 0; head < queue.size(); ++head) {
        for (Site t : neighbors(config.lattice(), queue[head], SiteColor::Closed)) {
            if (!box.contains(t) || config.is_open(t)) continue;
            const size_t i = config.index_of(t);
            if (!in_territory[i]) {
                in_territory[i] = 1;
                queue.push_back(t);
            }
        }
    }
    (void)offsets;
    return in_territory;
}

bool has_closed_arm_to_bottom(const Configuration& config, Site s,
                              const std::vector<uint8_t>& territory) {
    if (s.y == config.box().ymin()) return true;
    for (Site t : neighbors(config.lattice(), s, SiteColor::Closed)) {
        if (!config.box().contains(t)) continue;
        if (!config.is_open(t) && territory[config.index_of(t)]) return true;
    }
    return false;
}

}  // namespace

ClusterLabeling bfs_label_clusters(const Configuration& config, SiteColor color) {
    const BoxRegion& box = config.box();
    ClusterLabeling out;
    out.color = color;
    out.label.assign(size_t(box.site_count()), -1);
    for (size_t start = 0; start < out.label.size(); ++start) {
        const Site seed = config.site_at(start);
        if (!config.has_color(seed, color) || out.label[start] >= 0) continue;
        const int32_t id = out.cluster_count++;
        std::vector<Site> queue{seed};
        out.label[start] = id;
        for (size_t head = 0; head < queue.size(); ++head) {
            for (Site t : neighbors(config.lattice(), queue[head], color)) {
                if (!box.contains(t) || !config.has_color(t, color)) continue;
                const size_t i = config.index_of(t);
                if (out.label[i] < 0) {
                    out.label[i] = id;
                    queue.push_back(t);
                }
            }
        }
    }
    return out;
}

std::vector<Site> flip_pivotal_oracle(const Configuration& config) {
    std::vector<Site> out;
    if (!has_crossing(config, SiteColor::Open, CrossDirection::Horizontal).exists) return out;
    const BoxRegion& box = config.box();
    for (size_t i = 0; i < size_t(box.site_count()); ++i) {
        const Site s = config.site_at(i);
        if (!config.is_open(s)) continue;
        if (!has_crossing(config.flip(s), SiteColor::Open, CrossDirection::Horizontal).exists)
            out.push_back(s);
    }
    std::sort(out.begin(), out.end());
    return out;
}

bool lowest_crossing_site_oracle(const Configuration& config, Site s) {
    if (!config.is_open(s)) return false;
    const BoxRegion& box = config.box();
    if (!two_disjoint_arms(config, s, SiteColor::Open, boundary_sites(box, BoxEdge::Left),
                           boundary_sites(box, BoxEdge::Right)))
        return false;
    return has_closed_arm_to_bottom(config, s, closed_bottom_territory(config));
}

std::vector<Site> lowest_crossing_oracle(const Configuration& config) {
    std::vector<Site> out;
    const auto territory = closed_bottom_territory(config);
    const BoxRegion& box = config.box();
    for (size_t i = 0; i < size_t(box.site_count()); ++i) {
        const Site s = config.site_at(i);
        if (!config.is_open(s)) continue;
        if (!has_closed_arm_to_bottom(config, s, territory)) continue;
        if (two_disjoint_arms(config, s, SiteColor::Open, boundary_sites(box, BoxEdge::Left),
                              boundary_sites(box, BoxEdge::Right)))
            out.push_back(s);
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<Site> pioneering_oracle(const Configuration& config) {
    const BoxRegion& box = config.box();
    const auto labels = bfs_label_clusters(config, SiteColor::Open);
    std::vector<uint8_t> touches_left(size_t(labels.cluster_count), 0);
    std::vector<uint8_t> touches_right(size_t(labels.cluster_count), 0);
    for (int y = box.ymin(); y <= box.ymax(); ++y) {
        const Site l{box.xmin(), y}, r{box.xmax(), y};
        if (config.is_open(l)) touches_left[size_t(labels.label[config.index_of(l)])] = 1;
        if (config.is_open(r)) touches_right[size_t(labels.label[config.index_of(r)])] = 1;
    }
    const auto territory = closed_bottom_territory(config);
    std::vector<Site> out;
    for (size_t i = 0; i < size_t(box.site_count()); ++i) {
        const Site s = config.site_at(i);
        if (!config.is_open(s)) continue;
        const int32_t id = labels.label[i];
        if (!touches_left[size_t(id)] || !touches_right[size_t(id)]) continue;
        if (has_closed_arm_to_bottom(config, s, territory)) out.push_back(s);
    }
    std::sort(out.begin(), out.end());
    return out;
}

double exact_crossing_probability(LatticeKind lattice, int radius, double p, SiteColor color,
                                  CrossDirection dir) {
    const BoxRegion box{{0, 0}, radius};
    const long long sites = box.site_count();
    if (sites > 20) throw std::invalid_argument("exact_crossing_probability: box too large");
    double total = 0.0;
    for (uint64_t mask = 0; mask < (uint64_t(1) << sites); ++mask) {
        std::vector<uint8_t> states(size_t(sites), 0);
        int open_count = 0;
        for (long long i = 0; i < sites; ++i)
            if (mask >> i & 1) {
                states[size_t(i)] = 1;
                ++open_count;
            }
        const Configuration config(lattice, box, p, TrialKey{}, states);
        if (has_crossing(config, color, dir).exists)
            total += std::pow(p, open_count) * std::pow(1.0 - p, double(sites - open_count));
    }
    return total;
}

namespace {

struct OracleHorseshoe {
    const Configuration& config;
    BoxRegion inner, outer;

    OracleHorseshoe(const Configuration& c, const HorseshoeSpec& spec)
        : config(c), inner(spec.inner_box()), outer(spec.outer_box()) {}

    bool in_region(Site s) const {
        if (!outer.contains(s)) return false;
        if (!inner.contains(s)) return true;
        return s.y == inner.ymax() || s.x == inner.xmin() || s.x == inner.xmax();
    }
    bool at_outer(Site s) const {
        return s.y == outer.ymax() || s.x == outer.xmin() || s.x == outer.xmax();
    }

    bool arm_exists(SiteColor color) const {
        std::vector<uint8_t> seen(size_t(config.box().site_count()), 0);
        std::vector<Site> queue;
        for (Site s : boundary_sites(inner, BoxEdge::TopAndSides)) {
            if (!in_region(s) || !config.has_color(s, color)) continue;
            const size_t i = config.index_of(s);
            if (!seen[i]) {
                seen[i] = 1;
                queue.push_back(s);
            }
        }
        for (size_t head = 0; head < queue.size(); ++head) {
            const Site s = queue[head];
            if (at_outer(s)) return true;
            for (Site t : neighbors(config.lattice(), s, color)) {
                if (!in_region(t) || !config.has_color(t, color)) continue;
                const size_t i = config.index_of(t);
                if (!seen[i]) {
                    seen[i] = 1;
                    queue.push_back(t);
                }
            }
        }
        return false;
    }

    // Does the component of region minus `removed` containing `from` hold an
    // open path from the inner boundary to the outer boundary? The component
    // is delimited in the closed (finer) adjacency; open motion uses the open
    // adjacency inside it.
    bool open_crossing_in_component(const std::vector<uint8_t>& removed, Site from,
                                    std::vector<int32_t>& comp, int32_t id) const {
        std::vector<Site> queue{from};
        comp[config.index_of(from)] = id;
        for (size_t head = 0; head < queue.size(); ++head) {
            for (Site t : neighbors(config.lattice(), queue[head], SiteColor::Closed)) {
                if (!in_region(t)) continue;
                const size_t i = config.index_of(t);
                if (removed[i] || comp[i] >= 0) continue;
                comp[i] = id;
                queue.push_back(t);
            }
        }
        // Open BFS restricted to this component.
        std::vector<uint8_t> seen(size_t(config.box().site_count()), 0);
        std::vector<Site> open_queue;
        for (Site s : boundary_sites(inner, BoxEdge::TopAndSides)) {
            if (!in_region(s) || !config.is_open(s)) continue;
            const size_t i = config.index_of(s);
            if (comp[i] != id || seen[i]) continue;
            seen[i] = 1;
            open_queue.push_back(s);
        }
        for (size_t head = 0; head < open_queue.size(); ++head) {
            const Site s = open_queue[head];
            if (at_outer(s)) return true;
            for (Site t : neighbors(config.lattice(), s, SiteColor::Open)) {
                if (!in_region(t) || !config.is_open(t)) continue;
                const size_t i = config.index_of(t);
                if (comp[i] != id || seen[i]) continue;
                seen[i] = 1;
                open_queue.push_back(t);
            }
        }
        return false;
    }

    bool separates(const std::vector<Site>& path) const {
        const size_t n = size_t(config.box().site_count());
        std::vector<uint8_t> removed(n, 0);
        for (Site s : path) removed[config.index_of(s)] = 1;
        std::vector<int32_t> comp(n, -1);
        int32_t next = 0;
        int crossing_components = 0;
        for (size_t i = 0; i < n; ++i) {
            const Site s = config.site_at(i);
            if (!in_region(s) || removed[i] || comp[i] >= 0) continue;
            if (open_crossing_in_component(removed, s, comp, next)) ++crossing_components;
            ++next;
            if (crossing_components >= 2) return true;
        }
        return false;
    }

    // Enumerate simple closed paths from the inner boundary to the outer
    // boundary; true as soon as one separates two open crossings.
    bool three_arm_by_path_search() const {
        const size_t n = size_t(config.box().site_count());
        std::vector<uint8_t> on_path(n, 0);
        std::vector<Site> path;
        std::function<bool(Site)> extend = [&](Site s) -> bool {
            const size_t i = config.index_of(s);
            on_path[i] = 1;
            path.push_back(s);
            bool found = false;
            if (at_outer(s)) {
                found = separates(path);
            } else {
                for (Site t : neighbors(config.lattice(), s, SiteColor::Closed)) {
                    if (!in_region(t) || config.is_open(t)) continue;
                    if (on_path[config.index_of(t)]) continue;
                    if (extend(t)) {
                        found = true;
                        break;
                    }
                }
            }
            path.pop_back();
            on_path[i] = 0;
            return found;
        };
        for (Site s : boundary_sites(inner, BoxEdge::TopAndSides)) {
            if (!in_region(s) || config.is_open(s)) continue;
            if (extend(s)) return true;
        }
        return false;
    }
};

}  // namespace

bool horseshoe_event_oracle(const Configuration& config, const HorseshoeSpec& spec, int kappa) {
    OracleHorseshoe geo(config, spec);
    if (kappa == 2)
        return geo.arm_exists(SiteColor::Open) && geo.arm_exists(SiteColor::Closed);
    if (kappa == 3) {
        if (!geo.arm_exists(SiteColor::Open) || !geo.arm_exists(SiteColor::Closed)) return false;
        return geo.three_arm_by_path_search();
    }
    throw std::invalid_argument("horseshoe_event_oracle: kappa must be 2 or 3");
}

bool sector_event_oracle(const Configuration& config, const SectorRegion& region) {
    const int n = region.outer_radius;
    const auto k1 = region.seed_k1();
    const auto k2 = region.seed_k2();
    auto member = [&](Site s) {
        if (in_sector(region, s)) return true;
        return std::find(k1.begin(), k1.end(), s) != k1.end() ||
               std::find(k2.begin(), k2.end(), s) != k2.end();
    };
    auto reaches = [&](SiteColor color, const std::vector<Site>& starts) {
        std::vector<uint8_t> seen(size_t(config.box().site_count()), 0);
        std::vector<Site> queue;
        for (Site s : starts)
            if (config.has_color(s, color) && !seen[config.index_of(s)]) {
                seen[config.index_of(s)] = 1;
                queue.push_back(s);
            }
        for (size_t head = 0; head < queue.size(); ++head) {
            const Site s = queue[head];
            if (site_norm(s) == n) return true;
            for (Site t : neighbors(config.lattice(), s, color)) {
                if (!member(t) || !config.has_color(t, color)) continue;
                const size_t i = config.index_of(t);
                if (!seen[i]) {
                    seen[i] = 1;
                    queue.push_back(t);
                }
            }
        }
        return false;
    };
    return reaches(SiteColor::Closed, k1) && reaches(SiteColor::Open, k2);
}

}  // namespace perc
