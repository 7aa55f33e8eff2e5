#include "perc/armevents.hpp"

#include <algorithm>
#include <optional>
#include <stdexcept>

namespace perc {
namespace {

bool on_top_or_sides(const BoxRegion& box, Site s) {
    if (!box.contains(s)) return false;
    return s.y == box.ymax() || s.x == box.xmin() || s.x == box.xmax();
}

struct HorseshoeGeometry {
    const Configuration& config;
    HorseshoeSpec spec;
    BoxRegion b1, b2;

    HorseshoeGeometry(const Configuration& c, const HorseshoeSpec& s)
        : config(c), spec(s), b1(s.inner_box()), b2(s.outer_box()) {
        if (s.inner_exp > s.outer_exp)
            throw std::invalid_argument("horseshoe_event: rho > nu");
        if (!c.box().contains({b2.xmin(), b2.ymin()}) || !c.box().contains({b2.xmax(), b2.ymax()}))
            throw std::invalid_argument("horseshoe_event: geometry does not fit in box");
    }
    // Arm graph: the horseshoe plus the inner start boundary.
    bool in_region(Site s) const {
        if (!b2.contains(s)) return false;
        return !b1.contains(s) || on_top_or_sides(b1, s);
    }
    bool at_outer(Site s) const { return on_top_or_sides(b2, s); }
    std::vector<Site> inner_boundary() const { return boundary_sites(b1, BoxEdge::TopAndSides); }
};

// BFS for one arm: from start sites of the color, within the region, to the
// outer boundary. Returns the outer endpoint reached, if any.
std::optional<Site> arm_crossing(const HorseshoeGeometry& geo, SiteColor color,
                                 const std::vector<Site>& starts) {
    const Configuration& config = geo.config;
    const auto& offsets = neighbor_offsets(config.lattice(), color);
    std::vector<uint8_t> seen(size_t(config.box().site_count()), 0);
    std::vector<Site> queue;
    for (Site s : starts) {
        if (!geo.in_region(s) || !config.has_color(s, color)) continue;
        const size_t i = config.index_of(s);
        if (!seen[i]) {
            seen[i] = 1;
            queue.push_back(s);
        }
    }
    for (size_t head = 0; head < queue.size(); ++head) {
        const Site s = queue[head];
        if (geo.at_outer(s)) return s;
        for (Site d : offsets) {
            const Site t{s.x + d.x, s.y + d.y};
            if (!geo.in_region(t) || !config.has_color(t, color)) continue;
            const size_t i = config.index_of(t);
            if (!seen[i]) {
                seen[i] = 1;
                queue.push_back(t);
            }
        }
    }
    return std::nullopt;
}

ArmEventOutcome three_arm_event(const HorseshoeGeometry& geo) {
    const Configuration& config = geo.config;
    const size_t n = size_t(config.box().site_count());
    const auto inner = geo.inner_boundary();

    // Open clusters grown from the inner boundary; note which reach the outer
    // boundary. label: -1 unvisited.
    std::vector<int32_t> open_label(n, -1);
    std::vector<Site> open_reps;  // one outer endpoint per crossing cluster
    std::vector<int32_t> crossing_ids;
    {
        const auto& offsets = neighbor_offsets(config.lattice(), SiteColor::Open);
        int32_t next = 0;
        for (Site seed : inner) {
            if (!geo.in_region(seed) || !config.is_open(seed)) continue;
            if (open_label[config.index_of(seed)] >= 0) continue;
            const int32_t id = next++;
            std::vector<Site> queue{seed};
            open_label[config.index_of(seed)] = id;
            std::optional<Site> outer;
            for (size_t head = 0; head < queue.size(); ++head) {
                const Site s = queue[head];
                if (!outer && geo.at_outer(s)) outer = s;
                for (Site d : offsets) {
                    const Site t{s.x + d.x, s.y + d.y};
                    if (!geo.in_region(t) || !config.is_open(t)) continue;
                    const size_t i = config.index_of(t);
                    if (open_label[i] < 0) {
                        open_label[i] = id;
                        queue.push_back(t);
                    }
                }
            }
            if (outer) {
                crossing_ids.push_back(id);
                open_reps.push_back(*outer);
            }
        }
    }
    if (crossing_ids.size() < 2) return {};

    // Closed clusters from the inner boundary that reach the outer boundary.
    std::vector<uint8_t> closed_seen(n, 0);
    const auto& closed_offsets = neighbor_offsets(config.lattice(), SiteColor::Closed);
    for (Site seed : inner) {
        if (!geo.in_region(seed) || config.is_open(seed)) continue;
        if (closed_seen[config.index_of(seed)]) continue;
        std::vector<Site> cluster{seed};
        closed_seen[config.index_of(seed)] = 1;
        std::optional<Site> outer;
        for (size_t head = 0; head < cluster.size(); ++head) {
            const Site s = cluster[head];
            if (!outer && geo.at_outer(s)) outer = s;
            for (Site d : closed_offsets) {
                const Site t{s.x + d.x, s.y + d.y};
                if (!geo.in_region(t) || config.is_open(t)) continue;
                const size_t i = config.index_of(t);
                if (!closed_seen[i]) {
                    closed_seen[i] = 1;
                    cluster.push_back(t);
                }
            }
        }
        if (!outer) continue;

        // Does removing this cluster leave open crossing clusters in at least
        // two distinct components? Component flood over region minus cluster,
        // colour-blind, in the closed (finer-cut) adjacency.
        std::vector<uint8_t> in_cluster(n, 0);
        for (Site s : cluster) in_cluster[config.index_of(s)] = 1;
        std::vector<int32_t> comp(n, -1);
        int32_t comp_count = 0;
        auto flood = [&](Site from) {
            const int32_t id = comp_count++;
            std::vector<Site> queue{from};
            comp[config.index_of(from)] = id;
            for (size_t head = 0; head < queue.size(); ++head) {
                const Site s = queue[head];
                for (Site d : closed_offsets) {
                    const Site t{s.x + d.x, s.y + d.y};
                    if (!geo.in_region(t)) continue;
                    const size_t i = config.index_of(t);
                    if (in_cluster[i] || comp[i] >= 0) continue;
                    comp[i] = id;
                    queue.push_back(t);
                }
            }
        };
        std::vector<int32_t> comp_of_crossing;
        bool two_sides = false;
        for (size_t k = 0; k < crossing_ids.size() && !two_sides; ++k) {
            const size_t rep = config.index_of(open_reps[k]);
            if (comp[rep] < 0) flood(open_reps[k]);
            const int32_t c = comp[rep];
            for (int32_t prior : comp_of_crossing)
                if (prior != c) two_sides = true;
            comp_of_crossing.push_back(c);
        }
        if (two_sides) {
            ArmEventOutcome out;
            out.occurred = true;
            out.witness_arm_endpoints = {open_reps[0], *outer, open_reps[1]};
            return out;
        }
    }
    return {};
}

}  // namespace

ArmEventOutcome horseshoe_event(const Configuration& config, const HorseshoeSpec& spec,
                                const ArmPattern& pattern) {
    HorseshoeGeometry geo(config, spec);
    if (pattern.colors.size() == 2) {
        std::vector<Site> start_open, start_closed;
        if (pattern.use_start_arcs) {
            start_open = spec.default_arc_top();
            start_closed = spec.default_arc_left();
            if (start_open.empty() || start_closed.empty())
                throw std::invalid_argument("horseshoe_event: arcs degenerate for rho < 2");
            if (pattern.colors[0] == SiteColor::Closed) std::swap(start_open, start_closed);
        } else {
            start_open = start_closed = geo.inner_boundary();
        }
        const auto open_end = arm_crossing(geo, SiteColor::Open, start_open);
        const auto closed_end = arm_crossing(geo, SiteColor::Closed, start_closed);
        ArmEventOutcome out;
        if (open_end && closed_end) {
            out.occurred = true;
            out.witness_arm_endpoints = {*open_end, *closed_end};
        }
        return out;
    }
    if (pattern.colors.size() == 3) {
        if (pattern.colors[0] != SiteColor::Open || pattern.colors[1] != SiteColor::Closed ||
            pattern.colors[2] != SiteColor::Open)
            throw std::invalid_argument("horseshoe_event: three-arm pattern must be open,closed,open");
        return three_arm_event(geo);
    }
    throw std::invalid_argument("horseshoe_event: pattern length must be 2 or 3");
}

ArmEventOutcome sector_event(const Configuration& config, const SectorRegion& region) {
    const int l = region.inner_radius, n = region.outer_radius;
    if (l < 1 || 2 * l > n) throw std::invalid_argument("sector_event: need 1 <= l <= n/2");
    const BoxRegion& box = config.box();
    if (!box.contains({n, 0}) || !box.contains({0, n}) ||
        (region.aperture == SectorAperture::HalfPlane && !box.contains({-n, 0})))
        throw std::invalid_argument("sector_event: geometry does not fit in box");

    const auto k1 = region.seed_k1();
    const auto k2 = region.seed_k2();
    auto in_graph = [&](Site s) {
        if (in_sector(region, s)) return true;
        for (Site t : k1)
            if (t == s) return true;
        for (Site t : k2)
            if (t == s) return true;
        return false;
    };
    auto arm = [&](SiteColor color, const std::vector<Site>& starts) -> std::optional<Site> {
        const auto& offsets = neighbor_offsets(config.lattice(), color);
        std::vector<uint8_t> seen(size_t(box.site_count()), 0);
        std::vector<Site> queue;
        for (Site s : starts) {
            if (!config.has_color(s, color)) continue;
            const size_t i = config.index_of(s);
            if (!seen[i]) {
                seen[i] = 1;
                queue.push_back(s);
            }
        }
        for (size_t head = 0; head < queue.size(); ++head) {
            const Site s = queue[head];
            if (site_norm(s) == n) return s;
            for (Site d : offsets) {
                const Site t{s.x + d.x, s.y + d.y};
                if (!in_graph(t) || !config.has_color(t, color)) continue;
                const size_t i = config.index_of(t);
                if (!seen[i]) {
                    seen[i] = 1;
                    queue.push_back(t);
                }
            }
        }
        return std::nullopt;
    };
    const auto closed_end = arm(SiteColor::Closed, k1);
    const auto open_end = arm(SiteColor::Open, k2);
    ArmEventOutcome out;
    if (closed_end && open_end) {
        out.occurred = true;
        out.witness_arm_endpoints = {*closed_end, *open_end};
    }
    return out;
}

BernoulliEstimate estimate_event_probability(const std::function<bool(const TrialKey&)>& event,
                                             long long trials, const TrialKey& key_base) {
    if (trials < 1) throw std::invalid_argument("estimate_event_probability: trials >= 1");
    long long successes = 0;
    for (long long t = 0; t < trials; ++t) {
        TrialKey key = key_base;
        key.trial_index = key_base.trial_index + uint64_t(t);
        if (event(key)) ++successes;
    }
    return make_estimate(successes, trials);
}

}  // namespace perc
