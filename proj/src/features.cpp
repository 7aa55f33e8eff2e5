#include "perc/features.hpp"

#include <algorithm>
#include <array>
#include <functional>
#include <stdexcept>

namespace perc {
namespace {

// Marks open sites with a closed arm to the given horizontal boundary row.
// Sites in the row itself qualify with an arm of length zero.
std::vector<uint8_t> closed_arm_marks(const Configuration& config, bool to_bottom) {
    const BoxRegion& box = config.box();
    const size_t n = size_t(box.site_count());
    const auto& offsets = neighbor_offsets(config.lattice(), SiteColor::Closed);
    const int row = to_bottom ? box.ymin() : box.ymax();

    std::vector<uint8_t> territory(n, 0);
    std::vector<Site> queue;
    for (int x = box.xmin(); x <= box.xmax(); ++x) {
        const Site s{x, row};
        if (!config.is_open(s)) {
            territory[config.index_of(s)] = 1;
            queue.push_back(s);
        }
    }
    for (size_t head = 0; head < queue.size(); ++head) {
        const Site s = queue[head];
        for (Site d : offsets) {
            const Site t{s.x + d.x, s.y + d.y};
            if (!box.contains(t) || config.is_open(t)) continue;
            const size_t i = config.index_of(t);
            if (!territory[i]) {
                territory[i] = 1;
                queue.push_back(t);
            }
        }
    }
    std::vector<uint8_t> marks(n, 0);
    for (size_t i = 0; i < n; ++i) {
        const Site s = config.site_at(i);
        if (!config.is_open(s)) continue;
        if (s.y == row) {
            marks[i] = 1;
            continue;
        }
        for (Site d : offsets) {
            const Site t{s.x + d.x, s.y + d.y};
            if (box.contains(t) && territory[config.index_of(t)]) {
                marks[i] = 1;
                break;
            }
        }
    }
    return marks;
}

TerminalStructure horizontal_structure(const Configuration& config) {
    return analyze_terminals(config, SiteColor::Open,
                             boundary_sites(config.box(), BoxEdge::Left),
                             boundary_sites(config.box(), BoxEdge::Right));
}

std::vector<Site> crossing_sites_with_arm(const Configuration& config,
                                          const TerminalStructure& ts, bool to_bottom) {
    std::vector<Site> out;
    if (!ts.spans) return out;
    const auto marks = closed_arm_marks(config, to_bottom);
    for (size_t i = 0; i < marks.size(); ++i)
        if (ts.on_some_path[i] && marks[i]) out.push_back(config.site_at(i));
    std::sort(out.begin(), out.end());
    return out;
}

// Recovers the traversal order of a crossing path from its site set: a simple
// path through all sites, one endpoint on each of the two vertical edges.
// Backtracking with a most-constrained-first neighbor order; the induced
// graph is a path with occasional short chords, so this resolves immediately
// in practice.
std::optional<std::vector<Site>> order_path_sites(const Configuration& config,
                                                  const std::vector<Site>& sites) {
    const BoxRegion& box = config.box();
    const size_t k = sites.size();
    if (k == 0) return std::nullopt;
    std::vector<int> id_of(size_t(box.site_count()), -1);
    for (size_t i = 0; i < k; ++i) id_of[config.index_of(sites[i])] = int(i);
    const auto& offsets = neighbor_offsets(config.lattice(), SiteColor::Open);
    std::vector<std::vector<int>> adj(k);
    for (size_t i = 0; i < k; ++i) {
        for (Site d : offsets) {
            const Site t{sites[i].x + d.x, sites[i].y + d.y};
            if (!box.contains(t)) continue;
            const int j = id_of[config.index_of(t)];
            if (j >= 0 && size_t(j) != i) adj[i].push_back(j);
        }
    }
    std::vector<int> starts, order;
    std::vector<uint8_t> used(k, 0);
    for (size_t i = 0; i < k; ++i)
        if (sites[i].x == box.xmin()) starts.push_back(int(i));
    long budget = 2000000;
    std::function<bool(int)> extend = [&](int v) -> bool {
        if (--budget < 0) return false;
        order.push_back(v);
        used[size_t(v)] = 1;
        if (order.size() == k && sites[size_t(v)].x == box.xmax()) return true;
        // Fewest onward options first.
        std::vector<std::pair<int, int>> cand;
        for (int t : adj[size_t(v)]) {
            if (used[size_t(t)]) continue;
            int deg = 0;
            for (int u : adj[size_t(t)])
                if (!used[size_t(u)]) ++deg;
            cand.push_back({deg, t});
        }
        std::sort(cand.begin(), cand.end());
        for (auto [deg, t] : cand)
            if (extend(t)) return true;
        order.pop_back();
        used[size_t(v)] = 0;
        return false;
    };
    for (int s : starts) {
        if (extend(s)) {
            std::vector<Site> path;
            for (int v : order) path.push_back(sites[size_t(v)]);
            return path;
        }
        order.clear();
        std::fill(used.begin(), used.end(), 0);
    }
    return std::nullopt;
}

std::optional<CrossingPath> crossing_path(const Configuration& config, bool lowest) {
    const auto sites = lowest ? lowest_crossing_sites(config) : highest_crossing_sites(config);
    if (sites.empty()) return std::nullopt;
    auto ordered = order_path_sites(config, sites);
    if (!ordered) throw std::logic_error("crossing path ordering failed");
    CrossingPath path;
    path.kind = lowest ? CrossingPath::Kind::Lowest : CrossingPath::Kind::Highest;
    path.sites = std::move(*ordered);
    return path;
}

}  // namespace

PivotalReport pivotal_sites(const Configuration& config) {
    PivotalReport report;
    report.box_radius = config.box().radius;
    auto ts = horizontal_structure(config);
    report.crossing_exists = ts.spans;
    report.pivotal_sites = std::move(ts.cut_vertices);
    const int n = report.box_radius;
    if (report.pivotal_sites.empty()) {
        report.min_height = 2 * n;
    } else {
        int min_y = report.pivotal_sites.front().y;
        for (const Site& s : report.pivotal_sites) min_y = std::min(min_y, s.y);
        report.min_height = min_y - config.box().ymin();
    }
    return report;
}

int min_pivotal_height(const PivotalReport& report) { return report.min_height; }

int block_indicator_count(const PivotalReport& report, int m) {
    const int n = report.box_radius;
    if (m < 1 || m > n) throw std::invalid_argument("block_indicator_count: m out of range");
    const int nblocks = (2 * n + m - 1) / m;
    std::vector<uint8_t> hit(size_t(nblocks), 0);
    for (const Site& s : report.pivotal_sites) {
        if (s.y > -n + m) continue;
        int k = s.x <= -n + m ? 0 : (s.x + n - 1) / m;  // first block absorbs x = -n
        if (k >= nblocks) k = nblocks - 1;
        hit[size_t(k)] = 1;
    }
    int count = 0;
    for (uint8_t h : hit) count += h;
    return count;
}

int strip_pivotal_count(const PivotalReport& report, int m) {
    const int n = report.box_radius;
    if (m < 0 || m > 2 * n) throw std::invalid_argument("strip_pivotal_count: m out of range");
    int count = 0;
    for (const Site& s : report.pivotal_sites)
        if (s.y <= -n + m) ++count;
    return count;
}

std::vector<Site> lowest_crossing_sites(const Configuration& config) {
    return crossing_sites_with_arm(config, horizontal_structure(config), true);
}

std::vector<Site> highest_crossing_sites(const Configuration& config) {
    return crossing_sites_with_arm(config, horizontal_structure(config), false);
}

std::optional<CrossingPath> lowest_crossing(const Configuration& config) {
    return crossing_path(config, true);
}

std::optional<CrossingPath> highest_crossing(const Configuration& config) {
    return crossing_path(config, false);
}

int highest_crossing_min_height(const Configuration& config) {
    const auto sites = highest_crossing_sites(config);
    const int n = config.box().radius;
    if (sites.empty()) return 2 * n;
    int min_y = sites.front().y;
    for (const Site& s : sites) min_y = std::min(min_y, s.y);
    return min_y - config.box().ymin();
}

std::optional<int> lowest_site_height_of_highest_crossing(const Configuration& config) {
    const auto sites = highest_crossing_sites(config);
    if (sites.empty()) return std::nullopt;
    int min_y = sites.front().y;
    for (const Site& s : sites) min_y = std::min(min_y, s.y);
    return min_y;
}

ExplorationResult exploration_walk(const Configuration& config) {
    if (config.lattice() != LatticeKind::Triangular)
        throw std::invalid_argument("exploration_walk: triangular lattice only");
    const BoxRegion& box = config.box();
    // Sites outside the box: closed below the bottom row, open elsewhere.
    auto is_open_ext = [&](Site s) {
        if (box.contains(s)) return config.is_open(s);
        return s.y >= box.ymin();
    };
    // The two common neighbors of an adjacent pair, per direction.
    const auto& offsets = neighbor_offsets(LatticeKind::Triangular, SiteColor::Open);
    auto commons = [&](Site u, Site v) {
        std::array<Site, 2> out{};
        int found = 0;
        for (Site c : offsets) {
            const Site w{u.x + c.x, u.y + c.y};
            const int dx = v.x - w.x, dy = v.y - w.y;
            for (Site e : offsets)
                if (e.x == dx && e.y == dy) {
                    out[size_t(found++)] = w;
                    break;
                }
            if (found == 2) break;
        }
        return out;
    };

    Site left{box.xmin() - 1, box.ymin()};       // open boundary
    Site right{box.xmin(), box.ymin() - 1};      // closed boundary
    Site front{box.xmin(), box.ymin()};
    const Site exit_site{box.xmax() + 1, box.ymin()};

    ExplorationResult result;
    result.walk.kind = CrossingPath::Kind::Exploration;
    std::vector<uint8_t> discovered(size_t(box.site_count()), 0);
    const long long max_steps = 16 * box.site_count() + 64;
    for (long long step = 0; step < max_steps; ++step) {
        result.walk.sites.push_back(front);
        Site replaced;
        if (is_open_ext(front)) {
            if (box.contains(front)) discovered[config.index_of(front)] = 1;
            replaced = left;
            left = front;
            if (front == exit_site) break;
            const auto cn = commons(left, right);
            front = cn[0] == replaced ? cn[1] : cn[0];
        } else {
            replaced = right;
            right = front;
            const auto cn = commons(left, right);
            front = cn[0] == replaced ? cn[1] : cn[0];
        }
        if (step + 1 == max_steps) throw std::logic_error("exploration_walk: no termination");
    }

    // F_n: discovered open sites in a left-right spanning cluster.
    const auto labels = label_clusters(config, SiteColor::Open);
    std::vector<uint8_t> touches_left(size_t(labels.cluster_count), 0),
        touches_right(size_t(labels.cluster_count), 0);
    for (int y = box.ymin(); y <= box.ymax(); ++y) {
        const int32_t ll = labels.label[config.index_of({box.xmin(), y})];
        const int32_t lr = labels.label[config.index_of({box.xmax(), y})];
        if (ll >= 0) touches_left[size_t(ll)] = 1;
        if (lr >= 0) touches_right[size_t(lr)] = 1;
    }
    for (size_t i = 0; i < discovered.size(); ++i) {
        if (!discovered[i]) continue;
        const int32_t l = labels.label[i];
        if (l >= 0 && touches_left[size_t(l)] && touches_right[size_t(l)])
            result.pioneering.push_back(config.site_at(i));
    }
    std::sort(result.pioneering.begin(), result.pioneering.end());
    return result;
}

TrialFeatures compute_trial_features(const Configuration& config,
                                     const TrialFeatureOptions& options) {
    TrialFeatures f;
    const int n = config.box().radius;
    auto ts = horizontal_structure(config);
    f.crossing = ts.spans;
    f.pivotal = std::move(ts.cut_vertices);
    if (f.pivotal.empty()) {
        f.min_pivotal_height = 2 * n;
    } else {
        int min_y = f.pivotal.front().y;
        for (const Site& s : f.pivotal) min_y = std::min(min_y, s.y);
        f.min_pivotal_height = min_y - config.box().ymin();
    }
    f.highest_min_height = 2 * n;
    if (options.need_lowest && ts.spans) {
        const auto marks = closed_arm_marks(config, true);
        for (size_t i = 0; i < marks.size(); ++i)
            if (ts.on_some_path[i] && marks[i]) ++f.lowest_size;
    }
    if (options.need_highest && ts.spans) {
        const auto marks = closed_arm_marks(config, false);
        int min_y = config.box().ymax() + 1;
        for (size_t i = 0; i < marks.size(); ++i)
            if (ts.on_some_path[i] && marks[i]) min_y = std::min(min_y, config.site_at(i).y);
        if (min_y <= config.box().ymax()) {
            f.lowest_site_of_highest = min_y;
            f.highest_min_height = min_y - config.box().ymin();
        }
    }
    if (options.need_pioneers) {
        if (config.lattice() == LatticeKind::Triangular)
            f.pioneer_size = static_cast<long long>(exploration_walk(config).pioneering.size());
    }
    return f;
}

}  // namespace perc
