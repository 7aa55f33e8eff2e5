#include "perc/connectivity.hpp"

#include <algorithm>
#include <cstring>
#include <queue>
#include <stdexcept>

namespace perc {
namespace {

struct UnionFind {
    std::vector<int32_t> parent;
    explicit UnionFind(size_t n) : parent(n) {
        for (size_t i = 0; i < n; ++i) parent[i] = int32_t(i);
    }
    int32_t find(int32_t v) {
        int32_t root = v;
        while (parent[root] != root) root = parent[root];
        while (parent[v] != root) {
            int32_t next = parent[v];
            parent[v] = root;
            v = next;
        }
        return root;
    }
    void unite(int32_t a, int32_t b) {
        a = find(a);
        b = find(b);
        if (a != b) parent[std::max(a, b)] = std::min(a, b);
    }
};

}  // namespace

ClusterLabeling label_clusters(const Configuration& config, SiteColor color) {
    const BoxRegion& box = config.box();
    const size_t n = size_t(box.site_count());
    const int w = config.width();
    const auto& offsets = neighbor_offsets(config.lattice(), color);
    UnionFind uf(n);
    for (size_t i = 0; i < n; ++i) {
        if (!config.has_color(config.site_at(i), color)) continue;
        const Site s = config.site_at(i);
        for (Site d : offsets) {
            // Only look backward; forward pairs are handled from the other end.
            const Site t{s.x + d.x, s.y + d.y};
            if (!box.contains(t)) continue;
            const size_t j = config.index_of(t);
            if (j < i && config.has_color(t, color)) uf.unite(int32_t(i), int32_t(j));
        }
        (void)w;
    }
    ClusterLabeling out;
    out.color = color;
    out.label.assign(n, -1);
    std::vector<int32_t> remap(n, -1);
    for (size_t i = 0; i < n; ++i) {
        if (!config.has_color(config.site_at(i), color)) continue;
        const int32_t root = uf.find(int32_t(i));
        if (remap[root] < 0) remap[root] = out.cluster_count++;
        out.label[i] = remap[root];
    }
    return out;
}

CrossingReport has_crossing(const Configuration& config, SiteColor color, CrossDirection dir,
                            const BoxRegion& region) {
    const BoxRegion& box = config.box();
    const auto& offsets = neighbor_offsets(config.lattice(), color);
    std::vector<uint8_t> seen(size_t(box.site_count()), 0);
    std::vector<Site> queue;
    const auto start = boundary_sites(region, dir == CrossDirection::Horizontal ? BoxEdge::Left
                                                                               : BoxEdge::Bottom);
    for (Site s : start) {
        if (!box.contains(s) || !config.has_color(s, color)) continue;
        const size_t i = config.index_of(s);
        if (!seen[i]) {
            seen[i] = 1;
            queue.push_back(s);
        }
    }
    const int goal_coord = dir == CrossDirection::Horizontal ? region.xmax() : region.ymax();
    for (size_t head = 0; head < queue.size(); ++head) {
        const Site s = queue[head];
        const int coord = dir == CrossDirection::Horizontal ? s.x : s.y;
        if (coord == goal_coord) return {true, s};
        for (Site d : offsets) {
            const Site t{s.x + d.x, s.y + d.y};
            if (!region.contains(t) || !config.has_color(t, color)) continue;
            const size_t i = config.index_of(t);
            if (!seen[i]) {
                seen[i] = 1;
                queue.push_back(t);
            }
        }
    }
    return {false, std::nullopt};
}

CrossingReport has_crossing(const Configuration& config, SiteColor color, CrossDirection dir) {
    return has_crossing(config, color, dir, config.box());
}

TerminalStructure analyze_terminals(const Configuration& config, SiteColor color,
                                    const std::vector<Site>& terminal_a,
                                    const std::vector<Site>& terminal_b) {
    const BoxRegion& box = config.box();
    const int32_t n = int32_t(box.site_count());
    const int32_t va = n, vb = n + 1;
    const auto& offsets = neighbor_offsets(config.lattice(), color);
    const int noff = int(offsets.size());

    TerminalStructure out;
    out.on_some_path.assign(size_t(n), 0);

    std::vector<uint8_t> term(size_t(n), 0);  // bit0: in terminal_a, bit1: in terminal_b
    std::vector<int32_t> list_a, list_b;
    for (Site s : terminal_a) {
        if (!box.contains(s) || !config.has_color(s, color)) continue;
        const int32_t i = int32_t(config.index_of(s));
        if (!(term[i] & 1)) {
            term[i] |= 1;
            list_a.push_back(i);
        }
    }
    for (Site s : terminal_b) {
        if (!box.contains(s) || !config.has_color(s, color)) continue;
        const int32_t i = int32_t(config.index_of(s));
        if (!(term[i] & 2)) {
            term[i] |= 2;
            list_b.push_back(i);
        }
    }
    if (list_a.empty() || list_b.empty()) return out;

    // k-th neighbor of node v, or -1 for an empty slot, or -2 when exhausted.
    auto neighbor_at = [&](int32_t v, int k) -> int32_t {
        if (v == va) return k < int(list_a.size()) ? list_a[size_t(k)] : -2;
        if (v == vb) return k < int(list_b.size()) ? list_b[size_t(k)] : -2;
        if (k < noff) {
            const Site s = config.site_at(size_t(v));
            const Site t{s.x + offsets[size_t(k)].x, s.y + offsets[size_t(k)].y};
            if (!box.contains(t) || !config.has_color(t, color)) return -1;
            return int32_t(config.index_of(t));
        }
        if (k == noff) return (term[size_t(v)] & 1) ? va : -1;
        if (k == noff + 1) return (term[size_t(v)] & 2) ? vb : -1;
        return -2;
    };

    // Iterative Tarjan biconnected components rooted at the virtual terminal.
    std::vector<int32_t> disc(size_t(n) + 2, -1), low(size_t(n) + 2, -1);
    struct Frame {
        int32_t v;
        int32_t parent;
        int32_t k;
    };
    std::vector<Frame> frames;
    std::vector<std::pair<int32_t, int32_t>> edges;  // edge stack
    std::vector<std::vector<int32_t>> blocks;        // vertex lists
    std::vector<int32_t> block_of(size_t(n) + 2, -1);
    std::vector<uint8_t> is_cut(size_t(n) + 2, 0);
    std::vector<int32_t> stamp(size_t(n) + 2, -1);  // block-membership dedup
    int32_t timer = 0;
    int root_children = 0;

    disc[size_t(va)] = low[size_t(va)] = timer++;
    frames.push_back({va, -1, 0});
    while (!frames.empty()) {
        Frame& f = frames.back();
        const int32_t w = neighbor_at(f.v, f.k);
        if (w == -2) {
            const int32_t v = f.v, parent = f.parent;
            frames.pop_back();
            if (parent < 0) break;
            if (low[size_t(v)] < low[size_t(parent)]) low[size_t(parent)] = low[size_t(v)];
            if (low[size_t(v)] >= disc[size_t(parent)]) {
                if (parent != va) is_cut[size_t(parent)] = 1;
                const int32_t bid = int32_t(blocks.size());
                blocks.emplace_back();
                auto& verts = blocks.back();
                auto add_vertex = [&](int32_t u) {
                    if (stamp[size_t(u)] != bid) {
                        stamp[size_t(u)] = bid;
                        verts.push_back(u);
                        if (block_of[size_t(u)] < 0) block_of[size_t(u)] = bid;
                    }
                };
                while (!edges.empty()) {
                    const auto e = edges.back();
                    edges.pop_back();
                    add_vertex(e.first);
                    add_vertex(e.second);
                    if (e.first == parent && e.second == v) break;
                }
            }
            if (parent == va) ++root_children;
            continue;
        }
        ++f.k;
        if (w == -1 || w == f.parent) continue;
        if (disc[size_t(w)] == -1) {
            edges.push_back({f.v, w});
            disc[size_t(w)] = low[size_t(w)] = timer++;
            frames.push_back({w, f.v, 0});
        } else if (disc[size_t(w)] < disc[size_t(f.v)]) {
            edges.push_back({f.v, w});
            if (disc[size_t(w)] < low[size_t(f.v)]) low[size_t(f.v)] = disc[size_t(w)];
        }
    }
    if (disc[size_t(vb)] == -1) return out;  // terminals not connected
    out.spans = true;
    if (root_children > 1) is_cut[size_t(va)] = 1;

    // Block-cut tree: nodes are blocks [0,B) then cut vertices [B, B+C).
    const int32_t nblocks = int32_t(blocks.size());
    std::vector<int32_t> cut_node(size_t(n) + 2, -1);
    int32_t nnodes = nblocks;
    for (int32_t v = 0; v < n + 2; ++v)
        if (is_cut[size_t(v)]) cut_node[size_t(v)] = nnodes++;
    std::vector<std::vector<int32_t>> tree(static_cast<size_t>(nnodes));
    for (int32_t b = 0; b < nblocks; ++b) {
        for (int32_t v : blocks[size_t(b)]) {
            if (is_cut[size_t(v)]) {
                tree[size_t(b)].push_back(cut_node[size_t(v)]);
                tree[size_t(cut_node[size_t(v)])].push_back(b);
            }
        }
    }
    auto node_of = [&](int32_t v) {
        return is_cut[size_t(v)] ? cut_node[size_t(v)] : block_of[size_t(v)];
    };
    const int32_t src = node_of(va), dst = node_of(vb);
    std::vector<int32_t> prev(size_t(nnodes), -2);
    std::queue<int32_t> bfs;
    bfs.push(src);
    prev[size_t(src)] = -1;
    while (!bfs.empty() && prev[size_t(dst)] == -2) {
        const int32_t u = bfs.front();
        bfs.pop();
        for (int32_t t : tree[size_t(u)])
            if (prev[size_t(t)] == -2) {
                prev[size_t(t)] = u;
                bfs.push(t);
            }
    }
    if (prev[size_t(dst)] == -2) return out;  // should not happen when spans

    std::vector<int32_t> cut_vertex_of(size_t(nnodes), -1);
    for (int32_t u = 0; u < n + 2; ++u)
        if (cut_node[size_t(u)] >= 0) cut_vertex_of[size_t(cut_node[size_t(u)])] = u;
    for (int32_t node = dst; node != -1; node = prev[size_t(node)]) {
        if (node < nblocks) {
            for (int32_t v : blocks[size_t(node)])
                if (v < n) out.on_some_path[size_t(v)] = 1;
        } else {
            const int32_t v = cut_vertex_of[size_t(node)];
            if (v < n) {
                out.cut_vertices.push_back(config.site_at(size_t(v)));
                out.on_some_path[size_t(v)] = 1;
            }
        }
    }
    std::sort(out.cut_vertices.begin(), out.cut_vertices.end());
    return out;
}

std::vector<Site> terminal_cut_vertices(const Configuration& config,
                                        const std::vector<Site>& left_terminal,
                                        const std::vector<Site>& right_terminal) {
    auto ts = analyze_terminals(config, SiteColor::Open, left_terminal, right_terminal);
    if (!ts.spans) throw std::invalid_argument("terminal_cut_vertices: no spanning cluster");
    return ts.cut_vertices;
}

bool two_disjoint_arms(const Configuration& config, Site s, SiteColor color,
                       const std::vector<Site>& target_a, const std::vector<Site>& target_b) {
    const BoxRegion& box = config.box();
    if (!box.contains(s) || !config.has_color(s, color)) return false;
    const int32_t n = int32_t(box.site_count());
    // Vertex-split flow network: in(i)=2i, out(i)=2i+1, then A, B, sink.
    const int32_t node_a = 2 * n, node_b = 2 * n + 1, sink = 2 * n + 2;
    struct FlowEdge {
        int32_t to;
        int32_t cap;
        int32_t rev;
    };
    std::vector<std::vector<FlowEdge>> g(size_t(sink) + 1);
    auto add_edge = [&](int32_t from, int32_t to, int32_t cap) {
        g[size_t(from)].push_back({to, cap, int32_t(g[size_t(to)].size())});
        g[size_t(to)].push_back({from, 0, int32_t(g[size_t(from)].size()) - 1});
    };
    const auto& offsets = neighbor_offsets(config.lattice(), color);
    std::vector<uint8_t> in_a(size_t(n), 0), in_b(size_t(n), 0);
    for (Site t : target_a)
        if (box.contains(t)) in_a[config.index_of(t)] = 1;
    for (Site t : target_b)
        if (box.contains(t)) in_b[config.index_of(t)] = 1;
    for (int32_t i = 0; i < n; ++i) {
        const Site u = config.site_at(size_t(i));
        if (!config.has_color(u, color)) continue;
        add_edge(2 * i, 2 * i + 1, 1);
        for (Site d : offsets) {
            const Site t{u.x + d.x, u.y + d.y};
            if (!box.contains(t) || !config.has_color(t, color)) continue;
            add_edge(2 * i + 1, 2 * int32_t(config.index_of(t)), 1);
        }
        if (in_a[size_t(i)]) add_edge(2 * i + 1, node_a, 1);
        if (in_b[size_t(i)]) add_edge(2 * i + 1, node_b, 1);
    }
    add_edge(node_a, sink, 1);
    add_edge(node_b, sink, 1);

    const int32_t source = 2 * int32_t(config.index_of(s)) + 1;
    int flow = 0;
    for (int round = 0; round < 2; ++round) {
        std::vector<int32_t> prev_node(size_t(sink) + 1, -1), prev_edge(size_t(sink) + 1, -1);
        std::queue<int32_t> bfs;
        bfs.push(source);
        prev_node[size_t(source)] = source;
        while (!bfs.empty() && prev_node[size_t(sink)] == -1) {
            const int32_t u = bfs.front();
            bfs.pop();
            for (size_t e = 0; e < g[size_t(u)].size(); ++e) {
                const auto& edge = g[size_t(u)][e];
                if (edge.cap > 0 && prev_node[size_t(edge.to)] == -1) {
                    prev_node[size_t(edge.to)] = u;
                    prev_edge[size_t(edge.to)] = int32_t(e);
                    bfs.push(edge.to);
                }
            }
        }
        if (prev_node[size_t(sink)] == -1) break;
        for (int32_t v = sink; v != source; v = prev_node[size_t(v)]) {
            auto& edge = g[size_t(prev_node[size_t(v)])][size_t(prev_edge[size_t(v)])];
            edge.cap -= 1;
            g[size_t(v)][size_t(edge.rev)].cap += 1;
        }
        ++flow;
    }
    return flow == 2;
}

}  // namespace perc
