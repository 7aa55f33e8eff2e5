#pragma once

#include <array>
#include <cstdint>
#include <cstdlib>
#include <vector>

namespace perc {

enum class LatticeKind { Triangular, SquareSite };
enum class SiteColor : uint8_t { Open = 1, Closed = 0 };
enum class BoxEdge { Left, Right, Top, Bottom, TopAndSides };

struct Site {
    int x = 0;
    int y = 0;
    friend bool operator==(const Site& a, const Site& b) { return a.x == b.x && a.y == b.y; }
    friend bool operator!=(const Site& a, const Site& b) { return !(a == b); }
    friend bool operator<(const Site& a, const Site& b) {
        return a.y != b.y ? a.y < b.y : a.x < b.x;
    }
};

// Chebyshev norm, the box metric of the lattice.
inline int site_norm(Site s) { return std::abs(s.x) > std::abs(s.y) ? std::abs(s.x) : std::abs(s.y); }

struct BoxRegion {
    Site center;
    int radius = 0;  // box holds all sites within Chebyshev distance radius of center

    bool contains(Site s) const {
        return std::abs(s.x - center.x) <= radius && std::abs(s.y - center.y) <= radius;
    }
    int side() const { return 2 * radius + 1; }
    long long site_count() const { return 1LL * side() * side(); }
    int xmin() const { return center.x - radius; }
    int xmax() const { return center.x + radius; }
    int ymin() const { return center.y - radius; }
    int ymax() const { return center.y + radius; }
};

// Offsets of the adjacency used for paths of a given color.
// Triangular: six neighbors, identical for both colors.
// SquareSite: open paths use the 4-neighborhood, closed paths the 8-neighborhood
// of the matching lattice, so crossing duality holds.
inline const std::vector<Site>& neighbor_offsets(LatticeKind kind, SiteColor color) {
    static const std::vector<Site> tri = {{1, 0}, {-1, 0}, {0, 1}, {0, -1}, {1, -1}, {-1, 1}};
    static const std::vector<Site> sq4 = {{1, 0}, {-1, 0}, {0, 1}, {0, -1}};
    static const std::vector<Site> sq8 = {{1, 0},  {-1, 0}, {0, 1},  {0, -1},
                                          {1, 1},  {1, -1}, {-1, 1}, {-1, -1}};
    if (kind == LatticeKind::Triangular) return tri;
    return color == SiteColor::Open ? sq4 : sq8;
}

inline std::vector<Site> neighbors(LatticeKind kind, Site s, SiteColor color) {
    std::vector<Site> out;
    for (Site d : neighbor_offsets(kind, color)) out.push_back({s.x + d.x, s.y + d.y});
    return out;
}

std::vector<Site> boundary_sites(const BoxRegion& box, BoxEdge edge);

enum class SectorAperture { QuarterPlane, HalfPlane };

// Annular sector S(phi,n) \ S(phi,l) with the fixed seed intervals K1 (closed
// arm start, on the right edge of S(phi,l)) and K2 (open arm start, on its top
// edge). Sites exactly on a bounding ray are members.
struct SectorRegion {
    SectorAperture aperture = SectorAperture::QuarterPlane;
    int inner_radius = 0;  // l
    int outer_radius = 0;  // n

    std::vector<Site> seed_k1() const;  // {(l,y) : 3l/8 <= y <= 5l/8}
    std::vector<Site> seed_k2() const;  // {(x,l) : l/4 <= x <= 3l/4}
};

bool in_sector(const SectorRegion& region, Site s);
// Membership in the full sector S(phi,r) (no inner hole).
bool in_full_sector(SectorAperture aperture, int r, Site s);

// Semi-annular region between nested boxes sharing a centered bottom edge.
// inner_exp/outer_exp are the exponents rho, nu: radii 2^rho and 2^nu.
// The anchor is the common bottom-center site of both boxes.
struct HorseshoeSpec {
    int inner_exp = 0;
    int outer_exp = 0;
    Site anchor;

    int inner_radius() const { return 1 << inner_exp; }
    int outer_radius() const { return 1 << outer_exp; }
    // Inner box B1: bottom edge centered on the bottom edge of B2.
    BoxRegion inner_box() const {
        return {{anchor.x, anchor.y + inner_radius()}, inner_radius()};
    }
    BoxRegion outer_box() const {
        return {{anchor.x, anchor.y + outer_radius()}, outer_radius()};
    }
    bool contains(Site s) const { return outer_box().contains(s) && !inner_box().contains(s); }

    // Default start arcs Gamma1, Gamma2 of length 2^(rho-2), centered on the
    // top and left sides of B1. Empty for inner_exp < 2.
    std::vector<Site> default_arc_top() const;
    std::vector<Site> default_arc_left() const;
};

}  // namespace perc
