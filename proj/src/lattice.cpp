#include "perc/lattice.hpp"

namespace perc {

std::vector<Site> boundary_sites(const BoxRegion& box, BoxEdge edge) {
    std::vector<Site> out;
    const int x0 = box.xmin(), x1 = box.xmax(), y0 = box.ymin(), y1 = box.ymax();
    auto column = [&](int x) {
        for (int y = y0; y <= y1; ++y) out.push_back({x, y});
    };
    auto row = [&](int y) {
        for (int x = x0; x <= x1; ++x) out.push_back({x, y});
    };
    switch (edge) {
        case BoxEdge::Left: column(x0); break;
        case BoxEdge::Right: column(x1); break;
        case BoxEdge::Top: row(y1); break;
        case BoxEdge::Bottom: row(y0); break;
        case BoxEdge::TopAndSides:
            // Left, top, right; corners counted once.
            column(x0);
            if (x1 > x0) {
                for (int x = x0 + 1; x < x1; ++x) out.push_back({x, y1});
                column(x1);
            }
            break;
    }
    return out;
}

bool in_full_sector(SectorAperture aperture, int r, Site s) {
    if (site_norm(s) > r) return false;
    if (s.x == 0 && s.y == 0) return true;
    if (aperture == SectorAperture::QuarterPlane) return s.x >= 0 && s.y >= 0;
    return s.y >= 0;  // half plane, both bounding rays included
}

bool in_sector(const SectorRegion& region, Site s) {
    return in_full_sector(region.aperture, region.outer_radius, s) &&
           !in_full_sector(region.aperture, region.inner_radius, s);
}

std::vector<Site> SectorRegion::seed_k1() const {
    std::vector<Site> out;
    const int l = inner_radius;
    for (int y = (3 * l + 7) / 8; 8 * y <= 5 * l; ++y) out.push_back({l, y});
    if (out.empty()) out.push_back({l, l / 2});
    return out;
}

std::vector<Site> SectorRegion::seed_k2() const {
    std::vector<Site> out;
    const int l = inner_radius;
    for (int x = (l + 3) / 4; 4 * x <= 3 * l; ++x) out.push_back({x, l});
    if (out.empty()) out.push_back({l / 2, l});
    return out;
}

std::vector<Site> HorseshoeSpec::default_arc_top() const {
    std::vector<Site> out;
    if (inner_exp < 2) return out;
    const BoxRegion b1 = inner_box();
    const int half = inner_radius() >> 3;  // half of arc length 2^(rho-2)
    for (int x = b1.center.x - half; x < b1.center.x - half + (inner_radius() >> 2); ++x)
        out.push_back({x, b1.ymax()});
    return out;
}

std::vector<Site> HorseshoeSpec::default_arc_left() const {
    std::vector<Site> out;
    if (inner_exp < 2) return out;
    const BoxRegion b1 = inner_box();
    const int half = inner_radius() >> 3;
    for (int y = b1.center.y - half; y < b1.center.y - half + (inner_radius() >> 2); ++y)
        out.push_back({b1.xmin(), y});
    return out;
}

}  // namespace perc
