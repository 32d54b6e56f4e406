#include "dimer/lattice.hpp"

#include <algorithm>

namespace dimer {

std::vector<Vec2> convex_hull(std::vector<Vec2> pts) {
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    if (pts.size() <= 2) return pts;
    std::vector<Vec2> h(2 * pts.size());
    std::size_t k = 0;
    for (const auto& p : pts) {
        while (k >= 2 && orient(h[k - 2], h[k - 1], p) <= 0) --k;
        h[k++] = p;
    }
    for (std::size_t i = pts.size() - 1, lo = k + 1; i-- > 0;) {
        while (k >= lo && orient(h[k - 2], h[k - 1], pts[i]) <= 0) --k;
        h[k++] = pts[i];
    }
    h.resize(k - 1);
    return h;
}

std::int64_t area2(const std::vector<Vec2>& poly) {
    std::int64_t s = 0;
    for (std::size_t i = 0; i < poly.size(); ++i) s += cross(poly[i], poly[(i + 1) % poly.size()]);
    return s;
}

bool on_segment(const Vec2& a, const Vec2& b, const Vec2& p) {
    if (orient(a, b, p) != 0) return false;
    return std::min(a.x, b.x) <= p.x && p.x <= std::max(a.x, b.x) && std::min(a.y, b.y) <= p.y &&
           p.y <= std::max(a.y, b.y);
}

bool on_boundary(const std::vector<Vec2>& hull, const Vec2& p) {
    if (hull.size() == 1) return hull[0] == p;
    for (std::size_t i = 0; i < hull.size(); ++i)
        if (on_segment(hull[i], hull[(i + 1) % hull.size()], p)) return true;
    return false;
}

bool strictly_inside(const std::vector<Vec2>& hull, const Vec2& p) {
    if (hull.size() < 3) return false;
    for (std::size_t i = 0; i < hull.size(); ++i)
        if (orient(hull[i], hull[(i + 1) % hull.size()], p) <= 0) return false;
    return true;
}

bool inside_or_on(const std::vector<Vec2>& hull, const Vec2& p) {
    return strictly_inside(hull, p) || on_boundary(hull, p);
}

namespace {

template <class Pred>
std::vector<Vec2> collect(const std::vector<Vec2>& hull, Pred pred) {
    std::vector<Vec2> out;
    if (hull.empty()) return out;
    auto [xmin, xmax] = std::minmax_element(hull.begin(), hull.end(), [](auto& a, auto& b) { return a.x < b.x; });
    auto [ymin, ymax] = std::minmax_element(hull.begin(), hull.end(), [](auto& a, auto& b) { return a.y < b.y; });
    for (auto x = xmin->x; x <= xmax->x; ++x)
        for (auto y = ymin->y; y <= ymax->y; ++y)
            if (pred(Vec2{x, y})) out.push_back({x, y});
    return out;
}

}  // namespace

std::vector<Vec2> lattice_points(const std::vector<Vec2>& hull) {
    return collect(hull, [&](const Vec2& p) { return inside_or_on(hull, p); });
}

std::vector<Vec2> interior_points(const std::vector<Vec2>& hull) {
    return collect(hull, [&](const Vec2& p) { return strictly_inside(hull, p); });
}

std::vector<Vec2> boundary_points(const std::vector<Vec2>& hull) {
    return collect(hull, [&](const Vec2& p) { return on_boundary(hull, p); });
}

std::vector<Vec2> primitive_sides(const std::vector<Vec2>& hull) {
    std::vector<Vec2> out;
    if (hull.size() < 3) return out;
    for (std::size_t i = 0; i < hull.size(); ++i) {
        Vec2 d = hull[(i + 1) % hull.size()] - hull[i];
        auto n = lattice_length(d);
        Vec2 u{d.x / n, d.y / n};
        for (std::int64_t j = 0; j < n; ++j) out.push_back(u);
    }
    return out;
}

std::vector<Vec2> canonical_rotation(std::vector<Vec2> poly) {
    if (poly.empty()) return poly;
    auto it = std::min_element(poly.begin(), poly.end());
    std::rotate(poly.begin(), it, poly.end());
    return poly;
}

bool segments_cross(const Vec2& a, const Vec2& b, const Vec2& c, const Vec2& d) {
    auto o1 = orient(a, b, c), o2 = orient(a, b, d), o3 = orient(c, d, a), o4 = orient(c, d, b);
    if (o1 == 0 && o2 == 0) {
        // Collinear: overlapping in more than a point counts as crossing.
        auto key = [&](const Vec2& p) { return a.x != b.x ? p.x : p.y; };
        auto lo1 = std::min(key(a), key(b)), hi1 = std::max(key(a), key(b));
        auto lo2 = std::min(key(c), key(d)), hi2 = std::max(key(c), key(d));
        return std::min(hi1, hi2) > std::max(lo1, lo2);
    }
    return ((o1 > 0 && o2 < 0) || (o1 < 0 && o2 > 0)) && ((o3 > 0 && o4 < 0) || (o3 < 0 && o4 > 0));
}

}  // namespace dimer
