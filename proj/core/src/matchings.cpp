#include "dimer/matchings.hpp"

#include <algorithm>
#include <functional>

#include "dimer/errors.hpp"
#include "dimer/lattice.hpp"

namespace dimer {

bool is_perfect_matching(const Model& m, const PerfectMatching& d) {
    const TorusGraph& g = m.graph();
    std::vector<int> cover(g.nodes.size(), 0);
    for (int e : d.edges) {
        if (e < 0 || e >= static_cast<int>(g.edges.size())) return false;
        ++cover[g.edges[e].white];
        ++cover[g.edges[e].black];
    }
    return std::all_of(cover.begin(), cover.end(), [](int c) { return c == 1; });
}

std::vector<PerfectMatching> enumerate_pms(const Model& m) {
    const TorusGraph& g = m.graph();
    std::vector<int> whites;
    std::size_t blacks = 0;
    for (int v = 0; v < static_cast<int>(g.nodes.size()); ++v) {
        if (g.nodes[v].color == Color::white) whites.push_back(v);
        else ++blacks;
    }
    std::vector<PerfectMatching> out;
    if (whites.size() != blacks) return out;

    std::vector<char> used(g.nodes.size(), 0);
    std::vector<int> chosen;
    std::function<void(std::size_t)> rec = [&](std::size_t i) {
        if (i == whites.size()) {
            out.push_back(make_matching(chosen));
            return;
        }
        for (int e : g.rotations[whites[i]]) {
            int b = g.edges[e].black;
            if (used[b]) continue;
            used[b] = 1;
            chosen.push_back(e);
            rec(i + 1);
            chosen.pop_back();
            used[b] = 0;
        }
    };
    rec(0);
    std::sort(out.begin(), out.end());
    return out;
}

Vec2 pm_homology(const Model& m, const PerfectMatching& d, const PerfectMatching& d0) {
    if (!is_perfect_matching(m, d) || !is_perfect_matching(m, d0))
        throw UsageError("pm_homology: arguments must be perfect matchings of the model");
    Vec2 s;
    for (int e : d.edges) s += m.graph().edges[e].shift;
    for (int e : d0.edges) s -= m.graph().edges[e].shift;
    return s;
}

std::optional<int> LatticePolygon::index_of(const PerfectMatching& d) const {
    auto it = std::lower_bound(pms.begin(), pms.end(), d);
    if (it == pms.end() || *it != d) return std::nullopt;
    return static_cast<int>(it - pms.begin());
}

Vec2 LatticePolygon::point_of(const PerfectMatching& d) const {
    auto i = index_of(d);
    if (!i) throw UsageError("matching is not registered in the polygon");
    return points[*i];
}

std::vector<int> LatticePolygon::pms_at(const Vec2& p) const {
    std::vector<int> out;
    for (int i = 0; i < static_cast<int>(points.size()); ++i)
        if (points[i] == p) out.push_back(i);
    return out;
}

LatticePolygon pm_polygon(const Model& m, std::optional<PerfectMatching> reference) {
    LatticePolygon poly;
    poly.pms = enumerate_pms(m);
    if (poly.pms.empty()) throw InvariantError("model has no perfect matching");
    poly.reference = reference ? *reference : poly.pms.front();
    for (const auto& d : poly.pms) poly.points.push_back(pm_homology(m, d, poly.reference));
    poly.vertices = convex_hull(poly.points);
    return poly;
}

const char* pm_class_name(PmClass c) {
    switch (c) {
        case PmClass::corner: return "corner";
        case PmClass::boundary: return "boundary";
        case PmClass::internal: return "internal";
    }
    return "unknown";
}

PmClass classify_point(const std::vector<Vec2>& hull, const Vec2& p) {
    if (std::find(hull.begin(), hull.end(), p) != hull.end()) return PmClass::corner;
    if (on_boundary(hull, p)) return PmClass::boundary;
    if (strictly_inside(hull, p)) return PmClass::internal;
    throw InvariantError("point " + to_string(p) + " lies outside the polygon");
}

PmClass classify(const PerfectMatching& d, const LatticePolygon& poly) {
    return classify_point(poly.vertices, poly.point_of(d));
}

PerfectMatching corner_pm(const LatticePolygon& poly, const Vec2& vertex) {
    if (std::find(poly.vertices.begin(), poly.vertices.end(), vertex) == poly.vertices.end())
        throw UsageError("corner_pm: " + to_string(vertex) + " is not a vertex of the polygon");
    auto at = poly.pms_at(vertex);
    if (at.size() != 1)
        throw InvariantError("corner " + to_string(vertex) + " carries " + std::to_string(at.size()) +
                             " perfect matchings, expected exactly one");
    return poly.pms[at.front()];
}

namespace {

void require_2d(const std::vector<Vec2>& hull) {
    if (hull.size() < 3) throw UsageError("polygon is not two-dimensional");
}

}  // namespace

bool has_interior_point(const std::vector<Vec2>& hull) {
    require_2d(hull);
    return !interior_points(hull).empty();
}

bool is_isolated(const std::vector<Vec2>& hull) {
    require_2d(hull);
    for (std::size_t i = 0; i < hull.size(); ++i)
        if (!is_primitive(hull[(i + 1) % hull.size()] - hull[i])) return false;
    return true;
}

}  // namespace dimer
