#pragma once

#include <optional>
#include <vector>

#include "dimer/quiver.hpp"
#include "dimer/surface_graph.hpp"

namespace dimer {

bool is_perfect_matching(const Model& m, const PerfectMatching& d);

// All perfect matchings, sorted by edge set.
std::vector<PerfectMatching> enumerate_pms(const Model& m);

// [D - D0]: sum of the shifts of D minus those of D0.
Vec2 pm_homology(const Model& m, const PerfectMatching& d, const PerfectMatching& d0);

struct LatticePolygon {
    PerfectMatching reference;
    std::vector<PerfectMatching> pms;
    std::vector<Vec2> points;    // points[i] = [pms[i] - reference]
    std::vector<Vec2> vertices;  // counterclockwise hull

    std::optional<int> index_of(const PerfectMatching& d) const;
    Vec2 point_of(const PerfectMatching& d) const;
    std::vector<int> pms_at(const Vec2& p) const;
};

// Reference defaults to the first perfect matching in enumeration order.
LatticePolygon pm_polygon(const Model& m, std::optional<PerfectMatching> reference = std::nullopt);

enum class PmClass { corner, boundary, internal };

const char* pm_class_name(PmClass c);

PmClass classify_point(const std::vector<Vec2>& hull, const Vec2& p);
PmClass classify(const PerfectMatching& d, const LatticePolygon& poly);

// The unique matching at a hull vertex; throws InvariantError if there is not exactly one.
PerfectMatching corner_pm(const LatticePolygon& poly, const Vec2& vertex);

// Both reject hulls that are not two-dimensional.
bool has_interior_point(const std::vector<Vec2>& hull);
bool is_isolated(const std::vector<Vec2>& hull);

}  // namespace dimer
