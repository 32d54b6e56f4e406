#pragma once

#include <vector>

#include "dimer/vec2.hpp"

namespace dimer {

// Strict convex hull, counterclockwise, collinear points dropped.
// Degenerate inputs give one or two points.
std::vector<Vec2> convex_hull(std::vector<Vec2> points);

// Twice the area of a counterclockwise polygon.
std::int64_t area2(const std::vector<Vec2>& polygon);

bool on_segment(const Vec2& a, const Vec2& b, const Vec2& p);
bool on_boundary(const std::vector<Vec2>& hull, const Vec2& p);
bool strictly_inside(const std::vector<Vec2>& hull, const Vec2& p);
bool inside_or_on(const std::vector<Vec2>& hull, const Vec2& p);

// Lattice points of a hull, sorted.
std::vector<Vec2> lattice_points(const std::vector<Vec2>& hull);
std::vector<Vec2> interior_points(const std::vector<Vec2>& hull);
std::vector<Vec2> boundary_points(const std::vector<Vec2>& hull);

// Each hull edge cut into lattice_length primitive copies, counterclockwise.
std::vector<Vec2> primitive_sides(const std::vector<Vec2>& hull);

// Rotates a counterclockwise vertex list to start at its smallest vertex.
std::vector<Vec2> canonical_rotation(std::vector<Vec2> polygon);

// Open segments cross at a single interior point of both.
bool segments_cross(const Vec2& a, const Vec2& b, const Vec2& c, const Vec2& d);

}  // namespace dimer
