#pragma once

#include <gmpxx.h>

#include <optional>
#include <string>
#include <vector>

#include "dimer/surface_graph.hpp"

namespace dimer {

struct ZigzagPath {
    std::vector<Dart> darts;
    Vec2 slope;
};

// Turns to the next edge counterclockwise at white heads and clockwise at black heads.
std::vector<ZigzagPath> zigzag_paths(const Model& m);

struct ConsistencyVerdict {
    bool consistent = true;
    std::vector<std::string> reasons;
    // Offending zigzag path indices, parallel to reasons.
    std::vector<int> witnesses;
    // Paths visiting some node twice on the universal cover (reported, never fatal).
    std::vector<int> node_repeats;
};

ConsistencyVerdict is_consistent(const Model& m);

struct RChargeResult {
    bool feasible = false;
    // Optimal min_e R(e); absent when the equalities alone are infeasible.
    std::optional<mpq_class> epsilon;
    std::vector<mpq_class> r;
};

// maximize eps subject to R(e) >= eps and the node and face equalities.
RChargeResult rcharge_feasible(const Model& m);

struct SlopeSideResult {
    bool equal = false;
    std::vector<Vec2> slopes;  // sorted
    std::vector<Vec2> sides;   // sorted
};

SlopeSideResult slope_side_check(const Model& m);

}  // namespace dimer
