#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "dimer/matchings.hpp"
#include "dimer/quiver.hpp"

namespace dimer {

using Theta = std::vector<std::int64_t>;

inline constexpr int max_stability_vertices = 20;

// The 0/1 representation of dimension vector (1,...,1) with value 1 on `support`.
struct SupportRep {
    int vertex_count = 0;
    std::vector<char> in_support;  // per arrow
    const std::vector<char>& mask() const { return in_support; }
};

struct CosupportResult {
    std::optional<SupportRep> rep;
    // Arrow whose two return paths disagree, -1 when compatible.
    int violating_arrow = -1;
};

CosupportResult rep_from_cosupport(const QuiverWithPotential& qp, const std::vector<int>& cosupport);

// Vertex subsets closed under support arrows, as bitmasks, excluding 0 and the full set.
std::vector<std::uint32_t> closed_subsets(const Quiver& q, const std::vector<char>& in_support);

bool is_theta_stable(const QuiverWithPotential& qp, const SupportRep& rep, const Theta& theta);

struct StablePms {
    bool generic = false;
    std::vector<std::string> problems;
    std::map<Vec2, PerfectMatching> by_point;
};

// Points are taken relative to `reference` (default: first perfect matching).
StablePms theta_stable_pms(const Model& m, const Theta& theta,
                           const std::optional<PerfectMatching>& reference = std::nullopt);

using Segment = std::pair<Vec2, Vec2>;  // first < second

struct Triangulation {
    bool ok = false;
    std::vector<std::string> problems;
    std::vector<Segment> segments;  // sorted
    std::vector<std::array<Vec2, 3>> triangles;
    std::vector<Vec2> polygon;
};

Triangulation triangulate(const Model& m, const Theta& theta,
                          const std::optional<PerfectMatching>& reference = std::nullopt);

// A parameter making V_D stable, certified by is_theta_stable, or nullopt.
std::optional<Theta> find_stabilizing_theta(const QuiverWithPotential& qp, const PerfectMatching& d);

}  // namespace dimer
