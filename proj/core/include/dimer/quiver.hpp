#pragma once

#include <optional>
#include <string>
#include <vector>

#include "dimer/surface_graph.hpp"

namespace dimer {

// A set of edges (equivalently, of dual arrows), kept sorted.
struct PerfectMatching {
    std::vector<int> edges;

    bool contains(int e) const;
    friend auto operator<=>(const PerfectMatching&, const PerfectMatching&) = default;
};

PerfectMatching make_matching(std::vector<int> edges);

struct Arrow {
    int tail = 0;
    int head = 0;
    // Dual dimer edge, or -1 for arrows that are not tied to a dimer.
    int edge = -1;
    std::string name;
};

struct Quiver {
    int vertex_count = 0;
    std::vector<Arrow> arrows;

    int arrow_count() const { return static_cast<int>(arrows.size()); }
    std::vector<int> out_arrows(int v) const;
    std::vector<int> in_arrows(int v) const;
};

// sign * (cycle[0] cycle[1] ... ), paths written in the order they are traversed.
struct PotentialTerm {
    int sign = 1;
    std::vector<int> cycle;
    // Dimer node the term comes from, -1 if none.
    int node = -1;
};

struct QuiverWithPotential {
    Quiver quiver;
    std::vector<PotentialTerm> potential;
    // node index -> potential term index (empty for potentials without a dimer).
    std::vector<int> term_of_node;
};

// d W / d a = plus - minus, both paths going from hd(a) to tl(a).
struct Relation {
    int arrow = 0;
    std::vector<int> plus;
    std::vector<int> minus;
};

using Grading = std::vector<int>;

// Rotates a cycle to its lexicographically smallest rotation.
std::vector<int> normalize_cycle(std::vector<int> cycle);

bool is_path(const Quiver& q, const std::vector<int>& arrows);

QuiverWithPotential dualize(const Model& m);

std::vector<Relation> relations(const QuiverWithPotential& qp);

// Degree 1 on the arrows of D. Throws UsageError unless every term has degree 1.
Grading grading_of(const QuiverWithPotential& qp, const PerfectMatching& d);

bool is_perfect_matching(const QuiverWithPotential& qp, const PerfectMatching& d);

// Same vertices, only the arrows of degree 0.
Quiver subquiver_Q_D(const QuiverWithPotential& qp, const PerfectMatching& d);

}  // namespace dimer
