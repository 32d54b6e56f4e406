#pragma once

#include <optional>
#include <string>
#include <vector>

#include "dimer/algebra.hpp"
#include "dimer/matchings.hpp"
#include "dimer/quiver.hpp"
#include "dimer/surface_graph.hpp"

namespace dimer {

// lambda^+_k: drop the arrows ending at k, add those starting at k.
PerfectMatching mutate_pm_plus(const QuiverWithPotential& qp, const PerfectMatching& d, int k);
// lambda^-_k: drop the arrows starting at k, add those ending at k.
PerfectMatching mutate_pm_minus(const QuiverWithPotential& qp, const PerfectMatching& d, int k);

struct QuiverPrediction {
    // Arrows of Q_D not starting at k, by arrow id.
    std::vector<int> kept;
    // One new arrow r* : hd(r) -> k per relation r of A_D starting at k, identified
    // with the arrow whose relation it is.
    std::vector<Arrow> reversed;
    // Arrows a whose relations dW/da present A_{lambda^+_k(D)}.
    std::vector<int> relation_arrows;
};

// Q_{lambda^+_k(D)} and its relations, built from Q_D and the relations of A_D alone.
QuiverPrediction mutated_quiver_prediction(const QuiverWithPotential& qp, const PerfectMatching& d, int k);

struct ExchangeEdge {
    int from = 0;  // lambda^+_vertex(pms[from]) == pms[to]
    int to = 0;
    int vertex = 0;
    friend auto operator<=>(const ExchangeEdge&, const ExchangeEdge&) = default;
};

struct ExchangeGraph {
    std::vector<PerfectMatching> pms;  // pms[0] is the start
    std::vector<ExchangeEdge> edges;   // sorted, one per unordered pair and vertex
    std::optional<int> index_of(const PerfectMatching& d) const;
};

// Breadth-first closure of an internal perfect matching under lambda^+ and lambda^-.
ExchangeGraph exchange_graph(const Model& m, const PerfectMatching& start);

// Vertices without loops or 2-cycles having exactly two incoming and two outgoing arrows.
std::vector<int> mutable_vertices(const QuiverWithPotential& qp);

// Split black corners, spider move, then join 2-valent nodes. Face labels are kept.
Model mutate_dimer(const Model& m, int k);

struct ArrowOrigin {
    enum class Kind { kept, a_star, b_star, bracket };
    Kind kind = Kind::kept;
    int first = -1;   // original arrow (a_i for brackets)
    int second = -1;  // b_j for brackets
};

struct QpMutation {
    QuiverWithPotential qp;
    std::vector<ArrowOrigin> origin;  // per arrow of qp
    int a[2] = {-1, -1};
    int b[2] = {-1, -1};
};

QpMutation mutate_qp(const QuiverWithPotential& qp, int k);

// Vertex-fixing arrow bijection from `from` to `to` carrying the potential onto
// the potential, with terms compared up to cyclic rotation.
std::optional<std::vector<int>> find_qp_isomorphism(const QuiverWithPotential& from, const QuiverWithPotential& to);

enum class Side { left, right };

struct Transport {
    Model mutated;
    PerfectMatching pm;
    Side side = Side::left;
    bool free_choice = false;
    Grading degrees;  // on the arrows of the reduced mutated QP
};

// mu_k^L / mu_k^R of a perfect matching; side defaults per the three-case rule.
Transport transport_pm(const Model& m, const PerfectMatching& d, int k, std::optional<Side> side = std::nullopt);

// [C_v - D] for every hull vertex v, in counterclockwise order from the smallest vertex.
std::vector<Vec2> corner_anchored_points(const Model& m, const PerfectMatching& d);

struct ModelFingerprint {
    std::vector<int> valences;   // sorted
    std::vector<Vec2> polygon;   // translated so the smallest vertex is the origin
    Matrix adjacency;            // arrow counts between face labels
    friend bool operator==(const ModelFingerprint&, const ModelFingerprint&) = default;
};

ModelFingerprint model_fingerprint(const Model& m);

std::vector<Vec2> normalized_polygon(const Model& m);

}  // namespace dimer
