#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "dimer/vec2.hpp"

namespace dimer {

enum class Color : std::uint8_t { white, black };

inline Color opposite(Color c) { return c == Color::white ? Color::black : Color::white; }
const char* color_name(Color c);

struct Node {
    std::string id;
    Color color = Color::white;
};

// shift: translation from the canonical lift of the white endpoint to the lift
// of the black endpoint used by this edge.
struct Edge {
    std::string id;
    int white = -1;
    int black = -1;
    Vec2 shift;
};

struct Dart {
    int edge = 0;
    bool white_to_black = true;

    Dart reversed() const { return {edge, !white_to_black}; }
    int index() const { return 2 * edge + (white_to_black ? 0 : 1); }
    static Dart from_index(int i) { return {i / 2, i % 2 == 0}; }

    friend auto operator<=>(const Dart& a, const Dart& b) { return a.index() <=> b.index(); }
    friend bool operator==(const Dart& a, const Dart& b) { return a.index() == b.index(); }
};

// Names the face lying on the left of `dart`.
struct FaceAnchor {
    int label = 0;
    Dart dart;
};

struct TorusGraph {
    std::string name;
    std::vector<Node> nodes;
    std::vector<Edge> edges;
    // Counterclockwise edge order around each node.
    std::vector<std::vector<int>> rotations;
    std::vector<FaceAnchor> face_anchors;

    int head(Dart d) const { return d.white_to_black ? edges[d.edge].black : edges[d.edge].white; }
    int tail(Dart d) const { return d.white_to_black ? edges[d.edge].white : edges[d.edge].black; }
    Vec2 shift(Dart d) const { return d.white_to_black ? edges[d.edge].shift : -edges[d.edge].shift; }
    // The dart along `edge` leaving `node`.
    Dart dart_from(int node, int edge) const { return {edge, edges[edge].white == node}; }
    int degree(int node) const { return static_cast<int>(rotations[node].size()); }

    std::optional<int> find_node(std::string_view id) const;
    std::optional<int> find_edge(std::string_view id) const;
    int node_index(std::string_view id) const;
    int edge_index(std::string_view id) const;
};

struct Face {
    int id = 0;
    std::vector<Dart> boundary;
};

struct Violation {
    enum class Kind {
        malformed,
        non_bipartite,
        rotation_mismatch,
        disconnected,
        euler,
        face_shift,
        homology,
        two_valent,
        face_labels,
    };
    Kind kind = Kind::malformed;
    std::string message;
};

const char* violation_name(Violation::Kind k);

struct ValidationResult;

// A torus graph whose embedding axioms have been checked, together with its faces.
// Face ids are the face labels when the graph carries a complete set of anchors,
// otherwise faces are numbered in order of their smallest dart.
class Model {
public:
    const TorusGraph& graph() const { return graph_; }
    const std::vector<Face>& faces() const { return faces_; }
    int face_count() const { return static_cast<int>(faces_.size()); }
    int face_of(Dart d) const { return face_of_dart_[d.index()]; }
    int rotation_position(int node, int edge) const;
    Dart next_in_face(Dart d) const;
    Dart rotation_next(int node, int edge, int step) const;
    // Graph with one anchor per face, matching the face ids of this model.
    TorusGraph labelled_graph() const;

private:
    friend ValidationResult validate(const TorusGraph&, bool);
    TorusGraph graph_;
    std::vector<Face> faces_;
    std::vector<int> face_of_dart_;
    std::vector<int> pos_white_;
    std::vector<int> pos_black_;
};

struct ValidationResult {
    std::optional<Model> model;
    std::vector<Violation> violations;
    bool ok() const { return model.has_value(); }
};

ValidationResult validate(const TorusGraph& g, bool forbid_two_valent = false);

// Validates or throws InvariantError listing every violation.
Model validated(const TorusGraph& g, bool forbid_two_valent = false);

const std::vector<Face>& faces(const Model& m);

// Removes a 2-valent node and merges its two (distinct) neighbours.
TorusGraph join_move(const Model& m, int node);

// Splits `node`: the edges of arc_a stay on it, arc_b moves to a new node of the
// same colour, and the two are joined through a new 2-valent node.
// Both arcs are given in counterclockwise order and together must be the rotation.
TorusGraph split_move(const Model& m, int node, const std::vector<int>& arc_a, const std::vector<int>& arc_b);

// Spider move at a quadrangle face whose two black corners are 3-valent.
TorusGraph spider_move(const Model& m, int face);

// Fresh identifiers not present in the graph.
std::string fresh_node_id(const TorusGraph& g, std::string_view prefix);
std::string fresh_edge_id(const TorusGraph& g, std::string_view prefix);

}  // namespace dimer
