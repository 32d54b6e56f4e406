#include "dimer/surface_graph.hpp"

#include <algorithm>
#include <map>
#include <queue>
#include <set>
#include <sstream>

#include "dimer/errors.hpp"

namespace dimer {

const char* color_name(Color c) { return c == Color::white ? "white" : "black"; }

const char* violation_name(Violation::Kind k) {
    switch (k) {
        case Violation::Kind::malformed: return "malformed";
        case Violation::Kind::non_bipartite: return "non_bipartite";
        case Violation::Kind::rotation_mismatch: return "rotation_mismatch";
        case Violation::Kind::disconnected: return "disconnected";
        case Violation::Kind::euler: return "euler";
        case Violation::Kind::face_shift: return "face_shift";
        case Violation::Kind::homology: return "homology";
        case Violation::Kind::two_valent: return "two_valent";
        case Violation::Kind::face_labels: return "face_labels";
    }
    return "unknown";
}

std::optional<int> TorusGraph::find_node(std::string_view id) const {
    for (std::size_t i = 0; i < nodes.size(); ++i)
        if (nodes[i].id == id) return static_cast<int>(i);
    return std::nullopt;
}

std::optional<int> TorusGraph::find_edge(std::string_view id) const {
    for (std::size_t i = 0; i < edges.size(); ++i)
        if (edges[i].id == id) return static_cast<int>(i);
    return std::nullopt;
}

int TorusGraph::node_index(std::string_view id) const {
    auto i = find_node(id);
    if (!i) throw UsageError("unknown node id '" + std::string(id) + "'");
    return *i;
}

int TorusGraph::edge_index(std::string_view id) const {
    auto i = find_edge(id);
    if (!i) throw UsageError("unknown edge id '" + std::string(id) + "'");
    return *i;
}

int Model::rotation_position(int node, int edge) const {
    const Edge& e = graph_.edges[edge];
    if (e.white == node) return pos_white_[edge];
    if (e.black == node) return pos_black_[edge];
    throw UsageError("edge " + e.id + " is not incident to node " + graph_.nodes[node].id);
}

Dart Model::rotation_next(int node, int edge, int step) const {
    const auto& rot = graph_.rotations[node];
    int n = static_cast<int>(rot.size());
    int p = rotation_position(node, edge);
    int q = ((p + step) % n + n) % n;
    return graph_.dart_from(node, rot[q]);
}

Dart Model::next_in_face(Dart d) const {
    // Keep the face on the left: leave the head by the clockwise-next edge.
    return rotation_next(graph_.head(d), d.edge, -1);
}

TorusGraph Model::labelled_graph() const {
    TorusGraph g = graph_;
    g.face_anchors.clear();
    for (const Face& f : faces_) g.face_anchors.push_back({f.id, f.boundary.front()});
    return g;
}

const std::vector<Face>& faces(const Model& m) { return m.faces(); }

namespace {

void add(std::vector<Violation>& out, Violation::Kind k, const std::string& msg) {
    out.push_back({k, msg});
}

}  // namespace

ValidationResult validate(const TorusGraph& g, bool forbid_two_valent) {
    ValidationResult res;
    auto& bad = res.violations;
    const int n = static_cast<int>(g.nodes.size());
    const int m = static_cast<int>(g.edges.size());

    if (n == 0) add(bad, Violation::Kind::malformed, "graph has no nodes");
    if (static_cast<int>(g.rotations.size()) != n)
        add(bad, Violation::Kind::malformed, "rotation table size differs from node count");
    {
        std::set<std::string> ids;
        for (const auto& node : g.nodes)
            if (!ids.insert(node.id).second) add(bad, Violation::Kind::malformed, "duplicate node id " + node.id);
        ids.clear();
        for (const auto& e : g.edges)
            if (!ids.insert(e.id).second) add(bad, Violation::Kind::malformed, "duplicate edge id " + e.id);
    }
    for (const auto& e : g.edges) {
        if (e.white < 0 || e.white >= n || e.black < 0 || e.black >= n) {
            add(bad, Violation::Kind::malformed, "edge " + e.id + " has an endpoint out of range");
            continue;
        }
        if (g.nodes[e.white].color != Color::white || g.nodes[e.black].color != Color::black)
            add(bad, Violation::Kind::non_bipartite,
                "edge " + e.id + " joins " + g.nodes[e.white].id + " and " + g.nodes[e.black].id +
                    " which are not white and black");
    }
    if (!bad.empty()) return res;

    std::vector<int> pos_white(m, -1), pos_black(m, -1);
    for (int v = 0; v < n; ++v) {
        const auto& rot = g.rotations[v];
        for (int i = 0; i < static_cast<int>(rot.size()); ++i) {
            int e = rot[i];
            if (e < 0 || e >= m) {
                add(bad, Violation::Kind::malformed, "rotation of " + g.nodes[v].id + " lists an unknown edge");
                continue;
            }
            int& slot = g.edges[e].white == v ? pos_white[e] : pos_black[e];
            if (g.edges[e].white != v && g.edges[e].black != v) {
                add(bad, Violation::Kind::rotation_mismatch,
                    "rotation of " + g.nodes[v].id + " lists edge " + g.edges[e].id + " which is not incident");
                continue;
            }
            if (slot != -1) {
                add(bad, Violation::Kind::rotation_mismatch,
                    "rotation of " + g.nodes[v].id + " lists edge " + g.edges[e].id + " twice");
                continue;
            }
            slot = i;
        }
    }
    for (int e = 0; e < m; ++e) {
        if (pos_white[e] == -1)
            add(bad, Violation::Kind::rotation_mismatch,
                "edge " + g.edges[e].id + " missing from rotation of " + g.nodes[g.edges[e].white].id);
        if (pos_black[e] == -1)
            add(bad, Violation::Kind::rotation_mismatch,
                "edge " + g.edges[e].id + " missing from rotation of " + g.nodes[g.edges[e].black].id);
    }
    if (!bad.empty()) return res;

    {
        std::vector<char> seen(n, 0);
        std::queue<int> q;
        q.push(0);
        seen[0] = 1;
        while (!q.empty()) {
            int v = q.front();
            q.pop();
            for (int e : g.rotations[v]) {
                int u = g.edges[e].white == v ? g.edges[e].black : g.edges[e].white;
                if (!seen[u]) { seen[u] = 1; q.push(u); }
            }
        }
        for (int v = 0; v < n; ++v)
            if (!seen[v]) {
                add(bad, Violation::Kind::disconnected, "node " + g.nodes[v].id + " is not reachable from " + g.nodes[0].id);
                break;
            }
    }

    Model model;
    model.graph_ = g;
    model.pos_white_ = pos_white;
    model.pos_black_ = pos_black;

    std::vector<int> face_of(2 * m, -1);
    std::vector<Face> fs;
    for (int di = 0; di < 2 * m; ++di) {
        if (face_of[di] != -1) continue;
        Face f;
        f.id = static_cast<int>(fs.size());
        Dart d = Dart::from_index(di);
        while (face_of[d.index()] == -1) {
            face_of[d.index()] = f.id;
            f.boundary.push_back(d);
            d = model.next_in_face(d);
        }
        fs.push_back(std::move(f));
    }
    const int nf = static_cast<int>(fs.size());
    if (n - m + nf != 0) {
        std::ostringstream os;
        os << "Euler characteristic V-E+F = " << n << "-" << m << "+" << nf << " = " << (n - m + nf)
           << ", expected 0 on the torus";
        add(bad, Violation::Kind::euler, os.str());
    }
    for (const Face& f : fs) {
        Vec2 s;
        for (Dart d : f.boundary) s += g.shift(d);
        if (s != Vec2{}) {
            std::ostringstream os;
            os << "face through dart " << g.edges[f.boundary.front().edge].id
               << (f.boundary.front().white_to_black ? " (white->black)" : " (black->white)")
               << " has boundary shift " << s;
            add(bad, Violation::Kind::face_shift, os.str());
        }
    }
    {
        // On a cellular torus embedding the cycle classes of the graph generate Z^2.
        std::vector<std::optional<Vec2>> pos(n);
        std::queue<int> q;
        pos[0] = Vec2{};
        q.push(0);
        while (!q.empty()) {
            int v = q.front();
            q.pop();
            for (int e : g.rotations[v]) {
                Dart d = g.dart_from(v, e);
                int u = g.head(d);
                if (!pos[u]) { pos[u] = *pos[v] + g.shift(d); q.push(u); }
            }
        }
        std::vector<Vec2> classes;
        for (const Edge& e : g.edges)
            if (pos[e.white] && pos[e.black]) classes.push_back(*pos[e.white] + e.shift - *pos[e.black]);
        std::int64_t index = 0;
        for (std::size_t i = 0; i < classes.size(); ++i)
            for (std::size_t j = i + 1; j < classes.size(); ++j) index = gcd_abs(index, cross(classes[i], classes[j]));
        if (index != 1) {
            std::ostringstream os;
            os << "cycle classes generate a sublattice of index " << (index == 0 ? std::string("infinity") : std::to_string(index))
               << " instead of Z^2";
            add(bad, Violation::Kind::homology, os.str());
        }
    }
    if (forbid_two_valent)
        for (int v = 0; v < n; ++v)
            if (g.degree(v) == 2) add(bad, Violation::Kind::two_valent, "node " + g.nodes[v].id + " is 2-valent");

    if (!g.face_anchors.empty()) {
        std::vector<int> label_of(nf, -1);
        std::set<int> labels;
        bool fine = true;
        for (const auto& a : g.face_anchors) {
            if (a.dart.edge < 0 || a.dart.edge >= m) {
                add(bad, Violation::Kind::face_labels, "face label " + std::to_string(a.label) + " anchored on unknown edge");
                fine = false;
                continue;
            }
            int f = face_of[a.dart.index()];
            if (label_of[f] != -1) {
                add(bad, Violation::Kind::face_labels,
                    "face labels " + std::to_string(label_of[f]) + " and " + std::to_string(a.label) + " name the same face");
                fine = false;
            }
            label_of[f] = a.label;
            labels.insert(a.label);
        }
        if (fine && (static_cast<int>(g.face_anchors.size()) != nf || labels.size() != static_cast<std::size_t>(nf) ||
                     *labels.begin() != 0 || *labels.rbegin() != nf - 1)) {
            add(bad, Violation::Kind::face_labels, "face labels must be exactly 0.." + std::to_string(nf - 1));
            fine = false;
        }
        if (fine) {
            std::vector<Face> relabelled(nf);
            for (int f = 0; f < nf; ++f) {
                relabelled[label_of[f]] = fs[f];
                relabelled[label_of[f]].id = label_of[f];
            }
            for (int& x : face_of) x = label_of[x];
            fs = std::move(relabelled);
        }
    }

    if (!bad.empty()) return res;
    model.faces_ = std::move(fs);
    model.face_of_dart_ = std::move(face_of);
    res.model = std::move(model);
    return res;
}

Model validated(const TorusGraph& g, bool forbid_two_valent) {
    auto r = validate(g, forbid_two_valent);
    if (r.ok()) return std::move(*r.model);
    std::ostringstream os;
    os << "invalid dimer model '" << g.name << "':";
    for (const auto& v : r.violations) os << "\n  [" << violation_name(v.kind) << "] " << v.message;
    throw InvariantError(os.str());
}

std::string fresh_node_id(const TorusGraph& g, std::string_view prefix) {
    for (int i = static_cast<int>(g.nodes.size());; ++i) {
        std::string id = std::string(prefix) + std::to_string(i);
        if (!g.find_node(id)) return id;
    }
}

std::string fresh_edge_id(const TorusGraph& g, std::string_view prefix) {
    for (int i = static_cast<int>(g.edges.size());; ++i) {
        std::string id = std::string(prefix) + std::to_string(i);
        if (!g.find_edge(id)) return id;
    }
}

namespace {

// Drops removed nodes and edges and renumbers everything else.
TorusGraph compact(const TorusGraph& g, const std::vector<char>& keep_node, const std::vector<char>& keep_edge) {
    std::vector<int> nmap(g.nodes.size(), -1), emap(g.edges.size(), -1);
    TorusGraph out;
    out.name = g.name;
    for (std::size_t v = 0; v < g.nodes.size(); ++v)
        if (keep_node[v]) {
            nmap[v] = static_cast<int>(out.nodes.size());
            out.nodes.push_back(g.nodes[v]);
        }
    for (std::size_t e = 0; e < g.edges.size(); ++e)
        if (keep_edge[e]) {
            emap[e] = static_cast<int>(out.edges.size());
            Edge ed = g.edges[e];
            ed.white = nmap[ed.white];
            ed.black = nmap[ed.black];
            if (ed.white < 0 || ed.black < 0) throw InvariantError("surgery left a dangling edge " + ed.id);
            out.edges.push_back(ed);
        }
    out.rotations.resize(out.nodes.size());
    for (std::size_t v = 0; v < g.nodes.size(); ++v) {
        if (!keep_node[v]) continue;
        for (int e : g.rotations[v]) {
            if (emap[e] < 0) throw InvariantError("surgery left a removed edge in a rotation");
            out.rotations[nmap[v]].push_back(emap[e]);
        }
    }
    for (const auto& a : g.face_anchors) {
        if (emap[a.dart.edge] < 0) throw InvariantError("surgery removed an anchor dart");
        out.face_anchors.push_back({a.label, {emap[a.dart.edge], a.dart.white_to_black}});
    }
    return out;
}

// Moves every anchor sitting on a removed edge to a surviving dart of the same face.
void reanchor(const Model& m, TorusGraph& g, const std::vector<char>& removed_edge, int skip_face = -1) {
    for (auto& a : g.face_anchors) {
        if (!removed_edge[a.dart.edge]) continue;
        if (a.label == skip_face) continue;
        const Face& f = m.faces()[m.face_of(a.dart)];
        bool moved = false;
        for (Dart d : f.boundary)
            if (!removed_edge[d.edge]) { a.dart = d; moved = true; break; }
        if (!moved) throw InvariantError("face " + std::to_string(a.label) + " loses all its edges in the surgery");
    }
}

void replace_in_rotation(std::vector<int>& rot, int old_edge, const std::vector<int>& repl) {
    auto it = std::find(rot.begin(), rot.end(), old_edge);
    if (it == rot.end()) throw InvariantError("edge missing from rotation during surgery");
    it = rot.erase(it);
    rot.insert(it, repl.begin(), repl.end());
}

}  // namespace

TorusGraph join_move(const Model& m, int v) {
    TorusGraph g = m.labelled_graph();
    if (v < 0 || v >= static_cast<int>(g.nodes.size())) throw UsageError("join_move: node out of range");
    if (g.degree(v) != 2) throw UsageError("join_move: node " + g.nodes[v].id + " is not 2-valent");
    const int e1 = g.rotations[v][0];
    const int e2 = g.rotations[v][1];
    const bool v_white = g.nodes[v].color == Color::white;
    const int u1 = v_white ? g.edges[e1].black : g.edges[e1].white;
    const int u2 = v_white ? g.edges[e2].black : g.edges[e2].white;
    if (u1 == u2) throw UsageError("join_move: the neighbours of " + g.nodes[v].id + " coincide");

    // Lift offset of u2 relative to u1 through v.
    const Vec2 o = v_white ? g.edges[e2].shift - g.edges[e1].shift : g.edges[e1].shift - g.edges[e2].shift;

    std::vector<int> moved;
    {
        const auto& r2 = g.rotations[u2];
        const int n2 = static_cast<int>(r2.size());
        const int p = static_cast<int>(std::find(r2.begin(), r2.end(), e2) - r2.begin());
        for (int i = 1; i < n2; ++i) moved.push_back(r2[(p + i) % n2]);
    }
    for (int e : moved) {
        Edge& ed = g.edges[e];
        if (v_white) {
            ed.black = u1;
            ed.shift = ed.shift - o;
        } else {
            ed.white = u1;
            ed.shift = ed.shift + o;
        }
    }
    replace_in_rotation(g.rotations[u1], e1, moved);
    g.rotations[u2].clear();
    g.rotations[v].clear();

    std::vector<char> removed(g.edges.size(), 0);
    removed[e1] = removed[e2] = 1;
    reanchor(m, g, removed);
    std::vector<char> keep_node(g.nodes.size(), 1), keep_edge(g.edges.size(), 1);
    keep_node[v] = keep_node[u2] = 0;
    keep_edge[e1] = keep_edge[e2] = 0;
    return compact(g, keep_node, keep_edge);
}

TorusGraph split_move(const Model& m, int u, const std::vector<int>& arc_a, const std::vector<int>& arc_b) {
    TorusGraph g = m.labelled_graph();
    if (u < 0 || u >= static_cast<int>(g.nodes.size())) throw UsageError("split_move: node out of range");
    const auto& rot = g.rotations[u];
    if (arc_a.empty() || arc_b.empty()) throw UsageError("split_move: both arcs must be nonempty");
    std::vector<int> joined = arc_a;
    joined.insert(joined.end(), arc_b.begin(), arc_b.end());
    bool contiguous = false;
    if (joined.size() == rot.size()) {
        for (std::size_t s = 0; s < rot.size() && !contiguous; ++s) {
            bool same = true;
            for (std::size_t i = 0; i < rot.size() && same; ++i) same = rot[(s + i) % rot.size()] == joined[i];
            contiguous = same;
        }
    }
    if (!contiguous)
        throw UsageError("split_move: arcs do not partition the rotation of " + g.nodes[u].id + " contiguously");

    const Color c = g.nodes[u].color;
    const int u2 = static_cast<int>(g.nodes.size());
    g.nodes.push_back({fresh_node_id(g, c == Color::white ? "w" : "b"), c});
    const int v = static_cast<int>(g.nodes.size());
    g.nodes.push_back({fresh_node_id(g, c == Color::white ? "b" : "w"), opposite(c)});
    g.rotations.resize(g.nodes.size());

    auto make_edge = [&](int a, int b) {
        Edge ed;
        ed.id = fresh_edge_id(g, "s");
        ed.white = g.nodes[a].color == Color::white ? a : b;
        ed.black = g.nodes[a].color == Color::white ? b : a;
        g.edges.push_back(ed);
        return static_cast<int>(g.edges.size()) - 1;
    };
    const int e_uv = make_edge(u, v);
    const int e_vu2 = make_edge(v, u2);
    for (int e : arc_b) {
        if (c == Color::white) g.edges[e].white = u2;
        else g.edges[e].black = u2;
    }
    g.rotations[u] = arc_a;
    g.rotations[u].push_back(e_uv);
    g.rotations[u2] = arc_b;
    g.rotations[u2].push_back(e_vu2);
    g.rotations[v] = {e_uv, e_vu2};
    return g;
}

TorusGraph spider_move(const Model& m, int k) {
    TorusGraph g = m.labelled_graph();
    if (k < 0 || k >= m.face_count()) throw UsageError("spider_move: face out of range");
    const auto& bd = m.faces()[k].boundary;
    if (bd.size() != 4) throw UsageError("spider_move: face " + std::to_string(k) + " is not a quadrangle");

    // Boundary (counterclockwise): W_b -> B_2 -> W_a -> B_1 -> W_b.
    int s = g.nodes[g.tail(bd[0])].color == Color::white ? 0 : 1;
    const Dart d0 = bd[s % 4], d1 = bd[(s + 1) % 4], d2 = bd[(s + 2) % 4], d3 = bd[(s + 3) % 4];
    const int wb = g.tail(d0), b2 = g.tail(d1), wa = g.tail(d2), b1 = g.tail(d3);
    if (b1 == b2) throw UsageError("spider_move: face " + std::to_string(k) + " has a repeated black corner");
    if (g.degree(b1) != 3 || g.degree(b2) != 3)
        throw UsageError("spider_move: a black corner of face " + std::to_string(k) + " is not 3-valent");

    auto outer = [&](int b, int ea, int eb) {
        for (int e : g.rotations[b])
            if (e != ea && e != eb) return e;
        throw UsageError("spider_move: degenerate black corner");
    };
    const int f1 = outer(b1, d2.edge, d3.edge);
    const int f2 = outer(b2, d0.edge, d1.edge);
    const int x1 = g.edges[f1].white, x2 = g.edges[f2].white;

    // Lift offsets around the face, W_a at the origin.
    const Vec2 o_wa{};
    const Vec2 o_b1 = o_wa + g.shift(d2);
    const Vec2 o_wb = o_b1 + g.shift(d3);
    const Vec2 o_b2 = o_wb + g.shift(d0);
    const Vec2 o_x1 = o_b1 - g.edges[f1].shift;
    const Vec2 o_x2 = o_b2 - g.edges[f2].shift;

    const int ca = static_cast<int>(g.nodes.size());
    g.nodes.push_back({fresh_node_id(g, "b"), Color::black});
    const int cb = static_cast<int>(g.nodes.size());
    g.nodes.push_back({fresh_node_id(g, "b"), Color::black});
    g.rotations.resize(g.nodes.size());
    auto make_edge = [&](int w, int b, Vec2 shift) {
        Edge ed;
        ed.id = fresh_edge_id(g, "p");
        ed.white = w;
        ed.black = b;
        ed.shift = shift;
        g.edges.push_back(ed);
        return static_cast<int>(g.edges.size()) - 1;
    };
    const int ga = make_edge(wa, ca, -o_wa);
    const int gb = make_edge(wb, cb, -o_wb);
    const int ca1 = make_edge(x1, ca, -o_x1);
    const int ca2 = make_edge(x2, ca, -o_x2);
    const int cb1 = make_edge(x1, cb, -o_x1);
    const int cb2 = make_edge(x2, cb, -o_x2);
    g.rotations[ca] = {ga, ca1, ca2};
    g.rotations[cb] = {gb, cb2, cb1};

    auto replace_pair = [&](int w, int first, int second, int repl) {
        auto& rot = g.rotations[w];
        replace_in_rotation(rot, first, {repl});
        rot.erase(std::find(rot.begin(), rot.end(), second));
    };
    replace_pair(wa, d2.edge, d1.edge, ga);
    replace_pair(wb, d0.edge, d3.edge, gb);
    replace_in_rotation(g.rotations[x1], f1, {cb1, ca1});
    replace_in_rotation(g.rotations[x2], f2, {ca2, cb2});
    g.rotations[b1].clear();
    g.rotations[b2].clear();

    std::vector<char> removed(g.edges.size(), 0);
    for (int e : {d0.edge, d1.edge, d2.edge, d3.edge, f1, f2}) removed[e] = 1;
    reanchor(m, g, removed, k);
    for (auto& a : g.face_anchors)
        if (a.label == k) a.dart = {cb1, true};
    std::vector<char> keep_node(g.nodes.size(), 1), keep_edge(g.edges.size(), 1);
    keep_node[b1] = keep_node[b2] = 0;
    for (int e : {d0.edge, d1.edge, d2.edge, d3.edge, f1, f2}) keep_edge[e] = 0;
    return compact(g, keep_node, keep_edge);
}

}  // namespace dimer
