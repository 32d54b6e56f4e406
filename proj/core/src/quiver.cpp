#include "dimer/quiver.hpp"

#include <algorithm>

#include "dimer/errors.hpp"

namespace dimer {

bool PerfectMatching::contains(int e) const { return std::binary_search(edges.begin(), edges.end(), e); }

PerfectMatching make_matching(std::vector<int> edges) {
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
    return {std::move(edges)};
}

std::vector<int> Quiver::out_arrows(int v) const {
    std::vector<int> out;
    for (int a = 0; a < arrow_count(); ++a)
        if (arrows[a].tail == v) out.push_back(a);
    return out;
}

std::vector<int> Quiver::in_arrows(int v) const {
    std::vector<int> out;
    for (int a = 0; a < arrow_count(); ++a)
        if (arrows[a].head == v) out.push_back(a);
    return out;
}

std::vector<int> normalize_cycle(std::vector<int> cycle) {
    if (cycle.empty()) return cycle;
    auto best = cycle;
    for (std::size_t s = 1; s < cycle.size(); ++s) {
        std::rotate(cycle.begin(), cycle.begin() + 1, cycle.end());
        if (cycle < best) best = cycle;
    }
    return best;
}

bool is_path(const Quiver& q, const std::vector<int>& arrows) {
    for (std::size_t i = 0; i + 1 < arrows.size(); ++i)
        if (q.arrows[arrows[i]].head != q.arrows[arrows[i + 1]].tail) return false;
    return true;
}

QuiverWithPotential dualize(const Model& m) {
    const TorusGraph& g = m.graph();
    QuiverWithPotential qp;
    qp.quiver.vertex_count = m.face_count();
    for (int e = 0; e < static_cast<int>(g.edges.size()); ++e) {
        Arrow a;
        a.tail = m.face_of({e, true});
        a.head = m.face_of({e, false});
        a.edge = e;
        a.name = g.edges[e].id;
        qp.quiver.arrows.push_back(a);
    }
    for (int v = 0; v < static_cast<int>(g.nodes.size()); ++v) {
        PotentialTerm t;
        t.node = v;
        const auto& rot = g.rotations[v];
        if (g.nodes[v].color == Color::white) {
            // The dual cycle runs clockwise around a white node.
            t.sign = 1;
            t.cycle.assign(rot.rbegin(), rot.rend());
        } else {
            t.sign = -1;
            t.cycle = rot;
        }
        std::vector<int> closed = t.cycle;
        closed.push_back(t.cycle.front());
        if (!is_path(qp.quiver, closed))
            throw InvariantError("dual arrows around node " + g.nodes[v].id + " do not form a directed cycle");
        t.cycle = normalize_cycle(std::move(t.cycle));
        qp.term_of_node.push_back(static_cast<int>(qp.potential.size()));
        qp.potential.push_back(std::move(t));
    }
    return qp;
}

std::vector<Relation> relations(const QuiverWithPotential& qp) {
    const int n = qp.quiver.arrow_count();
    std::vector<Relation> out(n);
    std::vector<int> plus_seen(n, 0), minus_seen(n, 0);
    for (int a = 0; a < n; ++a) out[a].arrow = a;
    for (const auto& t : qp.potential) {
        const int len = static_cast<int>(t.cycle.size());
        for (int i = 0; i < len; ++i) {
            int a = t.cycle[i];
            std::vector<int> rest;
            for (int j = 1; j < len; ++j) rest.push_back(t.cycle[(i + j) % len]);
            if (t.sign > 0) {
                ++plus_seen[a];
                out[a].plus = std::move(rest);
            } else {
                ++minus_seen[a];
                out[a].minus = std::move(rest);
            }
        }
    }
    for (int a = 0; a < n; ++a)
        if (plus_seen[a] != 1 || minus_seen[a] != 1)
            throw InvariantError("arrow " + qp.quiver.arrows[a].name +
                                 " does not occur exactly once in a positive and once in a negative term");
    return out;
}

bool is_perfect_matching(const QuiverWithPotential& qp, const PerfectMatching& d) {
    for (int a : d.edges)
        if (a < 0 || a >= qp.quiver.arrow_count()) return false;
    for (const auto& t : qp.potential) {
        int deg = 0;
        for (int a : t.cycle) deg += d.contains(a) ? 1 : 0;
        if (deg != 1) return false;
    }
    return true;
}

Grading grading_of(const QuiverWithPotential& qp, const PerfectMatching& d) {
    if (!is_perfect_matching(qp, d)) throw UsageError("grading_of: arrow set is not a perfect matching");
    Grading deg(qp.quiver.arrow_count(), 0);
    for (int a : d.edges) deg[a] = 1;
    return deg;
}

Quiver subquiver_Q_D(const QuiverWithPotential& qp, const PerfectMatching& d) {
    if (!is_perfect_matching(qp, d)) throw UsageError("subquiver_Q_D: arrow set is not a perfect matching");
    Quiver q;
    q.vertex_count = qp.quiver.vertex_count;
    for (int a = 0; a < qp.quiver.arrow_count(); ++a)
        if (!d.contains(a)) q.arrows.push_back(qp.quiver.arrows[a]);
    return q;
}

}  // namespace dimer
