#include "dimer/zigzag.hpp"

#include <algorithm>
#include <map>

#include "dimer/lattice.hpp"
#include "dimer/lp.hpp"
#include "dimer/matchings.hpp"

namespace dimer {

std::vector<ZigzagPath> zigzag_paths(const Model& m) {
    const TorusGraph& g = m.graph();
    const int nd = 2 * static_cast<int>(g.edges.size());
    std::vector<char> seen(nd, 0);
    std::vector<ZigzagPath> out;
    for (int di = 0; di < nd; ++di) {
        if (seen[di]) continue;
        ZigzagPath z;
        Dart d = Dart::from_index(di);
        while (!seen[d.index()]) {
            seen[d.index()] = 1;
            z.darts.push_back(d);
            z.slope += g.shift(d);
            int v = g.head(d);
            d = m.rotation_next(v, d.edge, g.nodes[v].color == Color::white ? 1 : -1);
        }
        out.push_back(std::move(z));
    }
    return out;
}

namespace {

Model without_two_valent(Model m) {
    for (;;) {
        const TorusGraph& g = m.graph();
        int pick = -1;
        for (int n = 0; n < static_cast<int>(g.nodes.size()) && pick < 0; ++n) {
            if (g.degree(n) != 2) continue;
            const Edge& e1 = g.edges[g.rotations[n][0]];
            const Edge& e2 = g.edges[g.rotations[n][1]];
            const bool white = g.nodes[n].color == Color::white;
            if ((white ? e1.black : e1.white) != (white ? e2.black : e2.white)) pick = n;
        }
        if (pick < 0) return m;
        m = validated(join_move(m, pick));
    }
}

// A path is determined by any edge together with whether it is a zig of the path.
std::vector<int> original_indices(const Model& input, const Model& reduced, const std::vector<ZigzagPath>& zs) {
    const TorusGraph& g = input.graph();
    std::map<std::pair<std::string, bool>, int> owner;
    const auto original = zigzag_paths(input);
    for (int i = 0; i < static_cast<int>(original.size()); ++i)
        for (Dart d : original[i].darts) owner[{g.edges[d.edge].id, d.white_to_black}] = i;
    std::vector<int> names;
    for (int i = 0; i < static_cast<int>(zs.size()); ++i) {
        const Dart d = zs[i].darts.front();
        auto it = owner.find({reduced.graph().edges[d.edge].id, d.white_to_black});
        names.push_back(it == owner.end() ? i : it->second);
    }
    return names;
}

struct Visit {
    int edge = 0;
    Vec2 lift;  // translation of the white endpoint
    bool zig = false;
};

std::vector<Visit> visits_of(const TorusGraph& g, const ZigzagPath& z) {
    std::vector<Visit> out;
    Vec2 at;
    for (Dart d : z.darts) {
        out.push_back({d.edge, d.white_to_black ? at : at + g.shift(d), !d.white_to_black});
        at += g.shift(d);
    }
    return out;
}

// v in the lattice spanned by the independent vectors s and t.
bool in_span(const Vec2& v, const Vec2& s, const Vec2& t) {
    const std::int64_t det = cross(s, t);
    return cross(v, t) % det == 0 && cross(s, v) % det == 0;
}

// Two lifts of zigzag paths on the universal cover may cross at most once in each direction.
void check_crossings(const Model& m, const std::vector<ZigzagPath>& zs, const std::vector<int>& names,
                     ConsistencyVerdict& v) {
    const TorusGraph& g = m.graph();
    const int n = static_cast<int>(zs.size());
    std::vector<std::vector<Visit>> visits;
    for (const auto& z : zs) visits.push_back(visits_of(g, z));
    auto fail = [&](int zi, const std::string& why) {
        v.consistent = false;
        v.reasons.push_back("zigzag " + std::to_string(names[zi]) + ": " + why);
        v.witnesses.push_back(names[zi]);
    };
    for (int zi = 0; zi < n; ++zi) {
        if (zs[zi].slope == Vec2{}) continue;
        for (int wi = zi; wi < n; ++wi) {
            if (zs[wi].slope == Vec2{}) continue;
            const Vec2 s = zs[zi].slope;
            const Vec2 t = zs[wi].slope;
            std::vector<std::pair<const Visit*, const Visit*>> shared;
            for (const Visit& a : visits[zi])
                for (const Visit& b : visits[wi])
                    if (a.edge == b.edge && a.zig != b.zig) shared.emplace_back(&a, &b);
            if (shared.empty()) continue;
            if (cross(s, t) == 0) {
                if (s == t) {
                    // Lifts running the same way would meet again after every period in the same order.
                    for (const auto& [a, b] : shared) {
                        if (zi == wi && is_multiple_of(b->lift - a->lift, s)) continue;
                        fail(zi, zi == wi ? "meets a translate of itself at edge " + g.edges[a->edge].id
                                          : "meets the parallel zigzag " + std::to_string(names[wi]) + " at edge " +
                                                g.edges[a->edge].id);
                        break;
                    }
                    continue;
                }
                // Opposite lifts may touch, but must meet their common edges in reverse order.
                const auto lw = static_cast<std::int64_t>(visits[wi].size());
                std::vector<bool> done(shared.size(), false);
                for (std::size_t i = 0; i < shared.size(); ++i) {
                    if (done[i]) continue;
                    const Vec2 base = shared[i].first->lift - shared[i].second->lift;
                    // (position along z, position along w) for the crossings of one pair of lifts.
                    std::vector<std::pair<std::int64_t, std::int64_t>> order;
                    for (std::size_t j = i; j < shared.size(); ++j) {
                        const Vec2 d = shared[j].first->lift - shared[j].second->lift - base;
                        if (!is_multiple_of(d, s)) continue;
                        done[j] = true;
                        const std::int64_t periods = s.x != 0 ? d.x / s.x : d.y / s.y;
                        order.emplace_back(shared[j].first - visits[zi].data(),
                                           -periods * lw + (shared[j].second - visits[wi].data()));
                    }
                    std::sort(order.begin(), order.end());
                    bool reversed = order.front().second - order.back().second < lw;
                    for (std::size_t j = 1; j < order.size(); ++j)
                        reversed = reversed && order[j].second < order[j - 1].second;
                    if (!reversed) {
                        fail(zi, "meets the opposite zigzag " + std::to_string(names[wi]) + " twice in the same order");
                        break;
                    }
                }
                continue;
            }
            // Crossings of the same pair of lifts share the class of their offset modulo <s, t>.
            bool reported = false;
            for (std::size_t i = 0; i < shared.size() && !reported; ++i)
                for (std::size_t j = i + 1; j < shared.size() && !reported; ++j) {
                    const Vec2 oi = shared[i].first->lift - shared[i].second->lift;
                    const Vec2 oj = shared[j].first->lift - shared[j].second->lift;
                    if (shared[i].first->zig != shared[j].first->zig || !in_span(oi - oj, s, t)) continue;
                    fail(zi, "crosses zigzag " + std::to_string(names[wi]) + " twice in the same direction");
                    reported = true;
                }
        }
    }
}

}  // namespace

ConsistencyVerdict is_consistent(const Model& input) {
    // Join moves keep zigzag paths and let two paths touch at a 2-valent node, so the
    // crossing conditions are checked on the model with those nodes joined away.
    const Model m = without_two_valent(input);
    const TorusGraph& g = m.graph();
    ConsistencyVerdict v;
    auto zs = zigzag_paths(m);
    const auto names = original_indices(input, m, zs);
    for (int zi = 0; zi < static_cast<int>(zs.size()); ++zi) {
        const auto& z = zs[zi];
        auto fail = [&](const std::string& why) {
            v.consistent = false;
            v.reasons.push_back("zigzag " + std::to_string(names[zi]) + ": " + why);
            v.witnesses.push_back(names[zi]);
        };
        if (z.slope == Vec2{}) {
            fail("trivial slope (0,0)");
            continue;
        }
        if (!is_primitive(z.slope)) fail("slope " + to_string(z.slope) + " is not primitive");

        // Translation of the white endpoint's lift and of each tail node along one period.
        std::map<int, std::vector<Vec2>> edge_lifts;
        std::map<int, std::vector<Vec2>> node_lifts;
        Vec2 at;
        for (Dart d : z.darts) {
            node_lifts[g.tail(d)].push_back(at);
            edge_lifts[d.edge].push_back(d.white_to_black ? at : at + g.shift(d));
            at += g.shift(d);
        }
        bool edge_repeat = false;
        for (const auto& [e, lifts] : edge_lifts)
            for (std::size_t i = 0; i < lifts.size() && !edge_repeat; ++i)
                for (std::size_t j = i + 1; j < lifts.size() && !edge_repeat; ++j)
                    if (is_multiple_of(lifts[j] - lifts[i], z.slope)) {
                        fail("edge " + g.edges[e].id + " repeats on the universal cover");
                        edge_repeat = true;
                    }
        bool node_repeat = false;
        for (const auto& [n, lifts] : node_lifts)
            for (std::size_t i = 0; i < lifts.size(); ++i)
                for (std::size_t j = i + 1; j < lifts.size(); ++j)
                    node_repeat |= is_multiple_of(lifts[j] - lifts[i], z.slope);
        if (node_repeat) v.node_repeats.push_back(names[zi]);
    }
    check_crossings(m, zs, names, v);
    return v;
}

RChargeResult rcharge_feasible(const Model& m) {
    const TorusGraph& g = m.graph();
    const int ne = static_cast<int>(g.edges.size());
    // Columns: y_e = R(e) - eps >= 0, then eps = p - q.
    const int p = ne, q = ne + 1;
    LinearProgram lp;
    lp.c.assign(ne + 2, 0);
    lp.c[p] = 1;
    lp.c[q] = -1;
    for (int v = 0; v < static_cast<int>(g.nodes.size()); ++v) {
        std::vector<mpq_class> row(ne + 2, 0);
        for (int e : g.rotations[v]) row[e] += 1;
        row[p] = g.degree(v);
        row[q] = -g.degree(v);
        lp.a.push_back(std::move(row));
        lp.b.push_back(2);
    }
    for (const Face& f : m.faces()) {
        std::vector<mpq_class> row(ne + 2, 0);
        const int len = static_cast<int>(f.boundary.size());
        for (Dart d : f.boundary) row[d.edge] += 1;
        row[p] = len;
        row[q] = -len;
        lp.a.push_back(std::move(row));
        lp.b.push_back(len - 2);
    }
    auto sol = solve(lp);
    RChargeResult res;
    if (sol.status != LpStatus::optimal) return res;
    mpq_class eps = sol.x[p] - sol.x[q];
    res.epsilon = eps;
    res.feasible = eps > 0;
    for (int e = 0; e < ne; ++e) res.r.push_back(sol.x[e] + eps);
    return res;
}

SlopeSideResult slope_side_check(const Model& m) {
    SlopeSideResult res;
    for (const auto& z : zigzag_paths(m)) res.slopes.push_back(z.slope);
    auto poly = pm_polygon(m);
    res.sides = primitive_sides(poly.vertices);
    std::sort(res.slopes.begin(), res.slopes.end());
    std::sort(res.sides.begin(), res.sides.end());
    res.equal = res.slopes == res.sides;
    return res;
}

}  // namespace dimer
