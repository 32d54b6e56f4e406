#include "dimer/mutations.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <map>
#include <set>

#include "dimer/errors.hpp"
#include "dimer/lattice.hpp"

namespace dimer {

PerfectMatching mutate_pm_plus(const QuiverWithPotential& qp, const PerfectMatching& d, int k) {
    if (!is_strict_source(qp, d, k))
        throw UsageError("lambda+: vertex " + std::to_string(k) + " is not a strict source");
    std::vector<int> out;
    for (int a : d.edges)
        if (qp.quiver.arrows[a].head != k) out.push_back(a);
    for (int a : qp.quiver.out_arrows(k)) out.push_back(a);
    return make_matching(std::move(out));
}

PerfectMatching mutate_pm_minus(const QuiverWithPotential& qp, const PerfectMatching& d, int k) {
    if (!is_strict_sink(qp, d, k))
        throw UsageError("lambda-: vertex " + std::to_string(k) + " is not a strict sink");
    std::vector<int> out;
    for (int a : d.edges)
        if (qp.quiver.arrows[a].tail != k) out.push_back(a);
    for (int a : qp.quiver.in_arrows(k)) out.push_back(a);
    return make_matching(std::move(out));
}

QuiverPrediction mutated_quiver_prediction(const QuiverWithPotential& qp, const PerfectMatching& d, int k) {
    if (!is_strict_source(qp, d, k))
        throw UsageError("prediction: vertex " + std::to_string(k) + " is not a strict source");
    const Quiver& q = qp.quiver;
    QuiverPrediction p;
    for (int a = 0; a < q.arrow_count(); ++a)
        if (!d.contains(a) && q.arrows[a].tail != k) p.kept.push_back(a);
    for (const auto& r : relations(qp)) {
        if (!d.contains(r.arrow)) continue;
        const int start = q.arrows[r.plus.front()].tail;
        const int end = q.arrows[r.plus.back()].head;
        if (start == k) {
            Arrow star;
            star.tail = end;
            star.head = k;
            star.edge = r.arrow;
            star.name = q.arrows[r.arrow].name + "*";
            p.reversed.push_back(star);
        } else {
            p.relation_arrows.push_back(r.arrow);
        }
    }
    for (int a = 0; a < q.arrow_count(); ++a)
        if (!d.contains(a) && q.arrows[a].tail == k) p.relation_arrows.push_back(a);
    std::sort(p.relation_arrows.begin(), p.relation_arrows.end());
    return p;
}

std::optional<int> ExchangeGraph::index_of(const PerfectMatching& d) const {
    for (int i = 0; i < static_cast<int>(pms.size()); ++i)
        if (pms[i] == d) return i;
    return std::nullopt;
}

ExchangeGraph exchange_graph(const Model& m, const PerfectMatching& start) {
    auto poly = pm_polygon(m);
    if (!poly.index_of(start)) throw UsageError("exchange_graph: start is not a perfect matching");
    if (classify(start, poly) != PmClass::internal)
        throw UsageError("exchange_graph: start is not an internal perfect matching");
    auto qp = dualize(m);
    ExchangeGraph g;
    std::map<PerfectMatching, int> seen;
    std::set<ExchangeEdge> edges;
    auto visit = [&](const PerfectMatching& d) {
        auto [it, fresh] = seen.emplace(d, static_cast<int>(g.pms.size()));
        if (fresh) g.pms.push_back(d);
        return std::pair{it->second, fresh};
    };
    std::deque<int> queue{visit(start).first};
    while (!queue.empty()) {
        const int i = queue.front();
        queue.pop_front();
        const PerfectMatching d = g.pms[i];
        auto ss = strict_sources_sinks(qp, d);
        for (int k : ss.sources) {
            auto [j, fresh] = visit(mutate_pm_plus(qp, d, k));
            edges.insert({i, j, k});
            if (fresh) queue.push_back(j);
        }
        for (int k : ss.sinks) {
            auto [j, fresh] = visit(mutate_pm_minus(qp, d, k));
            edges.insert({j, i, k});
            if (fresh) queue.push_back(j);
        }
    }
    g.edges.assign(edges.begin(), edges.end());
    return g;
}

std::vector<int> mutable_vertices(const QuiverWithPotential& qp) {
    const Quiver& q = qp.quiver;
    std::vector<int> out;
    for (int k = 0; k < q.vertex_count; ++k) {
        auto in = q.in_arrows(k), outs = q.out_arrows(k);
        if (in.size() != 2 || outs.size() != 2) continue;
        bool bad = false;
        for (int a : in) {
            if (q.arrows[a].tail == k) bad = true;
            for (int b : outs)
                if (q.arrows[b].head == q.arrows[a].tail) bad = true;
        }
        if (!bad) out.push_back(k);
    }
    return out;
}

Model mutate_dimer(const Model& m, int k) {
    if (k < 0 || k >= m.face_count()) throw UsageError("mutate_dimer: face out of range");
    {
        const auto& bd = m.faces()[k].boundary;
        if (bd.size() != 4) throw UsageError("mutate_dimer: face " + std::to_string(k) + " is not a quadrangle");
        std::set<int> corners;
        for (Dart d : bd) corners.insert(m.graph().tail(d));
        if (corners.size() != 4)
            throw UsageError("mutate_dimer: face " + std::to_string(k) + " has a repeated corner");
    }
    Model cur = m;
    for (;;) {
        const TorusGraph& g = cur.graph();
        const auto& bd = cur.faces()[k].boundary;
        std::optional<int> target;
        std::vector<int> arc_a, arc_b;
        for (std::size_t i = 0; i < bd.size() && !target; ++i) {
            const Dart d = bd[i];
            const int b = g.tail(d);
            if (g.nodes[b].color != Color::black || g.degree(b) <= 3) continue;
            const int e_out = d.edge;
            const int e_in = bd[(i + bd.size() - 1) % bd.size()].edge;
            arc_a = {e_out, e_in};
            const auto& rot = g.rotations[b];
            const int n = static_cast<int>(rot.size());
            const int p = cur.rotation_position(b, e_in);
            arc_b.clear();
            for (int j = 1; j <= n - 2; ++j) arc_b.push_back(rot[(p + j) % n]);
            target = b;
        }
        if (!target) break;
        cur = validated(split_move(cur, *target, arc_a, arc_b));
    }
    cur = validated(spider_move(cur, k));
    for (;;) {
        const TorusGraph& g = cur.graph();
        std::optional<int> target;
        for (int v = 0; v < static_cast<int>(g.nodes.size()) && !target; ++v) {
            if (g.degree(v) != 2) continue;
            const auto& e1 = g.edges[g.rotations[v][0]];
            const auto& e2 = g.edges[g.rotations[v][1]];
            const bool white = g.nodes[v].color == Color::white;
            if ((white ? e1.black : e1.white) != (white ? e2.black : e2.white)) target = v;
        }
        if (!target) break;
        cur = validated(join_move(cur, *target));
    }
    TorusGraph g = cur.labelled_graph();
    g.name = m.graph().name + "-mu" + std::to_string(k);
    return validated(g);
}

namespace {

struct Term {
    int sign = 1;
    std::vector<int> cycle;
};

std::vector<int> rotated_to(const std::vector<int>& cycle, int pos) {
    std::vector<int> out(cycle.begin() + pos, cycle.end());
    out.insert(out.end(), cycle.begin(), cycle.begin() + pos);
    return out;
}

}  // namespace

QpMutation mutate_qp(const QuiverWithPotential& qp, int k) {
    auto mv = mutable_vertices(qp);
    if (std::find(mv.begin(), mv.end(), k) == mv.end())
        throw UsageError("mutate_qp: vertex " + std::to_string(k) + " is not mutable");
    const Quiver& q = qp.quiver;
    QpMutation res;

    // Anticlockwise pairing: a_i b_i consecutive in a negative term.
    std::vector<std::pair<int, int>> pairs;
    for (const auto& t : qp.potential) {
        if (t.sign > 0) continue;
        const int len = static_cast<int>(t.cycle.size());
        for (int i = 0; i < len; ++i) {
            int x = t.cycle[i], y = t.cycle[(i + 1) % len];
            if (q.arrows[x].head == k && q.arrows[y].tail == k) pairs.push_back({x, y});
        }
    }
    std::sort(pairs.begin(), pairs.end());
    if (pairs.size() != 2 || pairs[0].first == pairs[1].first || pairs[0].second == pairs[1].second)
        throw InvariantError("mutate_qp: arrows at vertex " + std::to_string(k) + " do not pair up anticlockwise");
    for (int i = 0; i < 2; ++i) {
        res.a[i] = pairs[i].first;
        res.b[i] = pairs[i].second;
    }

    std::vector<Arrow> arrows;
    std::vector<ArrowOrigin> origin;
    std::vector<int> kept_index(q.arrow_count(), -1);
    for (int x = 0; x < q.arrow_count(); ++x) {
        if (q.arrows[x].head == k || q.arrows[x].tail == k) continue;
        kept_index[x] = static_cast<int>(arrows.size());
        Arrow ar = q.arrows[x];
        ar.edge = -1;
        arrows.push_back(ar);
        origin.push_back({ArrowOrigin::Kind::kept, x, -1});
    }
    int a_star[2], b_star[2], bracket[2][2];
    for (int i = 0; i < 2; ++i) {
        const Arrow& a = q.arrows[res.a[i]];
        a_star[i] = static_cast<int>(arrows.size());
        arrows.push_back({k, a.tail, -1, a.name + "*"});
        origin.push_back({ArrowOrigin::Kind::a_star, res.a[i], -1});
    }
    for (int j = 0; j < 2; ++j) {
        const Arrow& b = q.arrows[res.b[j]];
        b_star[j] = static_cast<int>(arrows.size());
        arrows.push_back({b.head, k, -1, b.name + "*"});
        origin.push_back({ArrowOrigin::Kind::b_star, res.b[j], -1});
    }
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) {
            const Arrow& a = q.arrows[res.a[i]];
            const Arrow& b = q.arrows[res.b[j]];
            bracket[i][j] = static_cast<int>(arrows.size());
            arrows.push_back({a.tail, b.head, -1, "[" + a.name + b.name + "]"});
            origin.push_back({ArrowOrigin::Kind::bracket, res.a[i], res.b[j]});
        }
    auto which_a = [&](int x) { return x == res.a[0] ? 0 : x == res.a[1] ? 1 : -1; };
    auto which_b = [&](int x) { return x == res.b[0] ? 0 : x == res.b[1] ? 1 : -1; };

    std::vector<Term> terms;
    for (const auto& t : qp.potential) {
        const int len = static_cast<int>(t.cycle.size());
        int start = 0;
        while (start < len && which_b(t.cycle[start]) >= 0) ++start;
        if (start == len) throw InvariantError("mutate_qp: potential term made of outgoing arrows only");
        auto cyc = rotated_to(t.cycle, start);
        Term nt{t.sign, {}};
        for (int i = 0; i < len; ++i) {
            const int x = cyc[i];
            const int ia = which_a(x);
            if (ia >= 0) {
                const int jb = i + 1 < len ? which_b(cyc[i + 1]) : -1;
                if (jb < 0) throw InvariantError("mutate_qp: an incoming arrow at k is not followed by an outgoing one");
                nt.cycle.push_back(bracket[ia][jb]);
                ++i;
            } else if (which_b(x) >= 0) {
                throw InvariantError("mutate_qp: an outgoing arrow at k is not preceded by an incoming one");
            } else {
                nt.cycle.push_back(kept_index[x]);
            }
        }
        terms.push_back(std::move(nt));
    }
    terms.push_back({+1, {a_star[0], bracket[0][0], b_star[0]}});
    terms.push_back({-1, {a_star[0], bracket[0][1], b_star[1]}});
    terms.push_back({+1, {a_star[1], bracket[1][1], b_star[1]}});
    terms.push_back({-1, {a_star[1], bracket[1][0], b_star[0]}});

    // Reduction: s (x c) + sigma (x r) + ... becomes ... with c -> -(sigma/s) r.
    std::vector<char> removed(arrows.size(), 0);
    const int guard = static_cast<int>(arrows.size()) + 1;
    for (int iter = 0;; ++iter) {
        if (iter > guard) throw InvariantError("mutate_qp: reduction does not terminate");
        int t2 = -1;
        for (int t = 0; t < static_cast<int>(terms.size()) && t2 < 0; ++t)
            if (terms[t].cycle.size() == 2) t2 = t;
        if (t2 < 0) break;
        bool done = false;
        for (int pick = 0; pick < 2 && !done; ++pick) {
            const int x = terms[t2].cycle[pick];
            const int c = terms[t2].cycle[1 - pick];
            if (x == c) continue;
            int other = -1, count = 0;
            for (int t = 0; t < static_cast<int>(terms.size()); ++t) {
                if (t == t2) continue;
                for (int y : terms[t].cycle)
                    if (y == x) { ++count; other = t; }
            }
            if (count != 1) continue;
            const auto& oc = terms[other].cycle;
            const int pos = static_cast<int>(std::find(oc.begin(), oc.end(), x) - oc.begin());
            auto rot = rotated_to(oc, pos);
            std::vector<int> r(rot.begin() + 1, rot.end());
            if (std::find(r.begin(), r.end(), c) != r.end()) continue;
            const int s = terms[t2].sign, sigma = terms[other].sign;
            std::vector<Term> next;
            for (int t = 0; t < static_cast<int>(terms.size()); ++t) {
                if (t == t2 || t == other) continue;
                Term nt{terms[t].sign, {}};
                for (int y : terms[t].cycle) {
                    if (y == c) {
                        nt.sign = nt.sign * -sigma * s;
                        nt.cycle.insert(nt.cycle.end(), r.begin(), r.end());
                    } else {
                        nt.cycle.push_back(y);
                    }
                }
                next.push_back(std::move(nt));
            }
            terms = std::move(next);
            removed[x] = removed[c] = 1;
            done = true;
        }
        if (!done) throw InvariantError("mutate_qp: a quadratic term cannot be eliminated");
    }

    std::vector<int> renum(arrows.size(), -1);
    for (std::size_t x = 0; x < arrows.size(); ++x) {
        if (removed[x]) continue;
        renum[x] = static_cast<int>(res.qp.quiver.arrows.size());
        res.qp.quiver.arrows.push_back(arrows[x]);
        res.origin.push_back(origin[x]);
    }
    res.qp.quiver.vertex_count = q.vertex_count;
    for (auto& t : terms) {
        PotentialTerm pt;
        pt.sign = t.sign;
        for (int y : t.cycle) {
            if (renum[y] < 0) throw InvariantError("mutate_qp: eliminated arrow survives in the potential");
            pt.cycle.push_back(renum[y]);
        }
        std::vector<int> closed = pt.cycle;
        closed.push_back(pt.cycle.front());
        if (!is_path(res.qp.quiver, closed)) throw InvariantError("mutate_qp: potential term is not a cycle");
        pt.cycle = normalize_cycle(std::move(pt.cycle));
        res.qp.potential.push_back(std::move(pt));
    }
    return res;
}

std::optional<std::vector<int>> find_qp_isomorphism(const QuiverWithPotential& from, const QuiverWithPotential& to) {
    const Quiver& qa = from.quiver;
    const Quiver& qb = to.quiver;
    if (qa.vertex_count != qb.vertex_count || qa.arrow_count() != qb.arrow_count() ||
        from.potential.size() != to.potential.size())
        return std::nullopt;
    const int n = qa.arrow_count();
    std::set<std::pair<int, std::vector<int>>> target;
    for (const auto& t : to.potential) target.insert({t.sign, normalize_cycle(t.cycle)});
    if (target.size() != to.potential.size()) return std::nullopt;

    // Terms become checkable once their largest arrow is assigned.
    std::vector<std::vector<int>> ready(n);
    for (int t = 0; t < static_cast<int>(from.potential.size()); ++t) {
        const auto& c = from.potential[t].cycle;
        ready[*std::max_element(c.begin(), c.end())].push_back(t);
    }
    std::vector<int> map(n, -1);
    std::vector<char> used(n, 0);
    std::function<bool(int)> rec = [&](int a) -> bool {
        if (a == n) return true;
        for (int b = 0; b < n; ++b) {
            if (used[b] || qb.arrows[b].tail != qa.arrows[a].tail || qb.arrows[b].head != qa.arrows[a].head) continue;
            map[a] = b;
            used[b] = 1;
            bool ok = true;
            for (int t : ready[a]) {
                std::vector<int> img;
                for (int x : from.potential[t].cycle) img.push_back(map[x]);
                if (!target.count({from.potential[t].sign, normalize_cycle(img)})) { ok = false; break; }
            }
            if (ok && rec(a + 1)) return true;
            used[b] = 0;
            map[a] = -1;
        }
        return false;
    };
    if (!rec(0)) return std::nullopt;
    return map;
}

Transport transport_pm(const Model& m, const PerfectMatching& d, int k, std::optional<Side> side) {
    auto qp = dualize(m);
    if (!is_perfect_matching(qp, d)) throw UsageError("transport_pm: not a perfect matching");
    auto mut = mutate_qp(qp, k);
    const bool has_a = d.contains(mut.a[0]) || d.contains(mut.a[1]);
    const bool has_b = d.contains(mut.b[0]) || d.contains(mut.b[1]);
    Transport res{m, {}, Side::left, false, {}};
    if (side) {
        if (*side == Side::left && has_b && !has_a)
            throw UsageError("transport_pm: left mutation needs an incoming arrow at k in D");
        if (*side == Side::right && has_a && !has_b)
            throw UsageError("transport_pm: right mutation needs an outgoing arrow at k in D");
        res.side = *side;
    } else if (has_a) {
        res.side = Side::left;
    } else if (has_b) {
        res.side = Side::right;
    } else {
        res.side = Side::left;
    }
    res.free_choice = !has_a && !has_b;

    auto deg = [&](int x) { return d.contains(x) ? 1 : 0; };
    const bool left = res.side == Side::left;
    for (const auto& o : mut.origin) {
        switch (o.kind) {
            case ArrowOrigin::Kind::kept: res.degrees.push_back(deg(o.first)); break;
            case ArrowOrigin::Kind::a_star: res.degrees.push_back(left ? 1 - deg(o.first) : -deg(o.first)); break;
            case ArrowOrigin::Kind::b_star: res.degrees.push_back(left ? -deg(o.first) : 1 - deg(o.first)); break;
            case ArrowOrigin::Kind::bracket: res.degrees.push_back(deg(o.first) + deg(o.second)); break;
        }
    }
    std::vector<int> chosen;
    for (int x = 0; x < static_cast<int>(res.degrees.size()); ++x) {
        if (res.degrees[x] == 1) chosen.push_back(x);
        else if (res.degrees[x] != 0)
            throw InvariantError("transport_pm: mutated degree " + std::to_string(res.degrees[x]) + " on arrow " +
                                 mut.qp.quiver.arrows[x].name);
    }
    PerfectMatching on_qp = make_matching(chosen);
    if (!is_perfect_matching(mut.qp, on_qp))
        throw InvariantError("transport_pm: mutated degrees do not come from a perfect matching");

    res.mutated = mutate_dimer(m, k);
    auto iso = find_qp_isomorphism(mut.qp, dualize(res.mutated));
    if (!iso) throw InvariantError("transport_pm: mutated QP does not match the mutated dimer");
    std::vector<int> edges;
    for (int x : on_qp.edges) edges.push_back((*iso)[x]);
    res.pm = make_matching(std::move(edges));
    if (!is_perfect_matching(res.mutated, res.pm))
        throw InvariantError("transport_pm: image is not a perfect matching of the mutated dimer");
    return res;
}

std::vector<Vec2> corner_anchored_points(const Model& m, const PerfectMatching& d) {
    auto poly = pm_polygon(m, d);
    std::vector<Vec2> out;
    for (const Vec2& v : canonical_rotation(poly.vertices)) out.push_back(pm_homology(m, corner_pm(poly, v), d));
    return out;
}

std::vector<Vec2> normalized_polygon(const Model& m) {
    auto hull = canonical_rotation(pm_polygon(m).vertices);
    if (hull.empty()) return hull;
    const Vec2 base = hull.front();
    for (auto& v : hull) v -= base;
    return hull;
}

ModelFingerprint model_fingerprint(const Model& m) {
    ModelFingerprint f;
    const TorusGraph& g = m.graph();
    for (int v = 0; v < static_cast<int>(g.nodes.size()); ++v) f.valences.push_back(g.degree(v));
    std::sort(f.valences.begin(), f.valences.end());
    f.polygon = normalized_polygon(m);
    auto qp = dualize(m);
    f.adjacency.assign(qp.quiver.vertex_count, std::vector<std::int64_t>(qp.quiver.vertex_count, 0));
    for (const auto& a : qp.quiver.arrows) ++f.adjacency[a.tail][a.head];
    return f;
}

}  // namespace dimer
