#include "dimer/stability.hpp"

#include <algorithm>
#include <numeric>

#include "dimer/errors.hpp"
#include "dimer/lattice.hpp"
#include "dimer/lp.hpp"

namespace dimer {

namespace {

bool path_survives(const std::vector<int>& path, const std::vector<char>& in_support) {
    return std::all_of(path.begin(), path.end(), [&](int a) { return in_support[a] != 0; });
}

Segment make_segment(Vec2 a, Vec2 b) { return a < b ? Segment{a, b} : Segment{b, a}; }

}  // namespace

CosupportResult rep_from_cosupport(const QuiverWithPotential& qp, const std::vector<int>& cosupport) {
    SupportRep rep;
    rep.vertex_count = qp.quiver.vertex_count;
    rep.in_support.assign(qp.quiver.arrow_count(), 1);
    for (int a : cosupport) {
        if (a < 0 || a >= qp.quiver.arrow_count()) throw UsageError("rep_from_cosupport: arrow out of range");
        rep.in_support[a] = 0;
    }
    CosupportResult res;
    for (const auto& r : relations(qp))
        if (path_survives(r.plus, rep.in_support) != path_survives(r.minus, rep.in_support)) {
            res.violating_arrow = r.arrow;
            return res;
        }
    res.rep = std::move(rep);
    return res;
}

std::vector<std::uint32_t> closed_subsets(const Quiver& q, const std::vector<char>& in_support) {
    const int n = q.vertex_count;
    if (n > max_stability_vertices)
        throw UsageError("stability: " + std::to_string(n) + " vertices exceed the limit of " +
                         std::to_string(max_stability_vertices));
    std::vector<std::uint32_t> succ(n, 0);
    for (int a = 0; a < q.arrow_count(); ++a)
        if (in_support[a]) succ[q.arrows[a].tail] |= 1u << q.arrows[a].head;
    std::vector<std::uint32_t> out;
    const std::uint32_t full = (n == 32) ? ~0u : ((1u << n) - 1);
    for (std::uint32_t t = 1; t < full; ++t) {
        bool closed = true;
        for (int v = 0; v < n && closed; ++v)
            if ((t >> v & 1u) && (succ[v] & ~t)) closed = false;
        if (closed) out.push_back(t);
    }
    return out;
}

bool is_theta_stable(const QuiverWithPotential& qp, const SupportRep& rep, const Theta& theta) {
    const int n = qp.quiver.vertex_count;
    if (static_cast<int>(theta.size()) != n) throw UsageError("theta has the wrong length");
    if (std::accumulate(theta.begin(), theta.end(), std::int64_t{0}) != 0)
        throw UsageError("theta must sum to zero");
    for (std::uint32_t t : closed_subsets(qp.quiver, rep.in_support)) {
        std::int64_t s = 0;
        for (int v = 0; v < n; ++v)
            if (t >> v & 1u) s += theta[v];
        if (s <= 0) return false;
    }
    return true;
}

StablePms theta_stable_pms(const Model& m, const Theta& theta, const std::optional<PerfectMatching>& reference) {
    auto qp = dualize(m);
    auto poly = pm_polygon(m, reference);
    StablePms res;
    std::map<Vec2, std::vector<int>> stable;
    for (int i = 0; i < static_cast<int>(poly.pms.size()); ++i) {
        auto rep = rep_from_cosupport(qp, poly.pms[i].edges);
        if (rep.rep && is_theta_stable(qp, *rep.rep, theta)) stable[poly.points[i]].push_back(i);
    }
    for (const Vec2& p : lattice_points(poly.vertices)) {
        auto it = stable.find(p);
        const std::size_t count = it == stable.end() ? 0 : it->second.size();
        if (count != 1)
            res.problems.push_back("theta not generic: " + std::to_string(count) + " stable perfect matchings at " +
                                   to_string(p));
        if (count >= 1) res.by_point[p] = poly.pms[it->second.front()];
    }
    res.generic = res.problems.empty();
    return res;
}

Triangulation triangulate(const Model& m, const Theta& theta, const std::optional<PerfectMatching>& reference) {
    Triangulation tri;
    auto stable = theta_stable_pms(m, theta, reference);
    tri.polygon = pm_polygon(m, reference).vertices;
    if (!stable.generic) {
        tri.problems = stable.problems;
        return tri;
    }
    auto qp = dualize(m);
    std::vector<std::pair<Vec2, PerfectMatching>> pts(stable.by_point.begin(), stable.by_point.end());
    const int n = static_cast<int>(pts.size());
    std::vector<std::vector<char>> joined(n, std::vector<char>(n, 0));
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            std::vector<int> cos = pts[i].second.edges;
            cos.insert(cos.end(), pts[j].second.edges.begin(), pts[j].second.edges.end());
            auto rep = rep_from_cosupport(qp, cos);
            if (rep.rep && is_theta_stable(qp, *rep.rep, theta)) {
                joined[i][j] = joined[j][i] = 1;
                tri.segments.push_back(make_segment(pts[i].first, pts[j].first));
            }
        }
    std::sort(tri.segments.begin(), tri.segments.end());

    for (const auto& s : tri.segments)
        if (!is_primitive(s.second - s.first))
            tri.problems.push_back("segment " + to_string(s.first) + "-" + to_string(s.second) + " is not primitive");
    for (std::size_t i = 0; i < tri.segments.size(); ++i)
        for (std::size_t j = i + 1; j < tri.segments.size(); ++j) {
            const auto& a = tri.segments[i];
            const auto& b = tri.segments[j];
            if (segments_cross(a.first, a.second, b.first, b.second))
                tri.problems.push_back("segments " + to_string(a.first) + "-" + to_string(a.second) + " and " +
                                       to_string(b.first) + "-" + to_string(b.second) + " cross");
        }
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            for (int k = j + 1; k < n; ++k) {
                if (!joined[i][j] || !joined[j][k] || !joined[i][k]) continue;
                auto a = orient(pts[i].first, pts[j].first, pts[k].first);
                if (a == 1 || a == -1) tri.triangles.push_back({pts[i].first, pts[j].first, pts[k].first});
            }
    const auto expected = area2(tri.polygon);
    if (static_cast<std::int64_t>(tri.triangles.size()) != expected)
        tri.problems.push_back(std::to_string(tri.triangles.size()) + " unimodular triangles, expected " +
                               std::to_string(expected));
    tri.ok = tri.problems.empty();
    return tri;
}

std::optional<Theta> find_stabilizing_theta(const QuiverWithPotential& qp, const PerfectMatching& d) {
    auto rep = rep_from_cosupport(qp, d.edges);
    if (!rep.rep) return std::nullopt;
    const int n = qp.quiver.vertex_count;
    auto subsets = closed_subsets(qp.quiver, rep.rep->in_support);
    const int ns = static_cast<int>(subsets.size());
    // Columns: theta = u - w, then one slack per closed subset.
    LinearProgram lp;
    const int cols = 2 * n + ns;
    lp.c.assign(cols, 0);
    for (int s = 0; s < ns; ++s) {
        std::vector<mpq_class> row(cols, 0);
        for (int v = 0; v < n; ++v)
            if (subsets[s] >> v & 1u) {
                row[v] = 1;
                row[n + v] = -1;
            }
        row[2 * n + s] = -1;
        lp.a.push_back(std::move(row));
        lp.b.push_back(1);
    }
    std::vector<mpq_class> sum(cols, 0);
    for (int v = 0; v < n; ++v) {
        sum[v] = 1;
        sum[n + v] = -1;
    }
    lp.a.push_back(std::move(sum));
    lp.b.push_back(0);
    auto sol = solve(lp);
    if (sol.status != LpStatus::optimal) return std::nullopt;

    std::vector<mpq_class> q(n);
    mpz_class scale = 1;
    for (int v = 0; v < n; ++v) {
        q[v] = sol.x[v] - sol.x[n + v];
        mpz_class den = q[v].get_den();
        mpz_lcm(scale.get_mpz_t(), scale.get_mpz_t(), den.get_mpz_t());
    }
    Theta theta(n);
    for (int v = 0; v < n; ++v) {
        mpq_class t = q[v] * scale;
        theta[v] = t.get_num().get_si();
    }
    if (!is_theta_stable(qp, *rep.rep, theta)) return std::nullopt;
    return theta;
}

}  // namespace dimer
