#include "dimer/algebra.hpp"

#include <gmpxx.h>

#include <algorithm>
#include <map>
#include <queue>

#include "dimer/errors.hpp"

namespace dimer {

namespace {

std::vector<char> arrow_mask(const QuiverWithPotential& qp, const PerfectMatching& d, int dropped) {
    if (!is_perfect_matching(qp, d)) throw UsageError("arrow set is not a perfect matching");
    std::vector<char> keep(qp.quiver.arrow_count(), 1);
    for (int a : d.edges) keep[a] = 0;
    if (dropped >= 0)
        for (int a = 0; a < qp.quiver.arrow_count(); ++a)
            if (qp.quiver.arrows[a].tail == dropped || qp.quiver.arrows[a].head == dropped) keep[a] = 0;
    return keep;
}

bool acyclic(const Quiver& q, const std::vector<char>& keep) {
    std::vector<int> indeg(q.vertex_count, 0);
    for (int a = 0; a < q.arrow_count(); ++a)
        if (keep[a]) ++indeg[q.arrows[a].head];
    std::queue<int> ready;
    for (int v = 0; v < q.vertex_count; ++v)
        if (indeg[v] == 0) ready.push(v);
    int done = 0;
    while (!ready.empty()) {
        int v = ready.front();
        ready.pop();
        ++done;
        for (int a = 0; a < q.arrow_count(); ++a)
            if (keep[a] && q.arrows[a].tail == v && --indeg[q.arrows[a].head] == 0) ready.push(q.arrows[a].head);
    }
    return done == q.vertex_count;
}

struct Path {
    int start = 0;
    int end = 0;
    std::vector<int> arrows;
    friend auto operator<=>(const Path&, const Path&) = default;
};

// Row echelon form over Q, one row at a time; only the rank is needed.
class Echelon {
public:
    bool insert(std::map<int, mpq_class> row) {
        while (!row.empty()) {
            auto lead = row.begin();
            auto it = pivots_.find(lead->first);
            if (it == pivots_.end()) {
                mpq_class c = lead->second;
                for (auto& [col, v] : row) v /= c;
                pivots_.emplace(lead->first, std::move(row));
                return true;
            }
            mpq_class f = lead->second;
            for (const auto& [col, v] : it->second) {
                auto& slot = row[col];
                slot -= f * v;
                if (slot == 0) row.erase(col);
            }
        }
        return false;
    }
    int rank() const { return static_cast<int>(pivots_.size()); }

private:
    std::map<int, std::map<int, mpq_class>> pivots_;
};

Dimension compute(const QuiverWithPotential& qp, const PerfectMatching& d, int dropped, std::int64_t cap) {
    const Quiver& q = qp.quiver;
    const int n = q.vertex_count;
    if (dropped >= n) throw UsageError("vertex out of range");
    auto keep = arrow_mask(qp, d, dropped);
    Dimension res;
    if (!acyclic(q, keep)) {
        res.kind = dropped < 0 ? Dimension::Kind::infinite : Dimension::Kind::undecided;
        return res;
    }

    std::vector<Path> paths;
    std::vector<std::vector<int>> out(n);
    for (int a = 0; a < q.arrow_count(); ++a)
        if (keep[a]) out[q.arrows[a].tail].push_back(a);
    for (int v = 0; v < n; ++v) {
        if (v == dropped) continue;
        std::vector<Path> stack{{v, v, {}}};
        while (!stack.empty()) {
            Path p = std::move(stack.back());
            stack.pop_back();
            for (int a : out[p.end]) {
                Path nxt = p;
                nxt.arrows.push_back(a);
                nxt.end = q.arrows[a].head;
                stack.push_back(std::move(nxt));
            }
            paths.push_back(std::move(p));
            if (static_cast<std::int64_t>(paths.size()) > cap)
                throw InvariantError("path count exceeds the cap of " + std::to_string(cap));
        }
    }
    std::sort(paths.begin(), paths.end());
    std::map<std::vector<int>, int> index;
    std::vector<std::vector<int>> ending_at(n), starting_at(n);
    for (int i = 0; i < static_cast<int>(paths.size()); ++i) {
        const Path& p = paths[i];
        if (!p.arrows.empty()) index.emplace(p.arrows, i);
        ending_at[p.end].push_back(i);
        starting_at[p.start].push_back(i);
    }

    std::vector<std::vector<Echelon>> blocks(n, std::vector<Echelon>(n));
    auto alive = [&](const std::vector<int>& path) {
        return std::all_of(path.begin(), path.end(), [&](int a) { return keep[a] != 0; });
    };
    for (const auto& r : relations(qp)) {
        if (!d.contains(r.arrow)) continue;
        const bool plus = alive(r.plus), minus = alive(r.minus);
        if (!plus && !minus) continue;
        const int s = q.arrows[r.arrow].head, t = q.arrows[r.arrow].tail;
        for (int u : ending_at[s])
            for (int v : starting_at[t]) {
                std::map<int, mpq_class> row;
                auto add = [&](const std::vector<int>& mid, int sign) {
                    std::vector<int> word = paths[u].arrows;
                    word.insert(word.end(), mid.begin(), mid.end());
                    word.insert(word.end(), paths[v].arrows.begin(), paths[v].arrows.end());
                    auto& slot = row[index.at(word)];
                    slot += sign;
                    if (slot == 0) row.erase(index.at(word));
                };
                if (plus) add(r.plus, 1);
                if (minus) add(r.minus, -1);
                blocks[paths[u].start][paths[v].end].insert(std::move(row));
            }
    }

    res.blocks.assign(n, std::vector<std::int64_t>(n, 0));
    for (const Path& p : paths) ++res.blocks[p.start][p.end];
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            res.blocks[i][j] -= blocks[i][j].rank();
            res.value += res.blocks[i][j];
        }
    return res;
}

}  // namespace

bool is_acyclic(const QuiverWithPotential& qp, const PerfectMatching& d) {
    return acyclic(qp.quiver, arrow_mask(qp, d, -1));
}

Dimension truncated_dimension(const QuiverWithPotential& qp, const PerfectMatching& d, std::int64_t path_cap) {
    return compute(qp, d, -1, path_cap);
}

Dimension dimension_without_vertex(const QuiverWithPotential& qp, const PerfectMatching& d, int vertex,
                                   std::int64_t path_cap) {
    if (vertex < 0) throw UsageError("vertex out of range");
    return compute(qp, d, vertex, path_cap);
}

bool is_strict_source(const QuiverWithPotential& qp, const PerfectMatching& d, int k) {
    for (int a = 0; a < qp.quiver.arrow_count(); ++a) {
        const Arrow& ar = qp.quiver.arrows[a];
        if (ar.head == k && !d.contains(a)) return false;
        if (ar.tail == k && d.contains(a)) return false;
    }
    return true;
}

bool is_strict_sink(const QuiverWithPotential& qp, const PerfectMatching& d, int k) {
    for (int a = 0; a < qp.quiver.arrow_count(); ++a) {
        const Arrow& ar = qp.quiver.arrows[a];
        if (ar.tail == k && !d.contains(a)) return false;
        if (ar.head == k && d.contains(a)) return false;
    }
    return true;
}

SourcesSinks strict_sources_sinks(const QuiverWithPotential& qp, const PerfectMatching& d) {
    SourcesSinks out;
    for (int k = 0; k < qp.quiver.vertex_count; ++k) {
        if (is_strict_source(qp, d, k)) out.sources.push_back(k);
        if (is_strict_sink(qp, d, k)) out.sinks.push_back(k);
    }
    return out;
}

Fingerprint algebra_fingerprint(const QuiverWithPotential& qp, const PerfectMatching& d) {
    auto dim = truncated_dimension(qp, d);
    if (!dim.finite()) throw UsageError("algebra_fingerprint: Q_D has a cycle");
    return {dim.value, canonical_matrix(dim.blocks)};
}

}  // namespace dimer
