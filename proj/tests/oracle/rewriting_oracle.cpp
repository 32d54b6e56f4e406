#include "rewriting_oracle.hpp"

#include <map>
#include <numeric>
#include <stdexcept>

namespace dimer::oracle {
namespace {

constexpr std::size_t max_paths = 2'000'000;

struct PathSet {
    std::vector<int> start;
    std::vector<int> end;
    std::vector<std::vector<int>> arrows;
    std::map<std::pair<int, std::vector<int>>, int> index;

    int add(int s, int e, std::vector<int> p) {
        int id = static_cast<int>(arrows.size());
        index.emplace(std::pair{s, p}, id);
        start.push_back(s);
        end.push_back(e);
        arrows.push_back(std::move(p));
        return id;
    }
};

struct UnionFind {
    std::vector<int> parent;
    explicit UnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
    int find(int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    }
    void unite(int a, int b) { parent[find(a)] = find(b); }
};

bool touches(const Quiver& q, const std::vector<int>& path, int v) {
    for (int a : path)
        if (q.arrows[a].tail == v || q.arrows[a].head == v) return true;
    return false;
}

}  // namespace

std::optional<OracleDimension> rewriting_dimension(const QuiverWithPotential& qp, const PerfectMatching& d,
                                                   std::optional<int> dropped) {
    const Quiver& q = qp.quiver;
    const int n = q.vertex_count;
    const int drop = dropped.value_or(-1);

    std::vector<std::vector<int>> out(n);
    for (int a = 0; a < q.arrow_count(); ++a)
        if (!d.contains(a) && q.arrows[a].tail != drop && q.arrows[a].head != drop)
            out[q.arrows[a].tail].push_back(a);

    PathSet paths;
    bool cyclic = false;
    for (int v = 0; v < n && !cyclic; ++v) {
        if (v == drop) continue;
        std::vector<int> cur;
        std::vector<char> on_path(n, 0);
        on_path[v] = 1;
        auto dfs = [&](auto&& self, int at) -> void {
            paths.add(v, at, cur);
            if (paths.arrows.size() > max_paths) { cyclic = true; return; }
            for (int a : out[at]) {
                int h = q.arrows[a].head;
                if (on_path[h]) { cyclic = true; return; }
                on_path[h] = 1;
                cur.push_back(a);
                self(self, h);
                cur.pop_back();
                on_path[h] = 0;
                if (cyclic) return;
            }
        };
        dfs(dfs, v);
    }
    if (cyclic) return std::nullopt;

    // Each a in D occurs in exactly two terms; what is left after a is a path of Q_D.
    struct Rule {
        std::vector<int> lhs;
        std::vector<int> rhs;
        bool rhs_zero = false;
    };
    std::vector<Rule> rules;
    for (int a : d.edges) {
        std::vector<std::vector<int>> sides;
        for (const PotentialTerm& t : qp.potential) {
            const int len = static_cast<int>(t.cycle.size());
            for (int j = 0; j < len; ++j) {
                if (t.cycle[j] != a) continue;
                std::vector<int> rest;
                for (int s = 1; s < len; ++s) rest.push_back(t.cycle[(j + s) % len]);
                sides.push_back(std::move(rest));
            }
        }
        if (sides.size() != 2) throw std::logic_error("oracle: arrow in D must occur in two terms");
        for (int s = 0; s < 2; ++s) {
            const auto& lhs = sides[s];
            const auto& rhs = sides[1 - s];
            if (touches(q, lhs, drop)) continue;
            rules.push_back({lhs, rhs, touches(q, rhs, drop)});
        }
    }

    const std::size_t count = paths.arrows.size();
    UnionFind uf(count);
    std::vector<char> zero(count, 0);
    for (std::size_t p = 0; p < count; ++p) {
        const auto& path = paths.arrows[p];
        for (const Rule& r : rules) {
            const std::size_t len = r.lhs.size();
            if (len == 0 || len > path.size()) continue;
            for (std::size_t j = 0; j + len <= path.size(); ++j) {
                if (!std::equal(r.lhs.begin(), r.lhs.end(), path.begin() + static_cast<std::ptrdiff_t>(j))) continue;
                if (r.rhs_zero) { zero[p] = 1; continue; }
                std::vector<int> next(path.begin(), path.begin() + static_cast<std::ptrdiff_t>(j));
                next.insert(next.end(), r.rhs.begin(), r.rhs.end());
                next.insert(next.end(), path.begin() + static_cast<std::ptrdiff_t>(j + len), path.end());
                auto it = paths.index.find({paths.start[p], next});
                if (it == paths.index.end()) throw std::logic_error("oracle: rewrite left the path set");
                uf.unite(static_cast<int>(p), it->second);
            }
        }
    }

    std::vector<char> zero_root(count, 0);
    for (std::size_t p = 0; p < count; ++p)
        if (zero[p]) zero_root[uf.find(static_cast<int>(p))] = 1;

    OracleDimension res;
    res.blocks.assign(n, std::vector<std::int64_t>(n, 0));
    for (std::size_t p = 0; p < count; ++p) {
        int root = uf.find(static_cast<int>(p));
        if (root != static_cast<int>(p) || zero_root[root]) continue;
        ++res.blocks[paths.start[p]][paths.end[p]];
        ++res.total;
    }
    return res;
}

}  // namespace dimer::oracle
