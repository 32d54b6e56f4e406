#include "dimer/canonical.hpp"

#include <algorithm>
#include <map>

namespace dimer {

namespace {

using Colour = std::vector<std::int64_t>;

// Iterated colour refinement: a vertex's colour is its diagonal entry plus the
// sorted multisets of (entry, colour) pairs along its row and column.
std::vector<int> refine(const Matrix& m) {
    const int n = static_cast<int>(m.size());
    std::vector<int> colour(n, 0);
    for (int round = 0; round <= n; ++round) {
        std::vector<Colour> sig(n);
        for (int v = 0; v < n; ++v) {
            Colour& s = sig[v];
            s.push_back(colour[v]);
            s.push_back(m[v][v]);
            std::vector<std::pair<std::int64_t, int>> out, in;
            for (int u = 0; u < n; ++u) {
                if (u == v) continue;
                out.push_back({m[v][u], colour[u]});
                in.push_back({m[u][v], colour[u]});
            }
            std::sort(out.begin(), out.end());
            std::sort(in.begin(), in.end());
            for (auto [x, c] : out) { s.push_back(x); s.push_back(c); }
            s.push_back(-1);
            for (auto [x, c] : in) { s.push_back(x); s.push_back(c); }
        }
        std::map<Colour, int> ids;
        for (const auto& s : sig) ids.emplace(s, 0);
        int next = 0;
        for (auto& [s, id] : ids) id = next++;
        std::vector<int> fresh(n);
        for (int v = 0; v < n; ++v) fresh[v] = ids[sig[v]];
        if (fresh == colour) break;
        colour = std::move(fresh);
    }
    return colour;
}

struct Search {
    const Matrix& m;
    std::vector<int> colour;
    int n;
    std::vector<int> best, cur;
    std::vector<char> used;
    bool have = false;

    // Compares the principal prefix of the current order with the best one.
    int compare_prefix(int len) const {
        for (int i = 0; i < len; ++i)
            for (int j = 0; j < len; ++j) {
                if (std::max(i, j) != len - 1) continue;
                auto a = m[cur[i]][cur[j]], b = m[best[i]][best[j]];
                if (a != b) return a < b ? -1 : 1;
            }
        return 0;
    }

    // Full comparison in the same order as compare_prefix, one principal block at a time.
    bool better() const {
        for (int len = 1; len <= n; ++len) {
            int cmp = compare_prefix(len);
            if (cmp != 0) return cmp < 0;
        }
        return false;
    }

    void run(int pos, bool tied) {
        if (pos == n) {
            if (!have || better()) { best = cur; have = true; }
            return;
        }
        // Positions are filled in colour order, so the colour class is fixed.
        std::vector<int> sorted_colours;
        for (int v = 0; v < n; ++v)
            if (!used[v]) sorted_colours.push_back(colour[v]);
        int c = *std::min_element(sorted_colours.begin(), sorted_colours.end());
        for (int v = 0; v < n; ++v) {
            if (used[v] || colour[v] != c) continue;
            used[v] = 1;
            cur[pos] = v;
            bool still_tied = tied;
            bool prune = false;
            if (have && tied) {
                int cmp = compare_prefix(pos + 1);
                if (cmp > 0) prune = true;
                still_tied = cmp == 0;
            }
            if (!prune) run(pos + 1, have ? still_tied : true);
            used[v] = 0;
        }
    }
};

}  // namespace

std::vector<int> canonical_order(const Matrix& m) {
    Search s{m, refine(m), static_cast<int>(m.size()), {}, std::vector<int>(m.size()), std::vector<char>(m.size(), 0)};
    s.run(0, true);
    return s.best;
}

Matrix canonical_matrix(const Matrix& m) {
    auto order = canonical_order(m);
    const int n = static_cast<int>(m.size());
    Matrix out(n, std::vector<std::int64_t>(n));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) out[i][j] = m[order[i]][order[j]];
    return out;
}

}  // namespace dimer
