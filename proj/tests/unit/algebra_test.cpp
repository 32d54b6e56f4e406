#include <gtest/gtest.h>

#include <numeric>
#include <random>

#include "dimer/algebra.hpp"
#include "dimer/errors.hpp"
#include "rewriting_oracle.hpp"
#include "test_support.hpp"

namespace dimer {
namespace {

using testing::all_fixtures;
using testing::load;

// Independent acyclicity test: repeatedly strip vertices without incoming degree-0 arrows.
bool kahn_acyclic(const Quiver& q) {
    std::vector<int> indeg(q.vertex_count, 0);
    for (const Arrow& a : q.arrows) ++indeg[a.head];
    std::vector<int> ready;
    for (int v = 0; v < q.vertex_count; ++v)
        if (indeg[v] == 0) ready.push_back(v);
    int removed = 0;
    while (!ready.empty()) {
        int v = ready.back();
        ready.pop_back();
        ++removed;
        for (int a : q.out_arrows(v))
            if (--indeg[q.arrows[a].head] == 0) ready.push_back(q.arrows[a].head);
    }
    return removed == q.vertex_count;
}

TEST(Algebra, InternalAcyclicFiniteAgree) {
    for (const auto& name : all_fixtures()) {
        auto l = load(name);
        auto poly = pm_polygon(l.model);
        for (const auto& d : poly.pms) {
            const bool internal = classify(d, poly) == PmClass::internal;
            const bool acyclic = is_acyclic(l.qp, d);
            const auto dim = truncated_dimension(l.qp, d);
            EXPECT_EQ(acyclic, kahn_acyclic(subquiver_Q_D(l.qp, d))) << name;
            EXPECT_EQ(internal, acyclic) << name;
            EXPECT_EQ(acyclic, dim.finite()) << name;
            EXPECT_NE(dim.kind, Dimension::Kind::undecided);
        }
    }
}

TEST(Algebra, ConifoldIsInfiniteUntilAVertexIsDropped) {
    auto l = load("conifold");
    auto d = l.pm("D");
    EXPECT_FALSE(is_acyclic(l.qp, d));
    EXPECT_EQ(truncated_dimension(l.qp, d).kind, Dimension::Kind::infinite);
    auto dropped = dimension_without_vertex(l.qp, d, 0);
    ASSERT_TRUE(dropped.finite());
    EXPECT_EQ(dropped.value, 1);
    for (const auto& e : enumerate_pms(l.model)) EXPECT_FALSE(truncated_dimension(l.qp, e).finite());
}

TEST(Algebra, OctoSourcesAndSinks) {
    auto l = load("octo8");
    auto d7 = strict_sources_sinks(l.qp, l.pm("D7"));
    EXPECT_EQ(d7.sources, (std::vector<int>{0}));
    EXPECT_EQ(d7.sinks, (std::vector<int>{5}));
    auto d8 = strict_sources_sinks(l.qp, l.pm("D8"));
    EXPECT_NE(std::find(d8.sinks.begin(), d8.sinks.end(), 6), d8.sinks.end());
}

TEST(Algebra, StrictSourceMatchesDefinition) {
    for (const auto& name : all_fixtures()) {
        auto l = load(name);
        for (const auto& d : enumerate_pms(l.model))
            for (int k = 0; k < l.qp.quiver.vertex_count; ++k) {
                bool source = true, sink = true;
                for (int a : l.qp.quiver.in_arrows(k)) {
                    source &= d.contains(a);
                    sink &= !d.contains(a);
                }
                for (int a : l.qp.quiver.out_arrows(k)) {
                    source &= !d.contains(a);
                    sink &= d.contains(a);
                }
                EXPECT_EQ(is_strict_source(l.qp, d, k), source);
                EXPECT_EQ(is_strict_sink(l.qp, d, k), sink);
            }
    }
}

TEST(Algebra, InternalMatchingsHaveSourcesAndSinks) {
    for (const auto& name : all_fixtures()) {
        auto l = load(name);
        for (const auto& d : enumerate_pms(l.model)) {
            if (!is_acyclic(l.qp, d)) continue;
            auto s = strict_sources_sinks(l.qp, d);
            EXPECT_FALSE(s.sources.empty()) << name;
            EXPECT_FALSE(s.sinks.empty()) << name;
        }
    }
}

TEST(Algebra, HexFingerprintsCoincide) {
    auto l = load("hex7");
    auto f4 = algebra_fingerprint(l.qp, l.pm("D4"));
    EXPECT_EQ(f4, algebra_fingerprint(l.qp, l.pm("D5")));
    EXPECT_EQ(f4, algebra_fingerprint(l.qp, l.pm("D6")));
    EXPECT_EQ(f4.total, truncated_dimension(l.qp, l.pm("D4")).value);
}

TEST(Algebra, FingerprintIsInvariantUnderVertexRelabelling) {
    std::mt19937 rng(3);
    for (const std::string name : {"octo8", "hex7", "square4"}) {
        auto l = load(name);
        const int n = l.qp.quiver.vertex_count;
        for (const auto& d : enumerate_pms(l.model)) {
            if (!is_acyclic(l.qp, d)) continue;
            std::vector<int> perm(n);
            std::iota(perm.begin(), perm.end(), 0);
            std::shuffle(perm.begin(), perm.end(), rng);
            QuiverWithPotential relabelled = l.qp;
            for (Arrow& a : relabelled.quiver.arrows) {
                a.tail = perm[a.tail];
                a.head = perm[a.head];
            }
            auto f = algebra_fingerprint(l.qp, d);
            auto g = algebra_fingerprint(relabelled, d);
            EXPECT_EQ(f, g) << name;
            auto blocks = truncated_dimension(l.qp, d).blocks;
            auto moved = truncated_dimension(relabelled, d).blocks;
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j) EXPECT_EQ(blocks[i][j], moved[perm[i]][perm[j]]);
        }
    }
}

TEST(Algebra, CanonicalMatrixIsPermutationInvariant) {
    std::mt19937 rng(9);
    for (int trial = 0; trial < 50; ++trial) {
        const int n = 2 + static_cast<int>(rng() % 5);
        Matrix m(n, std::vector<std::int64_t>(n));
        for (auto& row : m)
            for (auto& x : row) x = static_cast<std::int64_t>(rng() % 3);
        std::vector<int> perm(n);
        std::iota(perm.begin(), perm.end(), 0);
        std::shuffle(perm.begin(), perm.end(), rng);
        Matrix p(n, std::vector<std::int64_t>(n));
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) p[perm[i]][perm[j]] = m[i][j];
        EXPECT_EQ(canonical_matrix(m), canonical_matrix(p));
        auto order = canonical_order(m);
        Matrix c = canonical_matrix(m);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) EXPECT_EQ(c[i][j], m[order[i]][order[j]]);
    }
}

TEST(Algebra, DimensionsAgreeWithRewritingOracle) {
    int finite_cases = 0;
    for (const auto& name : all_fixtures()) {
        auto l = load(name);
        for (const auto& d : enumerate_pms(l.model)) {
            auto dim = truncated_dimension(l.qp, d);
            auto oracle = oracle::rewriting_dimension(l.qp, d);
            EXPECT_EQ(dim.finite(), oracle.has_value()) << name;
            if (dim.finite() && oracle) {
                ++finite_cases;
                EXPECT_EQ(dim.value, oracle->total) << name;
                EXPECT_EQ(dim.blocks, oracle->blocks) << name;
            }
            for (int v = 0; v < l.qp.quiver.vertex_count; ++v) {
                auto dropped = dimension_without_vertex(l.qp, d, v);
                auto o = oracle::rewriting_dimension(l.qp, d, v);
                if (dropped.kind == Dimension::Kind::undecided) {
                    EXPECT_FALSE(o.has_value());
                    continue;
                }
                ASSERT_TRUE(dropped.finite());
                ASSERT_TRUE(o.has_value());
                ++finite_cases;
                EXPECT_EQ(dropped.value, o->total) << name << " without " << v;
                EXPECT_EQ(dropped.blocks, o->blocks) << name << " without " << v;
            }
        }
    }
    EXPECT_GT(finite_cases, 100);
}

TEST(Algebra, SquareCornersAreCyclicAndInteriorsHaveUnitDiagonal) {
    auto l = load("square4");
    for (const std::string corner : {"D1", "D2", "D3", "D4"}) {
        auto d = l.pm(corner);
        EXPECT_FALSE(is_acyclic(l.qp, d));
    }
    for (const std::string inner : {"D5", "D6", "D7", "D8"}) {
        auto dim = truncated_dimension(l.qp, l.pm(inner));
        ASSERT_TRUE(dim.finite());
        for (int v = 0; v < 4; ++v) EXPECT_EQ(dim.blocks[v][v], 1);
    }
}

TEST(Algebra, PathCapIsEnforced) {
    auto l = load("octo8");
    EXPECT_THROW(truncated_dimension(l.qp, l.pm("D8"), 5), InvariantError);
    EXPECT_THROW(dimension_without_vertex(l.qp, l.pm("D8"), 99), UsageError);
    EXPECT_THROW(algebra_fingerprint(l.qp, l.pm("D1")), UsageError);
}

}  // namespace
}  // namespace dimer
