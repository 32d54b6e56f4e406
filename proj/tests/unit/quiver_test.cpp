#include <gtest/gtest.h>

#include <map>
#include <random>
#include <set>

#include "dimer/errors.hpp"
#include "dimer/matchings.hpp"
#include "test_support.hpp"

namespace dimer {
namespace {

using testing::all_fixtures;
using testing::arrow_multiset;
using testing::load;

TEST(Quiver, CountsMatchDimer) {
    for (const auto& name : all_fixtures()) {
        auto l = load(name);
        EXPECT_EQ(l.qp.quiver.vertex_count, l.model.face_count()) << name;
        EXPECT_EQ(l.qp.quiver.arrow_count(), static_cast<int>(l.model.graph().edges.size())) << name;
        EXPECT_EQ(l.qp.potential.size(), l.model.graph().nodes.size()) << name;
    }
    auto sq = load("square4");
    EXPECT_EQ(sq.qp.quiver.vertex_count, 4);
    EXPECT_EQ(sq.qp.quiver.arrow_count(), 8);
    for (int v = 0; v < 4; ++v) {
        EXPECT_EQ(sq.qp.quiver.out_arrows(v).size(), 2u);
        EXPECT_EQ(sq.qp.quiver.in_arrows(v).size(), 2u);
    }
}

TEST(Quiver, ConifoldArrows) {
    auto l = load("conifold");
    std::map<std::string, std::pair<int, int>> got;
    for (int a = 0; a < l.qp.quiver.arrow_count(); ++a)
        got[l.model.graph().edges[l.qp.quiver.arrows[a].edge].id] = {l.qp.quiver.arrows[a].tail, l.qp.quiver.arrows[a].head};
    EXPECT_EQ(got["a"], std::make_pair(0, 1));
    EXPECT_EQ(got["b"], std::make_pair(1, 0));
    EXPECT_EQ(got["c"], std::make_pair(0, 1));
    EXPECT_EQ(got["d"], std::make_pair(1, 0));
}

TEST(Quiver, OctoArrowsMatchDrawing) {
    auto l = load("octo8");
    std::multiset<std::pair<int, int>> drawn = {
        {0, 1}, {0, 4}, {3, 0}, {6, 0}, {1, 2}, {1, 7}, {6, 1}, {2, 3}, {2, 6}, {4, 3},
        {3, 5}, {3, 5}, {5, 7}, {5, 7}, {6, 5}, {7, 6}, {7, 6}, {4, 2}, {5, 4}, {7, 3},
    };
    EXPECT_EQ(arrow_multiset(l.qp.quiver), drawn);
}

TEST(Quiver, EveryArrowInOnePositiveAndOneNegativeTerm) {
    for (const auto& name : all_fixtures()) {
        auto l = load(name);
        const int n = l.qp.quiver.arrow_count();
        std::vector<int> plus(n, 0), minus(n, 0);
        for (const PotentialTerm& t : l.qp.potential) {
            EXPECT_TRUE(is_path(l.qp.quiver, t.cycle));
            EXPECT_EQ(l.qp.quiver.arrows[t.cycle.back()].head, l.qp.quiver.arrows[t.cycle.front()].tail);
            EXPECT_EQ(t.cycle, normalize_cycle(t.cycle));
            const Color c = l.model.graph().nodes[t.node].color;
            EXPECT_EQ(t.sign, c == Color::white ? 1 : -1);
            EXPECT_EQ(static_cast<int>(t.cycle.size()), l.model.graph().degree(t.node));
            for (int a : t.cycle) (t.sign > 0 ? plus : minus)[a]++;
        }
        for (int a = 0; a < n; ++a) {
            EXPECT_EQ(plus[a], 1) << name << " arrow " << a;
            EXPECT_EQ(minus[a], 1) << name << " arrow " << a;
        }
    }
}

TEST(Quiver, RelationsAreParallelPathsFromHeadToTail) {
    for (const auto& name : all_fixtures()) {
        auto l = load(name);
        auto rels = relations(l.qp);
        ASSERT_EQ(static_cast<int>(rels.size()), l.qp.quiver.arrow_count());
        for (const Relation& r : rels) {
            const Arrow& a = l.qp.quiver.arrows[r.arrow];
            for (const auto* p : {&r.plus, &r.minus}) {
                ASSERT_FALSE(p->empty());
                EXPECT_TRUE(is_path(l.qp.quiver, *p));
                EXPECT_EQ(l.qp.quiver.arrows[p->front()].tail, a.head);
                EXPECT_EQ(l.qp.quiver.arrows[p->back()].head, a.tail);
            }
            std::vector<int> cyc = r.plus;
            cyc.insert(cyc.begin(), r.arrow);
            bool found = false;
            for (const PotentialTerm& t : l.qp.potential)
                if (t.sign > 0 && t.cycle == normalize_cycle(cyc)) found = true;
            EXPECT_TRUE(found) << name << " arrow " << r.arrow;
        }
    }
}

TEST(Quiver, NormalizeCycle) {
    EXPECT_EQ(normalize_cycle({3, 1, 2}), (std::vector<int>{1, 2, 3}));
    EXPECT_EQ(normalize_cycle({2, 0, 2, 1}), (std::vector<int>{0, 2, 1, 2}));
    EXPECT_EQ(normalize_cycle({5}), (std::vector<int>{5}));
}

TEST(Quiver, GradingsOfPerfectMatchingsHaveDegreeOneTerms) {
    for (const auto& name : all_fixtures()) {
        auto l = load(name);
        for (const PerfectMatching& d : enumerate_pms(l.model)) {
            EXPECT_TRUE(is_perfect_matching(l.qp, d));
            Grading g = grading_of(l.qp, d);
            for (const PotentialTerm& t : l.qp.potential) {
                int deg = 0;
                for (int a : t.cycle) deg += g[a];
                EXPECT_EQ(deg, 1);
            }
            Quiver qd = subquiver_Q_D(l.qp, d);
            EXPECT_EQ(qd.vertex_count, l.qp.quiver.vertex_count);
            EXPECT_EQ(qd.arrow_count() + static_cast<int>(d.edges.size()), l.qp.quiver.arrow_count());
        }
        EXPECT_THROW(grading_of(l.qp, make_matching({})), UsageError);
    }
}

TEST(Quiver, QuiverAndDimerMatchingNotionsAgree) {
    std::mt19937 rng(11);
    for (const auto& name : all_fixtures()) {
        auto l = load(name);
        const int n = l.qp.quiver.arrow_count();
        for (int trial = 0; trial < 300; ++trial) {
            std::vector<int> edges;
            for (int e = 0; e < n; ++e)
                if (rng() % 3 == 0) edges.push_back(e);
            auto d = make_matching(edges);
            EXPECT_EQ(is_perfect_matching(l.qp, d), is_perfect_matching(l.model, d));
        }
    }
}

}  // namespace
}  // namespace dimer
