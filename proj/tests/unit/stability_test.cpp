#include <gtest/gtest.h>

#include <algorithm>
#include <map>
#include <set>

#include "dimer/errors.hpp"
#include "test_support.hpp"

namespace dimer {
namespace {

using testing::all_fixtures;
using testing::drawn_triangulation;
using testing::load;
using testing::theta_with_first;

bool stable_for(const testing::Loaded& l, const PerfectMatching& d, const Theta& theta) {
    auto rep = rep_from_cosupport(l.qp, d.edges);
    EXPECT_TRUE(rep.rep.has_value());
    return rep.rep && is_theta_stable(l.qp, *rep.rep, theta);
}

void expect_stable_map(const std::string& fixture, const Theta& theta, const std::map<std::string, Vec2>& expected) {
    auto l = load(fixture);
    auto st = theta_stable_pms(l.model, theta, reference_pm(l.file));
    EXPECT_TRUE(st.generic) << fixture;
    EXPECT_TRUE(st.problems.empty());
    ASSERT_EQ(st.by_point.size(), expected.size());
    for (const auto& [alias, p] : expected) {
        ASSERT_TRUE(st.by_point.count(p)) << fixture << " " << p;
        EXPECT_EQ(st.by_point.at(p), l.pm(alias)) << fixture << " " << alias;
    }
}

TEST(Stability, OctoStableMatchingsFollowTheDrawing) {
    expect_stable_map("octo8", theta_with_first(8, -7),
                      {{"D1", {2, 0}}, {"D2", {0, 1}}, {"D3", {-1, 1}}, {"D4", {-1, -1}},
                       {"D5", {0, -1}}, {"D6", {-1, 0}}, {"D7", {0, 0}}, {"D8", {1, 0}}});
}

TEST(Stability, HexStableMatchingsFollowTheDrawing) {
    expect_stable_map("hex7", theta_with_first(7, -6),
                      {{"D1", {-1, 2}}, {"D2", {-2, 0}}, {"D3", {1, -1}},
                       {"D4", {0, 0}}, {"D5", {-1, 1}}, {"D6", {-1, 0}}});
}

TEST(Stability, OctoTriangulationMatchesDrawing) {
    auto l = load("octo8");
    auto tri = triangulate(l.model, theta_with_first(8, -7), reference_pm(l.file));
    ASSERT_TRUE(tri.ok);
    const std::vector<std::pair<Vec2, Vec2>> lines = {
        {{0, 0}, {-1, 0}}, {{0, 0}, {-1, 1}}, {{0, 0}, {0, -1}}, {{0, 0}, {1, 0}}, {{-1, 0}, {0, -1}},
        {{0, -1}, {1, 0}}, {{-1, 1}, {1, 0}}, {{-1, 1}, {2, 0}}, {{1, 0}, {2, 0}},
    };
    auto expected = drawn_triangulation({{2, 0}, {0, 1}, {-1, 1}, {-1, -1}, {0, -1}}, lines);
    EXPECT_EQ(std::set<Segment>(tri.segments.begin(), tri.segments.end()), expected);
    EXPECT_EQ(static_cast<std::int64_t>(tri.triangles.size()), area2(tri.polygon));
}

TEST(Stability, HexTriangulationMatchesDrawing) {
    auto l = load("hex7");
    auto tri = triangulate(l.model, theta_with_first(7, -6), reference_pm(l.file));
    ASSERT_TRUE(tri.ok);
    const std::vector<std::pair<Vec2, Vec2>> lines = {
        {{-1, 2}, {-1, 0}}, {{-2, 0}, {0, 0}}, {{1, -1}, {-1, 1}},
        {{1, -1}, {-1, 0}}, {{-2, 0}, {-1, 1}}, {{-1, 2}, {0, 0}},
    };
    auto expected = drawn_triangulation({{1, -1}, {-1, 2}, {-2, 0}}, lines);
    EXPECT_EQ(std::set<Segment>(tri.segments.begin(), tri.segments.end()), expected);
    EXPECT_EQ(tri.triangles.size(), 7u);
}

TEST(Stability, TriangulationsAreUnimodular) {
    for (const auto& [name, first] : std::vector<std::pair<std::string, int>>{{"octo8", -7}, {"hex7", -6}, {"square4", -3}}) {
        auto l = load(name);
        auto tri = triangulate(l.model, theta_with_first(l.model.face_count(), first));
        if (!tri.ok) continue;
        for (const auto& t : tri.triangles) EXPECT_EQ(std::abs(orient(t[0], t[1], t[2])), 1) << name;
        EXPECT_EQ(static_cast<std::int64_t>(tri.triangles.size()), area2(tri.polygon));
        for (std::size_t i = 0; i < tri.segments.size(); ++i)
            for (std::size_t j = i + 1; j < tri.segments.size(); ++j)
                EXPECT_FALSE(segments_cross(tri.segments[i].first, tri.segments[i].second, tri.segments[j].first,
                                            tri.segments[j].second));
    }
}

TEST(Stability, BottomMatchingOfExchangeGraphDependsOnTheta) {
    auto l = load("octo8");
    auto fig = testing::load_exchange_drawing(l.file);
    const PerfectMatching& bottom = fig.matchings.at(fig.bottom);
    EXPECT_FALSE(stable_for(l, bottom, theta_with_first(8, -7)));
    EXPECT_TRUE(stable_for(l, bottom, Theta{1, 1, 1, -7, 1, 1, 1, 1}));
    EXPECT_TRUE(stable_for(l, l.pm("D7"), theta_with_first(8, -7)));
}

TEST(Stability, EveryMatchingHasAStabilizingParameter) {
    for (const auto& name : all_fixtures()) {
        auto l = load(name);
        for (const auto& d : enumerate_pms(l.model)) {
            auto theta = find_stabilizing_theta(l.qp, d);
            ASSERT_TRUE(theta.has_value()) << name;
            std::int64_t sum = 0;
            for (auto t : *theta) sum += t;
            EXPECT_EQ(sum, 0);
            EXPECT_TRUE(stable_for(l, d, *theta)) << name;
        }
    }
}

TEST(Stability, PerfectMatchingCosupportsGiveRepresentations) {
    for (const auto& name : all_fixtures()) {
        auto l = load(name);
        for (const auto& d : enumerate_pms(l.model)) {
            auto r = rep_from_cosupport(l.qp, d.edges);
            ASSERT_TRUE(r.rep.has_value());
            EXPECT_EQ(r.violating_arrow, -1);
            for (int a = 0; a < l.qp.quiver.arrow_count(); ++a) EXPECT_EQ(r.rep->in_support[a] != 0, !d.contains(a));
        }
        // Dropping one arrow from a cosupport: a representation exists exactly when, for every
        // arrow, its two return paths are both zero or both non-zero.
        auto d = enumerate_pms(l.model).front();
        std::vector<int> fewer(d.edges.begin() + 1, d.edges.end());
        const std::set<int> zero(fewer.begin(), fewer.end());
        auto vanishes = [&](const std::vector<int>& path) {
            return std::any_of(path.begin(), path.end(), [&](int a) { return zero.count(a) > 0; });
        };
        bool expected = true;
        for (const auto& rel : relations(l.qp)) expected = expected && vanishes(rel.plus) == vanishes(rel.minus);
        auto r = rep_from_cosupport(l.qp, fewer);
        EXPECT_EQ(r.rep.has_value(), expected) << name;
        EXPECT_EQ(r.violating_arrow >= 0, !expected) << name;
        if (name != "conifold") EXPECT_FALSE(expected) << name;
    }
}

TEST(Stability, ClosedSubsetsFormALattice) {
    for (const auto& name : all_fixtures()) {
        auto l = load(name);
        const int n = l.qp.quiver.vertex_count;
        const std::uint32_t full = (1u << n) - 1;
        for (const auto& d : enumerate_pms(l.model)) {
            auto r = rep_from_cosupport(l.qp, d.edges);
            auto subs = closed_subsets(l.qp.quiver, r.rep->in_support);
            std::set<std::uint32_t> closed(subs.begin(), subs.end());
            // Brute-force closure check over all subsets.
            for (std::uint32_t s = 1; s < full; ++s) {
                bool ok = true;
                for (int a = 0; a < l.qp.quiver.arrow_count() && ok; ++a) {
                    const Arrow& ar = l.qp.quiver.arrows[a];
                    if (r.rep->in_support[a] && (s >> ar.tail & 1u) && !(s >> ar.head & 1u)) ok = false;
                }
                EXPECT_EQ(ok, closed.count(s) == 1) << name;
            }
            for (auto a : closed)
                for (auto b : closed) {
                    if ((a | b) != full) EXPECT_TRUE(closed.count(a | b));
                    if ((a & b) != 0) EXPECT_TRUE(closed.count(a & b));
                }
        }
    }
}

TEST(Stability, StabilityMatchesBruteForceDefinition) {
    auto l = load("octo8");
    const Theta theta = theta_with_first(8, -7);
    const int n = 8;
    for (const auto& d : enumerate_pms(l.model)) {
        auto r = rep_from_cosupport(l.qp, d.edges);
        bool expected = true;
        for (std::uint32_t s = 1; s + 1 < (1u << n); ++s) {
            bool closed = true;
            for (int a = 0; a < l.qp.quiver.arrow_count(); ++a) {
                const Arrow& ar = l.qp.quiver.arrows[a];
                if (!d.contains(a) && (s >> ar.tail & 1u) && !(s >> ar.head & 1u)) closed = false;
            }
            if (!closed) continue;
            std::int64_t t = 0;
            for (int v = 0; v < n; ++v)
                if (s >> v & 1u) t += theta[v];
            if (t <= 0) expected = false;
        }
        EXPECT_EQ(is_theta_stable(l.qp, *r.rep, theta), expected);
    }
}

TEST(Stability, RejectsBadTheta) {
    auto l = load("square4");
    EXPECT_THROW(theta_stable_pms(l.model, Theta{1, 1, 1}), UsageError);
    EXPECT_THROW(theta_stable_pms(l.model, Theta{1, 1, 1, 1}), UsageError);
}

TEST(Stability, NonGenericThetaIsFlagged) {
    auto l = load("square4");
    auto st = theta_stable_pms(l.model, Theta{0, 0, 0, 0});
    EXPECT_FALSE(st.generic);
    auto tri = triangulate(l.model, Theta{0, 0, 0, 0});
    EXPECT_FALSE(tri.ok);
    EXPECT_FALSE(tri.problems.empty());
}

}  // namespace
}  // namespace dimer
