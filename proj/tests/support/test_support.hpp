#pragma once

#include <algorithm>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "json.hpp"

#include "dimer/errors.hpp"
#include "dimer/fixtures.hpp"
#include "dimer/io.hpp"
#include "dimer/lattice.hpp"
#include "dimer/matchings.hpp"
#include "dimer/quiver.hpp"
#include "dimer/stability.hpp"
#include "dimer/surface_graph.hpp"

namespace dimer::testing {

inline const std::vector<std::string>& all_fixtures() {
    static const std::vector<std::string> names = {"square4", "octo8", "hex7", "conifold"};
    return names;
}

inline std::string data_path(const std::string& file) { return std::string(DIMER_TEST_DATA_DIR) + "/" + file; }

inline std::string read_text(const std::string& path) {
    std::ifstream in(path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

struct Loaded {
    DimerFile file;
    Model model;
    QuiverWithPotential qp;

    PerfectMatching pm(const std::string& alias) const { return resolve_pm(file, alias); }
};

inline Loaded load(const std::string& name) {
    DimerFile f = load_fixture(name);
    Model m = validated(f.graph);
    QuiverWithPotential qp = dualize(m);
    return {std::move(f), std::move(m), std::move(qp)};
}

inline Loaded load_path(const std::string& path) {
    DimerFile f = load_dimer(path);
    Model m = validated(f.graph);
    QuiverWithPotential qp = dualize(m);
    return {std::move(f), std::move(m), std::move(qp)};
}

inline Theta theta_with_first(int n, std::int64_t first) {
    Theta t(n, 1);
    t[0] = first;
    return t;
}

// A drawn line between lattice points, cut at every lattice point it passes.
inline std::vector<Segment> primitive_pieces(Vec2 a, Vec2 b) {
    const std::int64_t g = lattice_length(b - a);
    const Vec2 step{(b.x - a.x) / g, (b.y - a.y) / g};
    std::vector<Segment> out;
    for (std::int64_t i = 0; i < g; ++i) {
        Vec2 p = a + i * step;
        Vec2 r = p + step;
        out.push_back(p < r ? Segment{p, r} : Segment{r, p});
    }
    return out;
}

// Interior lines plus the hull boundary, all cut into primitive pieces.
inline std::set<Segment> drawn_triangulation(const std::vector<Vec2>& hull,
                                             const std::vector<std::pair<Vec2, Vec2>>& lines) {
    std::set<Segment> out;
    for (std::size_t i = 0; i < hull.size(); ++i)
        for (const Segment& s : primitive_pieces(hull[i], hull[(i + 1) % hull.size()])) out.insert(s);
    for (const auto& [a, b] : lines)
        for (const Segment& s : primitive_pieces(a, b)) out.insert(s);
    return out;
}

inline std::multiset<std::pair<int, int>> arrow_multiset(const Quiver& q) {
    std::multiset<std::pair<int, int>> out;
    for (const Arrow& a : q.arrows) out.emplace(a.tail, a.head);
    return out;
}

// The checked-in encoding of the octo8 exchange graph drawing.
struct ExchangeDrawing {
    std::string model;
    std::string start;
    std::string bottom;
    std::map<std::string, PerfectMatching> matchings;
    std::set<std::tuple<std::string, std::string, int>> edges;  // names sorted within each pair
};

inline ExchangeDrawing load_exchange_drawing(const DimerFile& file) {
    auto j = nlohmann::json::parse(read_text(data_path("exchange_octo8.json")));
    ExchangeDrawing out;
    out.model = j.at("model").get<std::string>();
    out.start = j.at("start").get<std::string>();
    out.bottom = j.at("bottom").get<std::string>();
    for (const auto& [name, ids] : j.at("matchings").items()) {
        std::vector<int> edges;
        for (const auto& id : ids) edges.push_back(file.graph.edge_index(id.get<std::string>()));
        out.matchings[name] = make_matching(edges);
    }
    for (const auto& e : j.at("edges")) {
        auto a = e.at("a").get<std::string>();
        auto b = e.at("b").get<std::string>();
        if (b < a) std::swap(a, b);
        out.edges.emplace(a, b, e.at("vertex").get<int>());
    }
    return out;
}

}  // namespace dimer::testing
