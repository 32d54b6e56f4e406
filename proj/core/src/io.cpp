#include "dimer/io.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include "json.hpp"
#include <sstream>

#include "dimer/algebra.hpp"
#include "dimer/errors.hpp"
#include "dimer/lattice.hpp"
#include "dimer/zigzag.hpp"

namespace dimer {

using nlohmann::json;
using ordered_json = nlohmann::ordered_json;

namespace {

Color parse_color(const std::string& s) {
    if (s == "white") return Color::white;
    if (s == "black") return Color::black;
    throw InvariantError("unknown colour '" + s + "'");
}

int node_ref(const TorusGraph& g, const std::string& id) {
    auto i = g.find_node(id);
    if (!i) throw InvariantError("unknown node '" + id + "'");
    return *i;
}

int edge_ref(const TorusGraph& g, const std::string& id) {
    auto i = g.find_edge(id);
    if (!i) throw InvariantError("unknown edge '" + id + "'");
    return *i;
}

PerfectMatching edges_by_id(const TorusGraph& g, const std::vector<std::string>& ids) {
    std::vector<int> out;
    for (const auto& id : ids) out.push_back(edge_ref(g, id));
    return make_matching(std::move(out));
}

std::vector<std::string> edge_ids(const TorusGraph& g, const PerfectMatching& d) {
    std::vector<std::string> out;
    for (int e : d.edges) out.push_back(g.edges[e].id);
    return out;
}

ordered_json vec_json(const Vec2& v) { return ordered_json::array({v.x, v.y}); }

}  // namespace

DimerFile parse_dimer(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw InvariantError(std::string("dimer file is not valid JSON: ") + e.what());
    }
    DimerFile f;
    try {
        if (j.value("format_version", 0) != dimer_format_version)
            throw InvariantError("unsupported format_version, expected " + std::to_string(dimer_format_version));
        TorusGraph& g = f.graph;
        g.name = j.value("name", std::string{});
        for (const auto& n : j.at("nodes")) g.nodes.push_back({n.at("id").get<std::string>(), parse_color(n.at("color"))});
        for (const auto& e : j.at("edges")) {
            Edge ed;
            ed.id = e.at("id").get<std::string>();
            ed.white = node_ref(g, e.at("white"));
            ed.black = node_ref(g, e.at("black"));
            const auto& s = e.at("shift");
            if (!s.is_array() || s.size() != 2) throw InvariantError("edge " + ed.id + ": shift must be two integers");
            ed.shift = {s[0].get<std::int64_t>(), s[1].get<std::int64_t>()};
            g.edges.push_back(ed);
        }
        g.rotations.resize(g.nodes.size());
        for (const auto& [node, list] : j.at("rotations").items()) {
            auto& rot = g.rotations[node_ref(g, node)];
            for (const auto& e : list) rot.push_back(edge_ref(g, e));
        }
        if (j.contains("face_labels"))
            for (const auto& a : j.at("face_labels")) {
                const std::string dir = a.at("dir");
                if (dir != "wb" && dir != "bw") throw InvariantError("face label dir must be 'wb' or 'bw'");
                g.face_anchors.push_back({a.at("label").get<int>(), {edge_ref(g, a.at("edge")), dir == "wb"}});
            }
        if (j.contains("pm_aliases"))
            for (const auto& [name, list] : j.at("pm_aliases").items())
                f.aliases.push_back({name, edges_by_id(g, list.get<std::vector<std::string>>())});
        if (j.contains("reference_pm")) f.reference = j.at("reference_pm").get<std::string>();
    } catch (const json::exception& e) {
        throw InvariantError(std::string("malformed dimer file: ") + e.what());
    }
    return f;
}

DimerFile load_dimer(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw UsageError("cannot open '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_dimer(ss.str());
}

std::string dump_dimer(const DimerFile& f) {
    const TorusGraph& g = f.graph;
    ordered_json j;
    j["format_version"] = dimer_format_version;
    j["name"] = g.name;
    j["nodes"] = ordered_json::array();
    for (const auto& n : g.nodes) j["nodes"].push_back({{"id", n.id}, {"color", color_name(n.color)}});
    j["edges"] = ordered_json::array();
    for (const auto& e : g.edges)
        j["edges"].push_back({{"id", e.id},
                              {"white", g.nodes[e.white].id},
                              {"black", g.nodes[e.black].id},
                              {"shift", vec_json(e.shift)}});
    j["rotations"] = ordered_json::object();
    for (std::size_t v = 0; v < g.nodes.size(); ++v) {
        auto list = ordered_json::array();
        for (int e : g.rotations[v]) list.push_back(g.edges[e].id);
        j["rotations"][g.nodes[v].id] = list;
    }
    if (!g.face_anchors.empty()) {
        auto anchors = g.face_anchors;
        std::sort(anchors.begin(), anchors.end(), [](auto& a, auto& b) { return a.label < b.label; });
        j["face_labels"] = ordered_json::array();
        for (const auto& a : anchors)
            j["face_labels"].push_back(
                {{"label", a.label}, {"edge", g.edges[a.dart.edge].id}, {"dir", a.dart.white_to_black ? "wb" : "bw"}});
    }
    if (!f.aliases.empty()) {
        j["pm_aliases"] = ordered_json::object();
        for (const auto& [name, d] : f.aliases) j["pm_aliases"][name] = edge_ids(g, d);
    }
    if (f.reference) j["reference_pm"] = *f.reference;
    return j.dump(2) + "\n";
}

void save_dimer(const DimerFile& f, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw UsageError("cannot write '" + path + "'");
    out << dump_dimer(f);
}

PerfectMatching resolve_pm(const DimerFile& f, const std::string& spec) {
    for (const auto& [name, d] : f.aliases)
        if (name == spec) return d;
    std::vector<int> edges;
    std::stringstream ss(spec);
    std::string id;
    while (std::getline(ss, id, ',')) {
        auto e = f.graph.find_edge(id);
        if (!e) throw UsageError("'" + spec + "' is neither a matching alias nor a list of edge ids");
        edges.push_back(*e);
    }
    return make_matching(std::move(edges));
}

std::string pm_label(const DimerFile& f, const std::vector<PerfectMatching>& all, const PerfectMatching& d) {
    for (const auto& [name, x] : f.aliases)
        if (x == d) return name;
    auto it = std::find(all.begin(), all.end(), d);
    if (it == all.end()) return "?";
    return "PM" + std::to_string(it - all.begin() + 1);
}

std::optional<PerfectMatching> reference_pm(const DimerFile& f) {
    if (!f.reference) return std::nullopt;
    return resolve_pm(f, *f.reference);
}

Theta parse_theta(const std::string& text) {
    Theta out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            std::size_t used = 0;
            out.push_back(std::stoll(item, &used));
            if (used != item.size()) throw std::invalid_argument(item);
        } catch (const std::exception&) {
            throw UsageError("theta entry '" + item + "' is not an integer");
        }
    }
    return out;
}

std::string quiver_dot(const QuiverWithPotential& qp, const std::optional<Grading>& grading) {
    std::ostringstream os;
    os << "digraph quiver {\n";
    for (int v = 0; v < qp.quiver.vertex_count; ++v) os << "  " << v << ";\n";
    for (int a = 0; a < qp.quiver.arrow_count(); ++a) {
        const Arrow& ar = qp.quiver.arrows[a];
        os << "  " << ar.tail << " -> " << ar.head << " [label=\"" << ar.name;
        if (grading) os << ":" << (*grading)[a];
        os << "\"";
        if (grading && (*grading)[a] == 1) os << ", color=red";
        os << "];\n";
    }
    os << "}\n";
    return os.str();
}

std::string exchange_graph_dot(const ExchangeGraph& g, const std::vector<std::string>& labels) {
    std::ostringstream os;
    os << "graph exchange {\n";
    for (std::size_t i = 0; i < g.pms.size(); ++i) os << "  \"" << labels[i] << "\";\n";
    for (const auto& e : g.edges)
        os << "  \"" << labels[e.from] << "\" -- \"" << labels[e.to] << "\" [label=\"" << e.vertex << "\"];\n";
    os << "}\n";
    return os.str();
}

std::string polygon_svg(const std::vector<Vec2>& hull, const std::vector<SvgPoint>& points,
                        const std::vector<Segment>& segments) {
    std::vector<Vec2> all = hull;
    for (const auto& p : points) all.push_back(p.at);
    std::int64_t xmin = 0, xmax = 0, ymin = 0, ymax = 0;
    if (!all.empty()) {
        xmin = xmax = all[0].x;
        ymin = ymax = all[0].y;
    }
    for (const auto& p : all) {
        xmin = std::min(xmin, p.x);
        xmax = std::max(xmax, p.x);
        ymin = std::min(ymin, p.y);
        ymax = std::max(ymax, p.y);
    }
    const int unit = 80, pad = 40;
    auto sx = [&](std::int64_t x) { return pad + (x - xmin) * unit; };
    auto sy = [&](std::int64_t y) { return pad + (ymax - y) * unit; };
    std::ostringstream os;
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << 2 * pad + (xmax - xmin) * unit << "\" height=\""
       << 2 * pad + (ymax - ymin) * unit << "\">\n";
    if (!hull.empty()) {
        os << "  <polygon points=\"";
        for (const auto& v : hull) os << sx(v.x) << "," << sy(v.y) << " ";
        os << "\" fill=\"#eef\" stroke=\"black\" stroke-width=\"2\"/>\n";
    }
    for (const auto& [a, b] : segments)
        os << "  <line x1=\"" << sx(a.x) << "\" y1=\"" << sy(a.y) << "\" x2=\"" << sx(b.x) << "\" y2=\"" << sy(b.y)
           << "\" stroke=\"black\"/>\n";
    for (const auto& p : lattice_points(hull))
        os << "  <circle cx=\"" << sx(p.x) << "\" cy=\"" << sy(p.y) << "\" r=\"4\"/>\n";
    for (const auto& p : points)
        os << "  <text x=\"" << sx(p.at.x) + 6 << "\" y=\"" << sy(p.at.y) - 6 << "\" font-size=\"12\">" << p.label
           << "</text>\n";
    os << "</svg>\n";
    return os.str();
}

std::string zigzag_json(const Model& m) {
    ordered_json arr = ordered_json::array();
    for (const auto& z : zigzag_paths(m)) {
        ordered_json darts = ordered_json::array();
        for (Dart d : z.darts)
            darts.push_back(m.graph().edges[d.edge].id + (d.white_to_black ? ":wb" : ":bw"));
        arr.push_back({{"darts", darts}, {"slope", vec_json(z.slope)}});
    }
    return arr.dump(2) + "\n";
}

Report analysis_report(const DimerFile& f, const ReportOptions& opt) {
    Model m = validated(f.graph);
    auto qp = dualize(m);
    std::optional<PerfectMatching> ref;
    if (opt.reference) ref = resolve_pm(f, *opt.reference);
    else ref = reference_pm(f);
    auto poly = pm_polygon(m, ref);
    auto verdict = is_consistent(m);
    auto rc = rcharge_feasible(m);
    auto zs = zigzag_paths(m);
    auto ss = slope_side_check(m);

    ordered_json j;
    std::ostringstream tx;
    j["model"] = f.graph.name;
    tx << "model " << f.graph.name << ": " << f.graph.nodes.size() << " nodes, " << f.graph.edges.size()
       << " edges, " << m.face_count() << " faces\n";

    j["consistency"] = {{"zigzag", verdict.consistent},
                        {"rcharge", rc.feasible},
                        {"reasons", verdict.reasons},
                        {"node_repeats", verdict.node_repeats}};
    tx << "consistent (zigzag): " << (verdict.consistent ? "yes" : "no")
       << ", R-charge feasible: " << (rc.feasible ? "yes" : "no") << "\n";
    for (const auto& r : verdict.reasons) tx << "  " << r << "\n";

    const bool two_d = poly.vertices.size() >= 3;
    ordered_json pj;
    pj["reference"] = pm_label(f, poly.pms, poly.reference);
    pj["vertices"] = ordered_json::array();
    for (const auto& v : poly.vertices) pj["vertices"].push_back(vec_json(v));
    if (two_d) {
        pj["interior_points"] = ordered_json::array();
        for (const auto& p : interior_points(poly.vertices)) pj["interior_points"].push_back(vec_json(p));
        pj["has_interior_point"] = has_interior_point(poly.vertices);
        pj["isolated"] = is_isolated(poly.vertices);
    }
    j["polygon"] = pj;
    tx << "polygon (reference " << pm_label(f, poly.pms, poly.reference) << "):";
    for (const auto& v : poly.vertices) tx << " " << v;
    tx << "\n";

    j["perfect_matchings"] = ordered_json::array();
    tx << poly.pms.size() << " perfect matchings\n";
    for (std::size_t i = 0; i < poly.pms.size(); ++i) {
        const auto& d = poly.pms[i];
        const std::string label = pm_label(f, poly.pms, d);
        const auto cls = two_d ? classify(d, poly) : PmClass::boundary;
        const bool acyc = is_acyclic(qp, d);
        auto dim = truncated_dimension(qp, d);
        ordered_json row;
        row["id"] = label;
        row["edges"] = edge_ids(f.graph, d);
        row["point"] = vec_json(poly.points[i]);
        row["class"] = pm_class_name(cls);
        row["acyclic"] = acyc;
        if (dim.finite()) row["dimension"] = dim.value;
        else row["dimension"] = "infinite";
        j["perfect_matchings"].push_back(row);
        tx << "  " << label << " " << poly.points[i] << " " << pm_class_name(cls) << (acyc ? " acyclic" : " cyclic")
           << " dim=" << (dim.finite() ? std::to_string(dim.value) : std::string("infinite")) << "\n";
    }

    j["zigzags"] = ordered_json::array();
    tx << zs.size() << " zigzag paths, slopes:";
    for (const auto& z : zs) {
        ordered_json edges = ordered_json::array();
        for (Dart d : z.darts) edges.push_back(f.graph.edges[d.edge].id);
        j["zigzags"].push_back({{"edges", edges}, {"slope", vec_json(z.slope)}});
        tx << " " << z.slope;
    }
    tx << "\n";
    j["slopes_match_sides"] = ss.equal;
    tx << "slopes match primitive sides: " << (ss.equal ? "yes" : "no") << "\n";

    if (opt.theta) {
        auto stable = theta_stable_pms(m, *opt.theta, poly.reference);
        ordered_json sj;
        sj["theta"] = *opt.theta;
        sj["generic"] = stable.generic;
        sj["problems"] = stable.problems;
        sj["stable_pms"] = ordered_json::array();
        tx << "theta-stable perfect matchings" << (stable.generic ? "" : " (theta not generic)") << ":\n";
        for (const auto& [at, d] : stable.by_point) {
            sj["stable_pms"].push_back({{"point", vec_json(at)}, {"pm", pm_label(f, poly.pms, d)}});
            tx << "  " << at << " " << pm_label(f, poly.pms, d) << "\n";
        }
        if (stable.generic) {
            auto tri = triangulate(m, *opt.theta, poly.reference);
            sj["triangulation_ok"] = tri.ok;
            sj["segments"] = ordered_json::array();
            for (const auto& [a, b] : tri.segments)
                sj["segments"].push_back(ordered_json::array({vec_json(a), vec_json(b)}));
            sj["triangles"] = tri.triangles.size();
            tx << "triangulation: " << tri.segments.size() << " segments, " << tri.triangles.size() << " triangles"
               << (tri.ok ? "" : " (not a unimodular triangulation)") << "\n";
        }
        j["stability"] = sj;
    }
    return {j.dump(2) + "\n", tx.str()};
}

}  // namespace dimer
