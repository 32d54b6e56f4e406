#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "dimer/algebra.hpp"
#include "dimer/errors.hpp"
#include "dimer/fixtures.hpp"
#include "dimer/io.hpp"
#include "dimer/lattice.hpp"
#include "dimer/matchings.hpp"
#include "dimer/mutations.hpp"
#include "dimer/stability.hpp"
#include "dimer/zigzag.hpp"

using namespace dimer;

namespace {

constexpr int exit_ok = 0;
constexpr int exit_invariant = 1;
constexpr int exit_usage = 2;

struct Loaded {
    DimerFile file;
    Model model;
    QuiverWithPotential qp;
};

Loaded load(const std::string& spec) {
    DimerFile f = load_model(spec);
    Model m = validated(f.graph);
    QuiverWithPotential qp = dualize(m);
    return {std::move(f), std::move(m), std::move(qp)};
}

void write_or_print(const std::string& text, const std::string& path) {
    if (path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(path);
    if (!out) throw UsageError("cannot write '" + path + "'");
    out << text;
}

std::string edge_list(const TorusGraph& g, const PerfectMatching& d) {
    std::string s;
    for (int e : d.edges) s += (s.empty() ? "" : ",") + g.edges[e].id;
    return s;
}

std::string label(const Loaded& l, const std::vector<PerfectMatching>& all, const PerfectMatching& d) {
    std::string name = pm_label(l.file, all, d);
    return name == "?" ? "{" + edge_list(l.model.graph(), d) + "}" : name;
}

Side parse_side(const std::string& s) {
    if (s == "L" || s == "l" || s == "left") return Side::left;
    if (s == "R" || s == "r" || s == "right") return Side::right;
    throw UsageError("side must be L or R");
}

int cmd_validate(const std::string& model) {
    DimerFile f = load_model(model);
    auto r = validate(f.graph);
    if (!r.ok()) {
        for (const auto& v : r.violations) std::cout << violation_name(v.kind) << ": " << v.message << "\n";
        return exit_invariant;
    }
    std::cout << "ok: " << f.graph.nodes.size() << " nodes, " << f.graph.edges.size() << " edges, "
              << r.model->face_count() << " faces\n";
    return exit_ok;
}

int cmd_consistency(const std::string& model, bool with_lp) {
    auto l = load(model);
    auto v = is_consistent(l.model);
    std::cout << "zigzag criterion: " << (v.consistent ? "consistent" : "inconsistent") << "\n";
    for (std::size_t i = 0; i < v.reasons.size(); ++i) std::cout << "  " << v.reasons[i] << "\n";
    if (with_lp) {
        auto r = rcharge_feasible(l.model);
        std::cout << "R-charge LP: " << (r.feasible ? "feasible" : "infeasible");
        if (r.epsilon) std::cout << " (max min R = " << r.epsilon->get_str() << ")";
        std::cout << "\n";
        if (r.feasible != v.consistent) {
            std::cout << "the two criteria disagree\n";
            return exit_invariant;
        }
    }
    return v.consistent ? exit_ok : exit_invariant;
}

int cmd_polygon(const std::string& model, const std::string& ref, const std::string& svg) {
    auto l = load(model);
    std::optional<PerfectMatching> reference = ref.empty() ? reference_pm(l.file) : resolve_pm(l.file, ref);
    auto poly = pm_polygon(l.model, reference);
    std::cout << "reference " << label(l, poly.pms, poly.reference) << "\nvertices:";
    for (const auto& v : poly.vertices) std::cout << " " << v;
    std::cout << "\n";
    const bool two_d = poly.vertices.size() >= 3;
    std::vector<SvgPoint> points;
    for (std::size_t i = 0; i < poly.pms.size(); ++i) {
        const auto cls = two_d ? classify(poly.pms[i], poly) : PmClass::boundary;
        std::cout << "  " << label(l, poly.pms, poly.pms[i]) << " " << poly.points[i] << " " << pm_class_name(cls) << "\n";
        if (pm_label(l.file, poly.pms, poly.pms[i]).rfind("PM", 0) != 0)
            points.push_back({poly.points[i], pm_label(l.file, poly.pms, poly.pms[i])});
    }
    if (two_d)
        std::cout << "interior point: " << (has_interior_point(poly.vertices) ? "yes" : "no")
                  << ", isolated: " << (is_isolated(poly.vertices) ? "yes" : "no") << "\n";
    if (!svg.empty()) write_or_print(polygon_svg(poly.vertices, points), svg);
    return exit_ok;
}

int cmd_stable(const std::string& model, const std::string& theta_text, const std::string& ref) {
    auto l = load(model);
    std::optional<PerfectMatching> reference = ref.empty() ? reference_pm(l.file) : resolve_pm(l.file, ref);
    auto all = enumerate_pms(l.model);
    auto st = theta_stable_pms(l.model, parse_theta(theta_text), reference);
    for (const auto& [at, d] : st.by_point) std::cout << at << " " << label(l, all, d) << "\n";
    for (const auto& p : st.problems) std::cout << "problem: " << p << "\n";
    return st.generic ? exit_ok : exit_invariant;
}

int cmd_triangulate(const std::string& model, const std::string& theta_text, const std::string& ref,
                    const std::string& svg) {
    auto l = load(model);
    std::optional<PerfectMatching> reference = ref.empty() ? reference_pm(l.file) : resolve_pm(l.file, ref);
    auto tri = triangulate(l.model, parse_theta(theta_text), reference);
    for (const auto& [a, b] : tri.segments) std::cout << a << " -- " << b << "\n";
    std::cout << tri.triangles.size() << " triangles\n";
    for (const auto& p : tri.problems) std::cout << "problem: " << p << "\n";
    if (!svg.empty()) {
        auto all = enumerate_pms(l.model);
        auto st = theta_stable_pms(l.model, parse_theta(theta_text), reference);
        std::vector<SvgPoint> points;
        for (const auto& [at, d] : st.by_point) points.push_back({at, label(l, all, d)});
        write_or_print(polygon_svg(tri.polygon, points, tri.segments), svg);
    }
    return tri.ok ? exit_ok : exit_invariant;
}

int cmd_mutate_pm(const std::string& model, const std::string& pm, int vertex, const std::string& dir) {
    auto l = load(model);
    auto d = resolve_pm(l.file, pm);
    if (!is_perfect_matching(l.qp, d)) throw UsageError("'" + pm + "' is not a perfect matching");
    PerfectMatching e;
    if (dir == "plus" || dir == "+") e = mutate_pm_plus(l.qp, d, vertex);
    else if (dir == "minus" || dir == "-") e = mutate_pm_minus(l.qp, d, vertex);
    else throw UsageError("direction must be plus or minus");
    auto all = enumerate_pms(l.model);
    std::cout << label(l, all, e) << " {" << edge_list(l.model.graph(), e) << "}\n";
    return exit_ok;
}

int cmd_exchange(const std::string& model, const std::string& pm, const std::string& dot) {
    auto l = load(model);
    auto g = exchange_graph(l.model, resolve_pm(l.file, pm));
    auto all = enumerate_pms(l.model);
    std::vector<std::string> labels;
    for (const auto& d : g.pms) labels.push_back(label(l, all, d));
    std::cout << g.pms.size() << " perfect matchings, " << g.edges.size() << " mutations\n";
    for (const auto& e : g.edges) std::cout << "  " << labels[e.from] << " -[" << e.vertex << "]-> " << labels[e.to] << "\n";
    if (!dot.empty()) write_or_print(exchange_graph_dot(g, labels), dot);
    return exit_ok;
}

int cmd_mutate_dimer(const std::string& model, int face, const std::string& out) {
    auto l = load(model);
    Model m = mutate_dimer(l.model, face);
    DimerFile f;
    f.graph = m.labelled_graph();
    write_or_print(dump_dimer(f), out);
    return exit_ok;
}

int cmd_mutate_qp(const std::string& model, int vertex, bool graded, const std::string& pm, const std::string& side) {
    auto l = load(model);
    auto r = mutate_qp(l.qp, vertex);
    std::optional<Grading> degrees;
    if (graded) {
        if (pm.empty()) throw UsageError("--graded needs --pm");
        std::optional<Side> s;
        if (!side.empty()) s = parse_side(side);
        auto t = transport_pm(l.model, resolve_pm(l.file, pm), vertex, s);
        degrees = t.degrees;
        std::cout << "// " << (t.side == Side::left ? "left" : "right") << " mutation"
                  << (t.free_choice ? " (free choice)" : "") << ", matching {" << edge_list(t.mutated.graph(), t.pm)
                  << "}\n";
    }
    std::cout << quiver_dot(r.qp, degrees);
    for (const auto& t : r.qp.potential) {
        std::cout << "// " << (t.sign > 0 ? "+" : "-");
        for (int a : t.cycle) std::cout << " " << r.qp.quiver.arrows[a].name;
        std::cout << "\n";
    }
    return exit_ok;
}

int cmd_algebra(const std::string& model, const std::string& pm, std::optional<int> drop) {
    auto l = load(model);
    auto d = resolve_pm(l.file, pm);
    auto ss = strict_sources_sinks(l.qp, d);
    std::cout << "acyclic: " << (is_acyclic(l.qp, d) ? "yes" : "no") << "\n";
    Dimension dim = drop ? dimension_without_vertex(l.qp, d, *drop) : truncated_dimension(l.qp, d);
    switch (dim.kind) {
        case Dimension::Kind::finite: std::cout << "dimension: " << dim.value << "\n"; break;
        case Dimension::Kind::infinite: std::cout << "dimension: infinite\n"; break;
        case Dimension::Kind::undecided: std::cout << "dimension: undecided (a cycle avoids the dropped vertex)\n"; break;
    }
    std::cout << "strict sources:";
    for (int k : ss.sources) std::cout << " " << k;
    std::cout << "\nstrict sinks:";
    for (int k : ss.sinks) std::cout << " " << k;
    std::cout << "\n";
    return exit_ok;
}

int cmd_quiver(const std::string& model, const std::string& pm) {
    auto l = load(model);
    std::optional<Grading> g;
    if (!pm.empty()) g = grading_of(l.qp, resolve_pm(l.file, pm));
    std::cout << quiver_dot(l.qp, g);
    return exit_ok;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Dimer model toolkit"};
    app.require_subcommand(1);

    std::string model, ref, theta, svg, dot, out, pm, dir = "plus", side;
    int vertex = 0, face = 0;
    std::optional<int> drop;
    bool json = false, lp = false, graded = false;
    std::function<int()> run;

    auto add_model = [&](CLI::App* c) { c->add_option("model", model, "fixture name or dimer file")->required(); };

    auto* validate_cmd = app.add_subcommand("validate", "check the embedding axioms");
    add_model(validate_cmd);
    validate_cmd->callback([&] { run = [&] { return cmd_validate(model); }; });

    auto* analyze = app.add_subcommand("analyze", "full report");
    add_model(analyze);
    analyze->add_option("--theta", theta, "stability parameter, comma separated");
    analyze->add_option("--ref-pm", ref, "reference perfect matching");
    analyze->add_flag("--json", json, "print JSON instead of text");
    analyze->callback([&] {
        run = [&] {
            DimerFile f = load_model(model);
            ReportOptions opt;
            if (!theta.empty()) opt.theta = parse_theta(theta);
            if (!ref.empty()) opt.reference = ref;
            auto r = analysis_report(f, opt);
            std::cout << (json ? r.json : r.text);
            return exit_ok;
        };
    });

    auto* polygon = app.add_subcommand("polygon", "perfect matching polygon");
    add_model(polygon);
    polygon->add_option("--ref-pm", ref, "reference perfect matching");
    polygon->add_option("--svg", svg, "write an SVG drawing");
    polygon->callback([&] { run = [&] { return cmd_polygon(model, ref, svg); }; });

    auto* zigzag = app.add_subcommand("zigzag", "zigzag paths as JSON");
    add_model(zigzag);
    zigzag->callback([&] {
        run = [&] {
            std::cout << zigzag_json(load(model).model);
            return exit_ok;
        };
    });

    auto* consistency = app.add_subcommand("consistency", "consistency verdict");
    add_model(consistency);
    consistency->add_flag("--lp", lp, "also solve the R-charge linear program");
    consistency->callback([&] { run = [&] { return cmd_consistency(model, lp); }; });

    auto* quiver = app.add_subcommand("quiver", "dual quiver as DOT");
    add_model(quiver);
    quiver->add_option("--pm", pm, "colour the arrows of a perfect matching");
    quiver->callback([&] { run = [&] { return cmd_quiver(model, pm); }; });

    auto* stable = app.add_subcommand("stable-pms", "theta-stable perfect matchings");
    add_model(stable);
    stable->add_option("--theta", theta, "stability parameter")->required();
    stable->add_option("--ref-pm", ref, "reference perfect matching");
    stable->callback([&] { run = [&] { return cmd_stable(model, theta, ref); }; });

    auto* tri = app.add_subcommand("triangulate", "triangulation from theta-stable matchings");
    add_model(tri);
    tri->add_option("--theta", theta, "stability parameter")->required();
    tri->add_option("--ref-pm", ref, "reference perfect matching");
    tri->add_option("--svg", svg, "write an SVG drawing");
    tri->callback([&] { run = [&] { return cmd_triangulate(model, theta, ref, svg); }; });

    auto* mpm = app.add_subcommand("mutate-pm", "mutate a perfect matching at a vertex");
    add_model(mpm);
    mpm->add_option("--pm", pm, "perfect matching")->required();
    mpm->add_option("--vertex", vertex, "quiver vertex")->required();
    mpm->add_option("--dir", dir, "plus or minus");
    mpm->callback([&] { run = [&] { return cmd_mutate_pm(model, pm, vertex, dir); }; });

    auto* exch = app.add_subcommand("exchange-graph", "closure of an internal matching under mutation");
    add_model(exch);
    exch->add_option("--pm", pm, "internal perfect matching")->required();
    exch->add_option("--dot", dot, "write the graph as DOT");
    exch->callback([&] { run = [&] { return cmd_exchange(model, pm, dot); }; });

    auto* mdimer = app.add_subcommand("mutate-dimer", "spider move at a quadrangle face");
    add_model(mdimer);
    mdimer->add_option("--face", face, "face label")->required();
    mdimer->add_option("--out", out, "output dimer file");
    mdimer->callback([&] { run = [&] { return cmd_mutate_dimer(model, face, out); }; });

    auto* mqp = app.add_subcommand("mutate-qp", "mutation of the quiver with potential");
    add_model(mqp);
    mqp->add_option("--vertex", vertex, "mutable vertex")->required();
    mqp->add_flag("--graded", graded, "transport a perfect matching grading");
    mqp->add_option("--pm", pm, "perfect matching for --graded");
    mqp->add_option("--side", side, "L or R");
    mqp->callback([&] { run = [&] { return cmd_mutate_qp(model, vertex, graded, pm, side); }; });

    auto* alg = app.add_subcommand("algebra", "truncated Jacobian algebra of a perfect matching");
    add_model(alg);
    alg->add_option("--pm", pm, "perfect matching")->required();
    alg->add_option("--drop-vertex", drop, "also kill this vertex");
    alg->callback([&] { run = [&] { return cmd_algebra(model, pm, drop); }; });

    auto* fixtures = app.add_subcommand("fixtures", "built-in models");
    fixtures->require_subcommand(1);
    auto* list = fixtures->add_subcommand("list", "list fixture names");
    list->callback([&] {
        run = [] {
            for (const auto& n : fixture_names()) std::cout << n << "\n";
            return exit_ok;
        };
    });
    std::string fixture;
    auto* dump = fixtures->add_subcommand("dump", "print a fixture file");
    dump->add_option("name", fixture, "fixture name")->required();
    dump->callback([&] {
        run = [&] {
            std::cout << fixture_text(fixture);
            return exit_ok;
        };
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? exit_ok : exit_usage;
    }

    try {
        return run ? run() : exit_usage;
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return exit_usage;
    } catch (const InvariantError& e) {
        std::cerr << "invariant violation: " << e.what() << "\n";
        return exit_invariant;
    }
}
