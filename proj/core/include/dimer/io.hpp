#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "dimer/matchings.hpp"
#include "dimer/mutations.hpp"
#include "dimer/stability.hpp"
#include "dimer/surface_graph.hpp"

namespace dimer {

inline constexpr int dimer_format_version = 1;

// The on-disk dimer model with its optional perfect-matching aliases.
struct DimerFile {
    TorusGraph graph;
    std::vector<std::pair<std::string, PerfectMatching>> aliases;
    std::optional<std::string> reference;
};

// Throws InvariantError on malformed content.
DimerFile parse_dimer(const std::string& text);
DimerFile load_dimer(const std::string& path);
std::string dump_dimer(const DimerFile& file);
void save_dimer(const DimerFile& file, const std::string& path);

// An alias, or a comma-separated list of edge ids.
PerfectMatching resolve_pm(const DimerFile& file, const std::string& spec);
// The alias of d, or "PM<i>" with i its position in enumeration order (1-based).
std::string pm_label(const DimerFile& file, const std::vector<PerfectMatching>& all, const PerfectMatching& d);
std::optional<PerfectMatching> reference_pm(const DimerFile& file);

Theta parse_theta(const std::string& text);

std::string quiver_dot(const QuiverWithPotential& qp, const std::optional<Grading>& grading = std::nullopt);
std::string exchange_graph_dot(const ExchangeGraph& g, const std::vector<std::string>& labels);

struct SvgPoint {
    Vec2 at;
    std::string label;
};

std::string polygon_svg(const std::vector<Vec2>& hull, const std::vector<SvgPoint>& points,
                        const std::vector<Segment>& segments = {});

struct ReportOptions {
    std::optional<Theta> theta;
    std::optional<std::string> reference;
};

struct Report {
    std::string json;
    std::string text;
};

Report analysis_report(const DimerFile& file, const ReportOptions& options = {});
std::string zigzag_json(const Model& m);

}  // namespace dimer
