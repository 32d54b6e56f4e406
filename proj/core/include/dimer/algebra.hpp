#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "dimer/canonical.hpp"
#include "dimer/quiver.hpp"

namespace dimer {

inline constexpr std::int64_t default_path_cap = 1'000'000;

bool is_acyclic(const QuiverWithPotential& qp, const PerfectMatching& d);

struct Dimension {
    enum class Kind { finite, infinite, undecided };
    Kind kind = Kind::finite;
    std::int64_t value = 0;
    // dim e_i A e_j for finite results, indexed by the original vertices.
    Matrix blocks;

    bool finite() const { return kind == Kind::finite; }
};

// Dimension of A_D = kQ_D / <dW/da : a in D>. Infinite exactly when Q_D has a cycle.
Dimension truncated_dimension(const QuiverWithPotential& qp, const PerfectMatching& d,
                              std::int64_t path_cap = default_path_cap);

// Same for A_D / <e_i>. When Q_D without i still has a cycle the one-sided
// relations may or may not kill it, and the result is `undecided`.
Dimension dimension_without_vertex(const QuiverWithPotential& qp, const PerfectMatching& d, int vertex,
                                   std::int64_t path_cap = default_path_cap);

struct SourcesSinks {
    std::vector<int> sources;
    std::vector<int> sinks;
};

bool is_strict_source(const QuiverWithPotential& qp, const PerfectMatching& d, int k);
bool is_strict_sink(const QuiverWithPotential& qp, const PerfectMatching& d, int k);
SourcesSinks strict_sources_sinks(const QuiverWithPotential& qp, const PerfectMatching& d);

struct Fingerprint {
    std::int64_t total = 0;
    Matrix blocks;
    friend bool operator==(const Fingerprint&, const Fingerprint&) = default;
};

// Requires Q_D acyclic.
Fingerprint algebra_fingerprint(const QuiverWithPotential& qp, const PerfectMatching& d);

}  // namespace dimer
