#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "dimer/canonical.hpp"
#include "dimer/quiver.hpp"

namespace dimer::oracle {

struct OracleDimension {
    std::int64_t total = 0;
    Matrix blocks;
};

// Dimension of kQ_D / <dW/da : a in D> (optionally also killing e_dropped) by
// rewriting: every path of Q_D avoiding the dropped vertex is enumerated, paths
// are identified under single subpath replacements p+ <-> p-, and a class is
// zero as soon as one replacement runs through the dropped vertex.
// Returns nullopt when the paths are not finite in number.
std::optional<OracleDimension> rewriting_dimension(const QuiverWithPotential& qp, const PerfectMatching& d,
                                                   std::optional<int> dropped = std::nullopt);

}  // namespace dimer::oracle
