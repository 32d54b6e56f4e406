#pragma once

#include <gmpxx.h>

#include <vector>

namespace dimer {

// maximize c.x subject to a x = b, x >= 0, solved exactly.
struct LinearProgram {
    std::vector<std::vector<mpq_class>> a;
    std::vector<mpq_class> b;
    std::vector<mpq_class> c;
};

enum class LpStatus { optimal, infeasible, unbounded };

struct LpResult {
    LpStatus status = LpStatus::infeasible;
    std::vector<mpq_class> x;
    mpq_class value;
};

// Two-phase dense simplex with Bland's rule.
LpResult solve(const LinearProgram& lp);

}  // namespace dimer
