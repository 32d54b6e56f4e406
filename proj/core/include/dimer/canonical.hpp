#pragma once

#include <cstdint>
#include <vector>

namespace dimer {

using Matrix = std::vector<std::vector<std::int64_t>>;

// Smallest form of m under simultaneous row and column permutation, comparing
// entries principal block by principal block. Vertices are first split by permutation-invariant
// colours so that only colour-respecting orders are searched.
Matrix canonical_matrix(const Matrix& m);

// The permutation achieving canonical_matrix: result[i] = old index placed at i.
std::vector<int> canonical_order(const Matrix& m);

}  // namespace dimer
