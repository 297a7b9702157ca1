// Tiling counts by closed form and by a column transfer recursion.
#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include "hexmix/lattice.hpp"

namespace hexmix {

using BigInt = boost::multiprecision::cpp_int;

// prod_{i<=a, j<=b, k<=c} (i+j+k-1)/(i+j+k-2).
BigInt macmahon_count(int a, int b, int c);

// Counts admissible height fields column by column: each column is a
// monotone lattice path between its fixed end heights, and consecutive
// columns must satisfy the horizontal and diagonal step rules.
BigInt column_transfer_count(const HexDomain& d);

}  // namespace hexmix
