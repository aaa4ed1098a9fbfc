#pragma once

#include "aquafill/vectors.hpp"

namespace aquafill {

// Lower-triangular n x n matrix with entry 1/(n-j+1) at (i, j) for i >= j,
// in 1-indexed terms. Column j spreads one unit over the n-j+1 trailing
// rows, so every column sums to 1 and totals are preserved. Applied to the
// per-node quantity increments of a nested sequence (nodes ordered by last
// arrival time), it reproduces the water-filling loads in closed form.
RMat harmonic_matrix(int n);

// H * z with an explicit length check.
RVec apply_harmonic(const RMat& h, const RVec& z);

// H_k = 1 + 1/2 + ... + 1/k, with H_0 = 0.
Rat harmonic_number(int k);

}  // namespace aquafill
