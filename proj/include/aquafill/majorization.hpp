#pragma once

#include <string_view>

#include "aquafill/vectors.hpp"

namespace aquafill {

// Outcome of comparing two equal-total vectors in the majorization preorder.
// x majorizes y when every prefix sum of x, taken in decreasing order,
// dominates the corresponding prefix sum of y. Majorizing means "more
// unbalanced"; the relation is partial, so Incomparable is a normal result.
enum class MajorizationRelation {
  Equivalent,           // equal up to permutation
  LeftMajorizesRight,   // x is at least as unbalanced as y
  RightMajorizesLeft,   // y is at least as unbalanced as x
  Incomparable,
};

std::string_view to_string(MajorizationRelation rel);

// Exact four-way comparison. Throws UnequalLength or UnequalSums when the
// inputs are not comparable by construction.
MajorizationRelation compare_majorization(const RVec& x, const RVec& y);

// sum_i max(x(i) - threshold, 0). For equal-total vectors, x majorizes y
// exactly when this value dominates y's at every entry of x and y, which
// gives an independent check of compare_majorization.
Rat karamata_value(const RVec& x, const Rat& threshold);

}  // namespace aquafill
