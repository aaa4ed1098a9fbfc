#include "aquafill/majorization.hpp"

#include "aquafill/errors.hpp"

namespace aquafill {

std::string_view to_string(MajorizationRelation rel) {
  switch (rel) {
    case MajorizationRelation::Equivalent: return "equivalent";
    case MajorizationRelation::LeftMajorizesRight: return "left-majorizes-right";
    case MajorizationRelation::RightMajorizesLeft: return "right-majorizes-left";
    case MajorizationRelation::Incomparable: return "incomparable";
  }
  return "incomparable";
}

MajorizationRelation compare_majorization(const RVec& x, const RVec& y) {
  if (x.size() != y.size()) {
    throw UnequalLength("majorization comparison of vectors with different lengths");
  }
  if (x.size() == 0) return MajorizationRelation::Equivalent;
  if (Rat(x.sum()) != Rat(y.sum())) {
    throw UnequalSums("majorization comparison of vectors with different totals");
  }

  RVec xd = sorted_descending(x);
  RVec yd = sorted_descending(y);

  bool left_dominates = true;
  bool right_dominates = true;
  Rat px(0);
  Rat py(0);
  for (Eigen::Index i = 0; i < xd.size(); ++i) {
    px += xd(i);
    py += yd(i);
    if (px < py) left_dominates = false;
    if (py < px) right_dominates = false;
  }

  if (left_dominates && right_dominates) return MajorizationRelation::Equivalent;
  if (left_dominates) return MajorizationRelation::LeftMajorizesRight;
  if (right_dominates) return MajorizationRelation::RightMajorizesLeft;
  return MajorizationRelation::Incomparable;
}

Rat karamata_value(const RVec& x, const Rat& threshold) {
  Rat total(0);
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    if (x(i) > threshold) total += x(i) - threshold;
  }
  return total;
}

}  // namespace aquafill
