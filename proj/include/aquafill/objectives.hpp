#pragma once

#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "aquafill/vectors.hpp"

namespace aquafill {

enum class Direction { Maximize, Minimize };

// Monotonicity with respect to majorization. A Schur-concave function never
// prefers the more unbalanced of two comparable load vectors; Schur-convex
// is the mirror image. Every symmetric concave (resp. convex) function
// qualifies, but not conversely.
enum class SchurClass { Concave, Convex };

// How the competitive-ratio search can normalize scale for this objective.
enum class CrDomain {
  SimplexTotalOne,  // ratio is scale invariant; search the total-1 simplex
  UnitMaxBox,       // capped objectives; search sorted vectors with max 1
  Unsupported,
};

struct ObjectiveSpec {
  std::string name;
  Direction direction = Direction::Maximize;
  SchurClass schur = SchurClass::Concave;
  // True when the function is symmetric and concave (maximize) or symmetric
  // and convex (minimize), the stronger property some guarantees need.
  bool symmetric_convexity = false;
  CrDomain cr_domain = CrDomain::SimplexTotalOne;
  std::function<double(const DVec&)> eval;

  double evaluate(const DVec& loads) const { return eval(loads); }
  double evaluate(const RVec& loads) const { return eval(to_dvec(loads)); }
};

// Catalog lookup by name, with parameters after a colon:
//   nsw | egalitarian | matching:c | powermean:p | indicator-half
//   makespan | lpnorm:p | variance | gini
// Throws UnknownObjective for unknown names and InvalidParameter for bad
// parameters (matching needs c > 0, powermean p < 1 and p != 0, lpnorm
// p >= 1).
ObjectiveSpec make_objective(std::string_view name);

// One parseable example per family, e.g. "matching:1" for the capped sums.
std::vector<std::string> objective_catalog();

// Representation of a concave nondecreasing f with f(0) = 0 as
//   f(x) = gamma * x + sum_i beta_i * min(c_i, x)
// with gamma, beta_i >= 0. Piecewise-linear interpolation through sample
// points admits exactly one such form.
struct ConcaveDecomposition {
  double gamma = 0;
  struct Piece {
    double beta;
    double cap;
  };
  std::vector<Piece> pieces;

  double reconstruct(double x) const;
};

// points must be strictly increasing and positive; values are the samples
// f(points[i]). Throws NotConcaveNondecreasing when the interpolant (with
// the implicit anchor at the origin) fails concavity or monotonicity.
ConcaveDecomposition concave_decompose(const std::vector<double>& points,
                                       const std::vector<double>& values);

}  // namespace aquafill
