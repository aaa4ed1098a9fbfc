#include "aquafill/objectives.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "aquafill/errors.hpp"

namespace aquafill {

namespace {

double parse_parameter(std::string_view text, std::string_view objective) {
  try {
    size_t consumed = 0;
    double value = std::stod(std::string(text), &consumed);
    if (consumed != text.size()) throw std::invalid_argument("trailing characters");
    return value;
  } catch (const std::exception&) {
    throw InvalidParameter(std::string(objective) + ": malformed parameter \"" +
                           std::string(text) + "\"");
  }
}

double geometric_mean(const DVec& x) {
  double log_sum = 0;
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    if (x(i) <= 0) return 0;
    log_sum += std::log(x(i));
  }
  return std::exp(log_sum / static_cast<double>(x.size()));
}

ObjectiveSpec nsw_objective() {
  return {"nsw", Direction::Maximize, SchurClass::Concave, true,
          CrDomain::SimplexTotalOne, geometric_mean};
}

ObjectiveSpec egalitarian_objective() {
  return {"egalitarian", Direction::Maximize, SchurClass::Concave, true,
          CrDomain::SimplexTotalOne, [](const DVec& x) { return x.minCoeff(); }};
}

ObjectiveSpec matching_objective(double cap) {
  if (!(cap > 0)) throw InvalidParameter("matching: capacity must be positive");
  auto eval = [cap](const DVec& x) {
    double total = 0;
    for (Eigen::Index i = 0; i < x.size(); ++i) total += std::min(cap, x(i));
    return total;
  };
  return {"matching", Direction::Maximize, SchurClass::Concave, true,
          CrDomain::UnitMaxBox, eval};
}

ObjectiveSpec powermean_objective(double p) {
  if (!(p < 1) || p == 0) {
    throw InvalidParameter("powermean: exponent must satisfy p < 1, p != 0");
  }
  auto eval = [p](const DVec& x) {
    double sum = 0;
    for (Eigen::Index i = 0; i < x.size(); ++i) {
      if (x(i) <= 0) {
        if (p < 0) return 0.0;  // limit as the entry vanishes
        continue;
      }
      sum += std::pow(x(i), p);
    }
    return sum > 0 ? std::pow(sum, 1.0 / p) : 0.0;
  };
  return {"powermean", Direction::Maximize, SchurClass::Concave, p > 0,
          CrDomain::SimplexTotalOne, eval};
}

// Defined for two nodes: 1 exactly when both loads exceed 1/2. Respects the
// majorization order yet is not concave, which is what makes it interesting.
ObjectiveSpec indicator_half_objective() {
  auto eval = [](const DVec& x) {
    if (x.size() != 2) {
      throw UnsupportedDimension("indicator-half is defined for exactly 2 nodes");
    }
    return (x(0) > 0.5 && x(1) > 0.5) ? 1.0 : 0.0;
  };
  return {"indicator-half", Direction::Maximize, SchurClass::Concave, false,
          CrDomain::Unsupported, eval};
}

ObjectiveSpec makespan_objective() {
  return {"makespan", Direction::Minimize, SchurClass::Convex, true,
          CrDomain::SimplexTotalOne, [](const DVec& x) { return x.maxCoeff(); }};
}

ObjectiveSpec lpnorm_objective(double p) {
  if (!(p >= 1)) throw InvalidParameter("lpnorm: exponent must satisfy p >= 1");
  auto eval = [p](const DVec& x) {
    double sum = 0;
    for (Eigen::Index i = 0; i < x.size(); ++i) sum += std::pow(std::abs(x(i)), p);
    return std::pow(sum, 1.0 / p);
  };
  return {"lpnorm", Direction::Minimize, SchurClass::Convex, true,
          CrDomain::SimplexTotalOne, eval};
}

ObjectiveSpec variance_objective() {
  auto eval = [](const DVec& x) {
    double mean = x.mean();
    double sum = 0;
    for (Eigen::Index i = 0; i < x.size(); ++i) {
      sum += (x(i) - mean) * (x(i) - mean);
    }
    return sum;
  };
  return {"variance", Direction::Minimize, SchurClass::Convex, true,
          CrDomain::SimplexTotalOne, eval};
}

// Mean absolute difference over twice the mean. Schur-convex but not
// convex (it is a ratio), so it does not carry the symmetric_convexity flag.
ObjectiveSpec gini_objective() {
  auto eval = [](const DVec& x) {
    double total = x.sum();
    if (total <= 0) return 0.0;
    double diff_sum = 0;
    for (Eigen::Index i = 0; i < x.size(); ++i) {
      for (Eigen::Index j = 0; j < x.size(); ++j) diff_sum += std::abs(x(i) - x(j));
    }
    double n = static_cast<double>(x.size());
    return diff_sum / (2.0 * n * total);
  };
  return {"gini", Direction::Minimize, SchurClass::Convex, false,
          CrDomain::SimplexTotalOne, eval};
}

}  // namespace

ObjectiveSpec make_objective(std::string_view name) {
  std::string_view base = name;
  std::optional<std::string_view> parameter;
  if (size_t colon = name.find(':'); colon != std::string_view::npos) {
    base = name.substr(0, colon);
    parameter = name.substr(colon + 1);
  }

  auto require_parameter = [&](std::string_view objective) {
    if (!parameter) {
      throw InvalidParameter(std::string(objective) + ": missing parameter, e.g. \"" +
                             std::string(objective) + ":1\"");
    }
    return parse_parameter(*parameter, objective);
  };
  auto reject_parameter = [&](std::string_view objective) {
    if (parameter) {
      throw InvalidParameter(std::string(objective) + " takes no parameter");
    }
  };

  if (base == "nsw") return reject_parameter(base), nsw_objective();
  if (base == "egalitarian" || base == "maximin") {
    return reject_parameter(base), egalitarian_objective();
  }
  if (base == "matching") return matching_objective(require_parameter(base));
  if (base == "powermean") return powermean_objective(require_parameter(base));
  if (base == "indicator-half") return reject_parameter(base), indicator_half_objective();
  if (base == "makespan") return reject_parameter(base), makespan_objective();
  if (base == "lpnorm") return lpnorm_objective(require_parameter(base));
  if (base == "variance") return reject_parameter(base), variance_objective();
  if (base == "gini") return reject_parameter(base), gini_objective();
  throw UnknownObjective("unknown objective: " + std::string(name));
}

std::vector<std::string> objective_catalog() {
  return {"nsw",      "egalitarian", "matching:1", "powermean:0.5", "indicator-half",
          "makespan", "lpnorm:2",    "variance",   "gini"};
}

double ConcaveDecomposition::reconstruct(double x) const {
  double value = gamma * x;
  for (const Piece& piece : pieces) value += piece.beta * std::min(piece.cap, x);
  return value;
}

ConcaveDecomposition concave_decompose(const std::vector<double>& points,
                                       const std::vector<double>& values) {
  if (points.empty() || points.size() != values.size()) {
    throw InvalidParameter("decomposition needs matching nonempty points and values");
  }
  for (size_t i = 0; i < points.size(); ++i) {
    if (!(points[i] > 0) || (i > 0 && !(points[i] > points[i - 1]))) {
      throw InvalidParameter("decomposition points must be positive and strictly increasing");
    }
  }

  // Slopes of the interpolant, anchored at the origin. Concave and
  // nondecreasing means they are nonincreasing and end nonnegative.
  std::vector<double> slopes;
  slopes.push_back(values[0] / points[0]);
  for (size_t i = 1; i < points.size(); ++i) {
    slopes.push_back((values[i] - values[i - 1]) / (points[i] - points[i - 1]));
  }
  for (size_t i = 1; i < slopes.size(); ++i) {
    if (slopes[i] > slopes[i - 1] + 1e-12) {
      throw NotConcaveNondecreasing("sample values are not concave");
    }
  }
  if (slopes.back() < -1e-12) {
    throw NotConcaveNondecreasing("sample values are not nondecreasing");
  }

  ConcaveDecomposition result;
  result.gamma = std::max(slopes.back(), 0.0);
  for (size_t i = 0; i + 1 < slopes.size(); ++i) {
    double beta = slopes[i] - slopes[i + 1];
    if (beta > 0) result.pieces.push_back({beta, points[i]});
  }
  return result;
}

}  // namespace aquafill
