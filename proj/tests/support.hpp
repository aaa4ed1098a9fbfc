// Shared fixtures and random generators for the test suite.
#pragma once

#include <algorithm>
#include <numeric>
#include <utility>
#include <vector>

#include "aquafill/rational.hpp"
#include "aquafill/rng.hpp"
#include "aquafill/sequence.hpp"
#include "aquafill/vectors.hpp"

namespace aquafill::testing {

// The 4-node, 5-arrival sequence used throughout the documentation. Water
// filling ends at (2,2,4,4) while the hindsight optimum is flat (3,3,3,3).
inline RequestSequence example_instance() {
  RequestSequence e;
  e.n = 4;
  e.arrivals = {
      {{2, 4}, Rat(2)},
      {{1, 2, 3}, Rat(5)},
      {{3}, Rat(2)},
      {{2, 4}, Rat(1)},
      {{3, 4}, Rat(2)},
  };
  return e;
}

// Nested two-node sequence where a cautious policy beats water filling on the
// "both above one half" objective.
inline RequestSequence two_node_instance() {
  RequestSequence e;
  e.n = 2;
  e.arrivals = {
      {{1, 2}, Rat(1)},
      {{2}, Rat(1)},
  };
  return e;
}

inline std::vector<int> random_permutation(Rng& rng, int n) {
  std::vector<int> perm(static_cast<size_t>(n));
  std::iota(perm.begin(), perm.end(), 1);
  for (int i = n - 1; i > 0; --i) {
    std::swap(perm[static_cast<size_t>(i)],
              perm[static_cast<size_t>(rng.below(static_cast<std::uint64_t>(i) + 1))]);
  }
  return perm;
}

inline Rat random_quantity(Rng& rng, int max_numerator = 24, int max_denominator = 12) {
  return rat(rng.between(1, max_numerator), rng.between(1, max_denominator));
}

// Random nested sequence: neighborhoods are prefixes of a random node order,
// shrinking over time. Isolated nodes appear whenever the first draw misses n.
inline RequestSequence random_nested_instance(Rng& rng, int max_n = 6, int max_m = 8) {
  int n = rng.between(2, max_n);
  int m = rng.between(1, max_m);
  std::vector<int> perm = random_permutation(rng, n);
  std::vector<int> sizes(static_cast<size_t>(m));
  for (int& s : sizes) s = rng.between(1, n);
  std::sort(sizes.begin(), sizes.end(), std::greater<>());

  RequestSequence e;
  e.n = n;
  for (int t = 0; t < m; ++t) {
    Arrival arrival;
    arrival.neighbors.assign(perm.begin(), perm.begin() + sizes[static_cast<size_t>(t)]);
    std::sort(arrival.neighbors.begin(), arrival.neighbors.end());
    arrival.quantity = random_quantity(rng);
    e.arrivals.push_back(std::move(arrival));
  }
  return e;
}

inline RequestSequence random_general_instance(Rng& rng, int max_n = 6, int max_m = 8) {
  InstanceParams params;
  params.n = rng.between(2, max_n);
  params.m = rng.between(1, max_m);
  params.total_quantity = rat(rng.between(1, 24), rng.between(1, 2));
  params.density = 0.3 + 0.7 * rng.unit();
  params.quantity_denominator = 12;
  params.seed = rng.next();
  return random_instance(params);
}

inline RVec random_nonnegative_vector(Rng& rng, int n, int max_numerator = 24,
                                      int max_denominator = 12) {
  RVec v(n);
  for (int i = 0; i < n; ++i) {
    v(i) = rat(rng.between(0, max_numerator), rng.between(1, max_denominator));
  }
  return v;
}

// Returns (x, y) with equal totals and x obtained from y by transfers from a
// higher-loaded entry to a lower-loaded one, so x is at most as spread out.
inline std::pair<RVec, RVec> comparable_pair(Rng& rng, int n) {
  RVec y = random_nonnegative_vector(rng, n);
  RVec x = y;
  int transfers = rng.between(1, 2 * n);
  for (int k = 0; k < transfers; ++k) {
    int i = rng.between(0, n - 1);
    int j = rng.between(0, n - 1);
    if (Rat(x(i)) <= Rat(x(j))) std::swap(i, j);
    Rat gap = Rat(x(i) - x(j));
    Rat delta = gap * rat(rng.between(0, 8), 16);
    x(i) -= delta;
    x(j) += delta;
  }
  return {x, y};
}

// Returns (x, y) with equal totals where every prefix sum of x is at most the
// matching prefix sum of y: mass only ever moves to later coordinates.
inline std::pair<RVec, RVec> prefix_dominated_pair(Rng& rng, int n) {
  RVec y = random_nonnegative_vector(rng, n);
  RVec x = y;
  int transfers = rng.between(1, 2 * n);
  for (int k = 0; k < transfers && n >= 2; ++k) {
    int i = rng.between(0, n - 2);
    int j = rng.between(i + 1, n - 1);
    Rat delta = Rat(x(i)) * rat(rng.between(0, 16), 16);
    x(i) -= delta;
    x(j) += delta;
  }
  return {x, y};
}

}  // namespace aquafill::testing
