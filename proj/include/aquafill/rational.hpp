#pragma once

#include <Eigen/Core>
#include <gmpxx.h>

#include <string>
#include <string_view>

namespace aquafill {

// Exact rational scalar. Quantities, loads, and water levels stay on this
// type end to end; doubles appear only when an objective is evaluated.
using Rat = mpq_class;

// Canonicalized num/den constructor. mpq_class(n, d) alone does not reduce.
Rat rat(long num, long den = 1);

// Accepts "p/q" or a decimal literal with at most 12 fractional digits.
Rat parse_rational(std::string_view text);

// Canonical form: "p/q", or plain "p" when the denominator is 1.
std::string format_rational(const Rat& value);

double to_double(const Rat& value);

}  // namespace aquafill

namespace Eigen {

// Dense Eigen types over the exact rational scalar.
template <>
struct NumTraits<mpq_class> : GenericNumTraits<mpq_class> {
  using Real = mpq_class;
  using NonInteger = mpq_class;
  using Nested = mpq_class;
  using Literal = long;

  static inline Real epsilon() { return 0; }
  static inline Real dummy_precision() { return 0; }
  static inline int digits10() { return 0; }

  enum {
    IsInteger = 0,
    IsSigned = 1,
    IsComplex = 0,
    RequireInitialization = 1,
    ReadCost = 6,
    AddCost = 150,
    MulCost = 100,
  };
};

}  // namespace Eigen
