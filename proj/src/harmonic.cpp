#include "aquafill/harmonic.hpp"

#include "aquafill/errors.hpp"

namespace aquafill {

RMat harmonic_matrix(int n) {
  if (n < 1) throw InvalidParameter("harmonic matrix needs n >= 1");
  RMat h(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      h(i, j) = (i >= j) ? rat(1, n - j) : Rat(0);
    }
  }
  return h;
}

RVec apply_harmonic(const RMat& h, const RVec& z) {
  if (h.rows() != h.cols() || h.rows() != z.size()) {
    throw UnequalLength("harmonic transform dimension mismatch");
  }
  return h * z;
}

Rat harmonic_number(int k) {
  if (k < 0) throw InvalidParameter("harmonic number of negative index");
  Rat sum(0);
  for (int i = 1; i <= k; ++i) sum += rat(1, i);
  return sum;
}

}  // namespace aquafill
