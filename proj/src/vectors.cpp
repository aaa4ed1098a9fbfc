#include "aquafill/vectors.hpp"

#include <algorithm>
#include <functional>

namespace aquafill {

RVec rvec(std::initializer_list<Rat> entries) {
  RVec v(static_cast<Eigen::Index>(entries.size()));
  Eigen::Index i = 0;
  for (const Rat& e : entries) v(i++) = e;
  return v;
}

RVec rvec(const std::vector<Rat>& entries) {
  RVec v(static_cast<Eigen::Index>(entries.size()));
  for (size_t i = 0; i < entries.size(); ++i) v(static_cast<Eigen::Index>(i)) = entries[i];
  return v;
}

DVec to_dvec(const RVec& v) {
  DVec d(v.size());
  for (Eigen::Index i = 0; i < v.size(); ++i) d(i) = to_double(v(i));
  return d;
}

RVec sorted_ascending(RVec v) {
  std::sort(v.begin(), v.end());
  return v;
}

RVec sorted_descending(RVec v) {
  std::sort(v.begin(), v.end(), std::greater<Rat>());
  return v;
}

RVec prefix_sums(const RVec& v) {
  RVec p(v.size());
  Rat running(0);
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    running += v(i);
    p(i) = running;
  }
  return p;
}

bool exactly_equal(const RVec& a, const RVec& b) {
  if (a.size() != b.size()) return false;
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    if (a(i) != b(i)) return false;
  }
  return true;
}

std::vector<std::string> format_vector(const RVec& v) {
  std::vector<std::string> out;
  out.reserve(static_cast<size_t>(v.size()));
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(format_rational(v(i)));
  return out;
}

}  // namespace aquafill
