#pragma once

#include <Eigen/Core>

#include <initializer_list>
#include <string>
#include <vector>

#include "aquafill/rational.hpp"

namespace aquafill {

template <typename Scalar>
using Vec = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

template <typename Scalar>
using SquareMat = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

using RVec = Vec<Rat>;
using RMat = SquareMat<Rat>;
using DVec = Vec<double>;
using DMat = SquareMat<double>;

RVec rvec(std::initializer_list<Rat> entries);
RVec rvec(const std::vector<Rat>& entries);

DVec to_dvec(const RVec& v);

RVec sorted_ascending(RVec v);
RVec sorted_descending(RVec v);

// prefix(i) = v(0) + ... + v(i)
RVec prefix_sums(const RVec& v);

bool exactly_equal(const RVec& a, const RVec& b);

// Canonical "p/q" strings, e.g. for JSON arrays.
std::vector<std::string> format_vector(const RVec& v);

}  // namespace aquafill
