#pragma once

#include <boost/multiprecision/cpp_int.hpp>

namespace design2 {

// Exact arbitrary-precision rational; ensemble averages and mixing
// weights are stated as exact equalities, never float comparisons.
using Rational = boost::multiprecision::cpp_rational;

}  // namespace design2
