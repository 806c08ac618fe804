#pragma once

#include <cmath>

#include <doctest.h>

#include "otreg/linalg.hpp"

namespace otreg::test {

inline double max_diff(const Vec& a, const Vec& b) { return (a - b).max_abs(); }
inline double max_diff(const Mat& a, const Mat& b) { return (a - b).max_abs(); }

#define CHECK_NEAR(a, b, tol) CHECK(std::abs(double(a) - double(b)) <= (tol))
#define CHECK_VEC_NEAR(a, b, tol) CHECK_MESSAGE(::otreg::test::max_diff((a), (b)) <= (tol), to_string(a), " vs ", to_string(b))
#define CHECK_MAT_NEAR(a, b, tol) CHECK_MESSAGE(::otreg::test::max_diff((a), (b)) <= (tol), to_string(a), " vs ", to_string(b))

}  // namespace otreg::test
