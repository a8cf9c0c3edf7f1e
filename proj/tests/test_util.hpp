#ifndef SEQGD_TEST_UTIL_HPP
#define SEQGD_TEST_UTIL_HPP

#include <cmath>

// Absolute-tolerance comparison; doctest's Approx is relative-only.
inline bool near(double a, double b, double abs_tol) { return std::abs(a - b) <= abs_tol; }

#endif
