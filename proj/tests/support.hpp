#pragma once

// Shared generators and reference routines for the test suites. The
// reference implementations here are deliberately independent of the
// library code paths they check.

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include "pencilspec/matrix.hpp"
#include "pencilspec/spectral.hpp"

namespace testsupport {

using pencilspec::Complex;
using pencilspec::RealMatrix;
using pencilspec::SymmetricMatrix;

// Explicit bit mapping so the draw sequence is identical on every
// standard library implementation.
inline double unit_double(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

inline double uniform(std::mt19937_64& rng, double lo, double hi) {
  return lo + (hi - lo) * unit_double(rng);
}

inline RealMatrix random_symmetric(int n, std::mt19937_64& rng) {
  RealMatrix a(n);
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) {
      double v = uniform(rng, -1.0, 1.0);
      a(i, j) = v;
      a(j, i) = v;
    }
  return a;
}

inline RealMatrix random_dense(int n, std::mt19937_64& rng) {
  RealMatrix a(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) a(i, j) = uniform(rng, -1.0, 1.0);
  return a;
}

inline double min_eigen_gap(const std::vector<double>& sorted_values) {
  double gap = std::numeric_limits<double>::infinity();
  for (std::size_t i = 1; i < sorted_values.size(); ++i)
    gap = std::min(gap, sorted_values[i] - sorted_values[i - 1]);
  return gap;
}

// Random symmetric matrix whose spectrum has gaps above min_gap; close
// eigenvalues are split apart with progressively larger diagonal ramps.
inline SymmetricMatrix gapped_random_symmetric(int n, std::mt19937_64& rng, double min_gap) {
  RealMatrix a = random_symmetric(n, rng);
  for (int attempt = 0;; ++attempt) {
    SymmetricMatrix candidate(a);
    std::vector<double> values = pencilspec::symmetric_eigenvalues(candidate);
    if (n == 1 || min_eigen_gap(values) > min_gap) return candidate;
    double delta = min_gap * 10.0 * (attempt + 1);
    for (int i = 0; i < n; ++i) a(i, i) += delta * (i + 1);
  }
}

// Plain triple loop, kept separate from the library multiply.
inline RealMatrix reference_multiply(const RealMatrix& a, const RealMatrix& b) {
  int n = a.order();
  RealMatrix c(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      double s = 0.0;
      for (int k = 0; k < n; ++k) s += a(i, k) * b(k, j);
      c(i, j) = s;
    }
  return c;
}

inline bool close(double a, double b, double tol) { return std::fabs(a - b) <= tol; }

inline bool close(Complex a, Complex b, double tol) { return std::abs(a - b) <= tol; }

}  // namespace testsupport
