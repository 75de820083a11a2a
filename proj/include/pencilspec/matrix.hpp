#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <vector>

#include "pencilspec/errors.hpp"

namespace pencilspec {

using Complex = std::complex<double>;

// Numerical tolerances used throughout the library. Every solver entry
// point takes one of these, so a caller can tighten or relax the whole
// pipeline from a single place.
struct Tolerances {
  double sym_tol = 1e-9;           // max allowed |a_ij - a_ji|
  double commute_tol = 1e-8;       // commutator bound, relative to norm product
  double eig_residual_tol = 1e-8;  // ||A x - lambda x|| bound, relative to ||A||
  double distinct_tol = 1e-7;      // minimum eigenvalue separation
  double conj_pair_tol = 1e-9;     // absolute conjugate-matching radius
  double root_tol = 1e-10;         // root-iteration stop / singularity floor

  void validate() const;  // throws invalid_argument unless all positive
};

/// Dense square real matrix with value semantics, row-major storage.
/// Library operations never mutate their inputs; they return fresh values.
class RealMatrix {
 public:
  explicit RealMatrix(int n);                  // zero-filled
  RealMatrix(int n, std::vector<double> entries);

  static RealMatrix identity(int n);
  static RealMatrix diagonal(const std::vector<double>& d);
  static RealMatrix from_rows(const std::vector<std::vector<double>>& rows);

  int order() const { return n_; }
  double operator()(int i, int j) const { return e_[static_cast<std::size_t>(i) * n_ + j]; }
  double& operator()(int i, int j) { return e_[static_cast<std::size_t>(i) * n_ + j]; }
  const std::vector<double>& data() const { return e_; }

  RealMatrix transpose() const;
  double max_abs() const;        // entrywise max |a_ij|
  double norm_inf() const;       // induced infinity norm (max abs row sum)
  double norm_frobenius() const;
  bool is_finite() const;

 private:
  int n_;
  std::vector<double> e_;
};

/// A RealMatrix checked against |a_ij - a_ji| <= sym_tol at construction.
class SymmetricMatrix {
 public:
  explicit SymmetricMatrix(RealMatrix m, double sym_tol = Tolerances{}.sym_tol);

  const RealMatrix& matrix() const { return m_; }
  int order() const { return m_.order(); }
  double operator()(int i, int j) const { return m_(i, j); }

 private:
  RealMatrix m_;
};

/// Dense square complex matrix (pencil evaluation at complex arguments).
class ComplexMatrix {
 public:
  explicit ComplexMatrix(int n);

  int order() const { return n_; }
  Complex operator()(int i, int j) const { return e_[static_cast<std::size_t>(i) * n_ + j]; }
  Complex& operator()(int i, int j) { return e_[static_cast<std::size_t>(i) * n_ + j]; }
  double max_abs() const;
  bool is_finite() const;

 private:
  int n_;
  std::vector<Complex> e_;
};

// --- vector helpers ---------------------------------------------------

double dot(const std::vector<double>& a, const std::vector<double>& b);
double norm2(const std::vector<double>& v);
double max_abs(const std::vector<double>& v);

// --- core operations --------------------------------------------------

RealMatrix multiply(const RealMatrix& a, const RealMatrix& b);
std::vector<double> multiply(const RealMatrix& a, const std::vector<double>& x);

RealMatrix operator+(const RealMatrix& a, const RealMatrix& b);
RealMatrix operator-(const RealMatrix& a, const RealMatrix& b);
RealMatrix operator*(const RealMatrix& a, const RealMatrix& b);
RealMatrix operator*(double s, const RealMatrix& a);
std::vector<double> operator*(const RealMatrix& a, const std::vector<double>& x);

/// Determinant: closed forms up to order 3, partial-pivot elimination above.
/// Singular input simply yields a value near zero.
double determinant(const RealMatrix& a);
Complex determinant(const ComplexMatrix& a);

/// Signed minor (-1)^(i+j) det(a with row i and column j removed).
/// Indices are zero-based. Defined as 1 for order-1 matrices.
double cofactor(const RealMatrix& a, int i, int j);

/// Deterministic orthogonal matrix: product of n(n-1)/2 Givens rotations
/// with angles drawn from a seeded generator. ||Q Q' - I||_max <= 1e-12.
RealMatrix random_orthogonal(int n, std::uint64_t seed);

/// True iff the entrywise max-abs difference is <= tol.
bool approx_eq(const RealMatrix& a, const RealMatrix& b, double tol);

/// Solves a X = rhs by LU with partial pivoting. Throws singular_matrix
/// on pivot breakdown.
RealMatrix solve(const RealMatrix& a, const RealMatrix& rhs);

/// Q diag(d) Q'. Result is bitwise symmetric by construction.
RealMatrix conjugate_by_orthogonal(const RealMatrix& q, const std::vector<double>& d);

}  // namespace pencilspec
