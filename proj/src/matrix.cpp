#include "pencilspec/matrix.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

namespace pencilspec {

namespace {

constexpr double kTwoPi = 6.28318530717958647692;

void require_same_order(int a, int b, const char* what) {
  if (a != b) {
    std::ostringstream msg;
    msg << what << ": order mismatch (" << a << " vs " << b << ")";
    fail(ErrorCode::dimension_mismatch, msg.str());
  }
}

// Elimination runs in extended precision: cofactor rows of nearly singular
// matrices scale like products of eigenvalue gaps, and the extra mantissa
// bits keep those small determinants meaningful.
long double eliminate_det(std::vector<long double>& w, int n) {
  long double det = 1.0L;
  for (int k = 0; k < n; ++k) {
    int pivot = k;
    long double best = std::fabs(w[static_cast<std::size_t>(k) * n + k]);
    for (int i = k + 1; i < n; ++i) {
      long double cand = std::fabs(w[static_cast<std::size_t>(i) * n + k]);
      if (cand > best) {
        best = cand;
        pivot = i;
      }
    }
    if (best == 0.0L) return 0.0L;
    if (pivot != k) {
      for (int j = 0; j < n; ++j)
        std::swap(w[static_cast<std::size_t>(pivot) * n + j], w[static_cast<std::size_t>(k) * n + j]);
      det = -det;
    }
    long double pv = w[static_cast<std::size_t>(k) * n + k];
    det *= pv;
    for (int i = k + 1; i < n; ++i) {
      long double f = w[static_cast<std::size_t>(i) * n + k] / pv;
      if (f == 0.0L) continue;
      for (int j = k + 1; j < n; ++j)
        w[static_cast<std::size_t>(i) * n + j] -= f * w[static_cast<std::size_t>(k) * n + j];
    }
  }
  return det;
}

long double det_by_elimination(const RealMatrix& a) {
  int n = a.order();
  std::vector<long double> w(static_cast<std::size_t>(n) * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) w[static_cast<std::size_t>(i) * n + j] = a(i, j);
  return eliminate_det(w, n);
}

}  // namespace

void Tolerances::validate() const {
  const double values[] = {sym_tol,      commute_tol,   eig_residual_tol,
                           distinct_tol, conj_pair_tol, root_tol};
  for (double v : values) {
    if (!(v > 0.0) || !std::isfinite(v))
      fail(ErrorCode::invalid_argument, "tolerances must be strictly positive and finite");
  }
}

RealMatrix::RealMatrix(int n) : n_(n) {
  if (n < 1) fail(ErrorCode::invalid_argument, "matrix order must be >= 1");
  e_.assign(static_cast<std::size_t>(n) * n, 0.0);
}

RealMatrix::RealMatrix(int n, std::vector<double> entries) : n_(n), e_(std::move(entries)) {
  if (n < 1) fail(ErrorCode::invalid_argument, "matrix order must be >= 1");
  if (e_.size() != static_cast<std::size_t>(n) * n)
    fail(ErrorCode::dimension_mismatch, "entry count does not match matrix order");
  if (!is_finite()) fail(ErrorCode::invalid_argument, "matrix entries must be finite");
}

RealMatrix RealMatrix::identity(int n) {
  RealMatrix m(n);
  for (int i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

RealMatrix RealMatrix::diagonal(const std::vector<double>& d) {
  RealMatrix m(static_cast<int>(d.size()));
  for (int i = 0; i < m.order(); ++i) m(i, i) = d[static_cast<std::size_t>(i)];
  return m;
}

RealMatrix RealMatrix::from_rows(const std::vector<std::vector<double>>& rows) {
  int n = static_cast<int>(rows.size());
  if (n < 1) fail(ErrorCode::invalid_argument, "matrix order must be >= 1");
  std::vector<double> flat;
  flat.reserve(static_cast<std::size_t>(n) * n);
  for (const auto& row : rows) {
    if (static_cast<int>(row.size()) != n)
      fail(ErrorCode::dimension_mismatch, "matrix rows must all have length n");
    flat.insert(flat.end(), row.begin(), row.end());
  }
  return RealMatrix(n, std::move(flat));
}

RealMatrix RealMatrix::transpose() const {
  RealMatrix t(n_);
  for (int i = 0; i < n_; ++i)
    for (int j = 0; j < n_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

double RealMatrix::max_abs() const {
  double m = 0.0;
  for (double v : e_) m = std::max(m, std::fabs(v));
  return m;
}

double RealMatrix::norm_inf() const {
  double worst = 0.0;
  for (int i = 0; i < n_; ++i) {
    double row = 0.0;
    for (int j = 0; j < n_; ++j) row += std::fabs((*this)(i, j));
    worst = std::max(worst, row);
  }
  return worst;
}

double RealMatrix::norm_frobenius() const {
  double s = 0.0;
  for (double v : e_) s += v * v;
  return std::sqrt(s);
}

bool RealMatrix::is_finite() const {
  for (double v : e_)
    if (!std::isfinite(v)) return false;
  return true;
}

SymmetricMatrix::SymmetricMatrix(RealMatrix m, double sym_tol) : m_(std::move(m)) {
  int n = m_.order();
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (std::fabs(m_(i, j) - m_(j, i)) > sym_tol) {
        std::ostringstream msg;
        msg << "matrix is not symmetric: |a[" << i << "][" << j << "] - a[" << j << "][" << i
            << "]| = " << std::fabs(m_(i, j) - m_(j, i)) << " exceeds " << sym_tol;
        fail(ErrorCode::non_symmetric, msg.str());
      }
}

ComplexMatrix::ComplexMatrix(int n) : n_(n) {
  if (n < 1) fail(ErrorCode::invalid_argument, "matrix order must be >= 1");
  e_.assign(static_cast<std::size_t>(n) * n, Complex{0.0, 0.0});
}

double ComplexMatrix::max_abs() const {
  double m = 0.0;
  for (const Complex& v : e_) m = std::max(m, std::abs(v));
  return m;
}

bool ComplexMatrix::is_finite() const {
  for (const Complex& v : e_)
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) return false;
  return true;
}

double dot(const std::vector<double>& a, const std::vector<double>& b) {
  if (a.size() != b.size()) fail(ErrorCode::dimension_mismatch, "dot: length mismatch");
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

double norm2(const std::vector<double>& v) { return std::sqrt(dot(v, v)); }

double max_abs(const std::vector<double>& v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::fabs(x));
  return m;
}

RealMatrix multiply(const RealMatrix& a, const RealMatrix& b) {
  require_same_order(a.order(), b.order(), "multiply");
  int n = a.order();
  RealMatrix c(n);
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < n; ++k) {
      double aik = a(i, k);
      if (aik == 0.0) continue;
      for (int j = 0; j < n; ++j) c(i, j) += aik * b(k, j);
    }
  return c;
}

std::vector<double> multiply(const RealMatrix& a, const std::vector<double>& x) {
  if (static_cast<int>(x.size()) != a.order())
    fail(ErrorCode::dimension_mismatch, "matrix-vector product: length mismatch");
  int n = a.order();
  std::vector<double> y(static_cast<std::size_t>(n), 0.0);
  for (int i = 0; i < n; ++i) {
    double s = 0.0;
    for (int j = 0; j < n; ++j) s += a(i, j) * x[static_cast<std::size_t>(j)];
    y[static_cast<std::size_t>(i)] = s;
  }
  return y;
}

RealMatrix operator+(const RealMatrix& a, const RealMatrix& b) {
  require_same_order(a.order(), b.order(), "add");
  RealMatrix c = a;
  for (int i = 0; i < a.order(); ++i)
    for (int j = 0; j < a.order(); ++j) c(i, j) += b(i, j);
  return c;
}

RealMatrix operator-(const RealMatrix& a, const RealMatrix& b) {
  require_same_order(a.order(), b.order(), "subtract");
  RealMatrix c = a;
  for (int i = 0; i < a.order(); ++i)
    for (int j = 0; j < a.order(); ++j) c(i, j) -= b(i, j);
  return c;
}

RealMatrix operator*(const RealMatrix& a, const RealMatrix& b) { return multiply(a, b); }

RealMatrix operator*(double s, const RealMatrix& a) {
  RealMatrix c = a;
  for (int i = 0; i < a.order(); ++i)
    for (int j = 0; j < a.order(); ++j) c(i, j) *= s;
  return c;
}

std::vector<double> operator*(const RealMatrix& a, const std::vector<double>& x) {
  return multiply(a, x);
}

double determinant(const RealMatrix& a) {
  int n = a.order();
  switch (n) {
    case 1:
      return a(0, 0);
    case 2:
      return a(0, 0) * a(1, 1) - a(0, 1) * a(1, 0);
    case 3:
      return a(0, 0) * (a(1, 1) * a(2, 2) - a(1, 2) * a(2, 1)) -
             a(0, 1) * (a(1, 0) * a(2, 2) - a(1, 2) * a(2, 0)) +
             a(0, 2) * (a(1, 0) * a(2, 1) - a(1, 1) * a(2, 0));
    default:
      return static_cast<double>(det_by_elimination(a));
  }
}

Complex determinant(const ComplexMatrix& a) {
  int n = a.order();
  std::vector<Complex> w(static_cast<std::size_t>(n) * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) w[static_cast<std::size_t>(i) * n + j] = a(i, j);
  Complex det{1.0, 0.0};
  for (int k = 0; k < n; ++k) {
    int pivot = k;
    double best = std::abs(w[static_cast<std::size_t>(k) * n + k]);
    for (int i = k + 1; i < n; ++i) {
      double cand = std::abs(w[static_cast<std::size_t>(i) * n + k]);
      if (cand > best) {
        best = cand;
        pivot = i;
      }
    }
    if (best == 0.0) return Complex{0.0, 0.0};
    if (pivot != k) {
      for (int j = 0; j < n; ++j)
        std::swap(w[static_cast<std::size_t>(pivot) * n + j], w[static_cast<std::size_t>(k) * n + j]);
      det = -det;
    }
    Complex pv = w[static_cast<std::size_t>(k) * n + k];
    det *= pv;
    for (int i = k + 1; i < n; ++i) {
      Complex f = w[static_cast<std::size_t>(i) * n + k] / pv;
      if (f == Complex{0.0, 0.0}) continue;
      for (int j = k + 1; j < n; ++j)
        w[static_cast<std::size_t>(i) * n + j] -= f * w[static_cast<std::size_t>(k) * n + j];
    }
  }
  return det;
}

double cofactor(const RealMatrix& a, int i, int j) {
  int n = a.order();
  if (i < 0 || i >= n || j < 0 || j >= n)
    fail(ErrorCode::index_out_of_range, "cofactor: index out of range");
  if (n == 1) return 1.0;
  RealMatrix minor(n - 1);
  for (int r = 0, mr = 0; r < n; ++r) {
    if (r == i) continue;
    for (int c = 0, mc = 0; c < n; ++c) {
      if (c == j) continue;
      minor(mr, mc) = a(r, c);
      ++mc;
    }
    ++mr;
  }
  double sign = ((i + j) % 2 == 0) ? 1.0 : -1.0;
  return sign * determinant(minor);
}

RealMatrix random_orthogonal(int n, std::uint64_t seed) {
  if (n < 1) fail(ErrorCode::invalid_argument, "matrix order must be >= 1");
  std::mt19937_64 rng(seed);
  RealMatrix q = RealMatrix::identity(n);
  for (int p = 0; p < n - 1; ++p) {
    for (int r = p + 1; r < n; ++r) {
      // Explicit bit mapping keeps the angle stream identical across
      // standard library implementations.
      double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
      double angle = kTwoPi * u;
      double c = std::cos(angle);
      double s = std::sin(angle);
      for (int i = 0; i < n; ++i) {
        double qp = q(i, p);
        double qr = q(i, r);
        q(i, p) = c * qp - s * qr;
        q(i, r) = s * qp + c * qr;
      }
    }
  }
  return q;
}

bool approx_eq(const RealMatrix& a, const RealMatrix& b, double tol) {
  require_same_order(a.order(), b.order(), "approx_eq");
  return (a - b).max_abs() <= tol;
}

RealMatrix solve(const RealMatrix& a, const RealMatrix& rhs) {
  require_same_order(a.order(), rhs.order(), "solve");
  int n = a.order();
  std::vector<long double> w(static_cast<std::size_t>(n) * n);
  std::vector<long double> x(static_cast<std::size_t>(n) * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      w[static_cast<std::size_t>(i) * n + j] = a(i, j);
      x[static_cast<std::size_t>(i) * n + j] = rhs(i, j);
    }
  for (int k = 0; k < n; ++k) {
    int pivot = k;
    long double best = std::fabs(w[static_cast<std::size_t>(k) * n + k]);
    for (int i = k + 1; i < n; ++i) {
      long double cand = std::fabs(w[static_cast<std::size_t>(i) * n + k]);
      if (cand > best) {
        best = cand;
        pivot = i;
      }
    }
    if (best == 0.0L) fail(ErrorCode::singular_matrix, "solve: matrix is singular");
    if (pivot != k) {
      for (int j = 0; j < n; ++j) {
        std::swap(w[static_cast<std::size_t>(pivot) * n + j], w[static_cast<std::size_t>(k) * n + j]);
        std::swap(x[static_cast<std::size_t>(pivot) * n + j], x[static_cast<std::size_t>(k) * n + j]);
      }
    }
    long double pv = w[static_cast<std::size_t>(k) * n + k];
    for (int i = k + 1; i < n; ++i) {
      long double f = w[static_cast<std::size_t>(i) * n + k] / pv;
      if (f == 0.0L) continue;
      for (int j = k + 1; j < n; ++j)
        w[static_cast<std::size_t>(i) * n + j] -= f * w[static_cast<std::size_t>(k) * n + j];
      for (int j = 0; j < n; ++j)
        x[static_cast<std::size_t>(i) * n + j] -= f * x[static_cast<std::size_t>(k) * n + j];
    }
  }
  RealMatrix out(n);
  for (int col = 0; col < n; ++col) {
    for (int i = n - 1; i >= 0; --i) {
      long double s = x[static_cast<std::size_t>(i) * n + col];
      for (int j = i + 1; j < n; ++j)
        s -= w[static_cast<std::size_t>(i) * n + j] * out(j, col);
      out(i, col) = static_cast<double>(s / w[static_cast<std::size_t>(i) * n + i]);
    }
  }
  return out;
}

RealMatrix conjugate_by_orthogonal(const RealMatrix& q, const std::vector<double>& d) {
  int n = q.order();
  if (static_cast<int>(d.size()) != n)
    fail(ErrorCode::dimension_mismatch, "conjugate_by_orthogonal: length mismatch");
  RealMatrix out(n);
  // out(i,j) = sum_k d_k q(i,k) q(j,k); the (i,j) and (j,i) sums are the
  // same floating-point expression, so the result is exactly symmetric.
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) {
      double s = 0.0;
      for (int k = 0; k < n; ++k) s += d[static_cast<std::size_t>(k)] * q(i, k) * q(j, k);
      out(i, j) = s;
      out(j, i) = s;
    }
  return out;
}

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::dimension_mismatch: return "dimension_mismatch";
    case ErrorCode::index_out_of_range: return "index_out_of_range";
    case ErrorCode::invalid_argument: return "invalid_argument";
    case ErrorCode::non_symmetric: return "non_symmetric";
    case ErrorCode::singular_matrix: return "singular_matrix";
    case ErrorCode::degenerate_eigenvalue: return "degenerate_eigenvalue";
    case ErrorCode::convergence_failure: return "convergence_failure";
    case ErrorCode::singular_mass: return "singular_mass";
    case ErrorCode::non_commuting: return "non_commuting";
    case ErrorCode::shared_basis_violation: return "shared_basis_violation";
    case ErrorCode::real_modes: return "real_modes";
    case ErrorCode::odd_length: return "odd_length";
    case ErrorCode::unpaired_value: return "unpaired_value";
    case ErrorCode::real_value: return "real_value";
    case ErrorCode::duplicate_eigenvalue: return "duplicate_eigenvalue";
    case ErrorCode::not_orthogonal: return "not_orthogonal";
    case ErrorCode::non_positive_mass: return "non_positive_mass";
    case ErrorCode::no_matching: return "no_matching";
    case ErrorCode::unsupported_order: return "unsupported_order";
    case ErrorCode::parse_error: return "parse_error";
    case ErrorCode::io_error: return "io_error";
  }
  return "unknown";
}

}  // namespace pencilspec
