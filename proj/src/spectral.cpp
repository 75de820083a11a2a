#include "pencilspec/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

namespace pencilspec {

namespace {

constexpr int kMaxSweeps = 100;
constexpr double kOffDiagonalFactor = 1e-12;

double off_diagonal_frobenius(const RealMatrix& a) {
  int n = a.order();
  double s = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) s += a(i, j) * a(i, j);
  return std::sqrt(2.0 * s);
}

// Flip so the largest-magnitude entry (first on ties) is positive.
void canonicalize_sign(std::vector<double>& v) {
  std::size_t idx = 0;
  double best = -1.0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (std::fabs(v[i]) > best) {
      best = std::fabs(v[i]);
      idx = i;
    }
  }
  if (v[idx] < 0.0)
    for (double& x : v) x = -x;
}

}  // namespace

JacobiEigensystem jacobi_eigensystem(const SymmetricMatrix& a) {
  int n = a.order();
  RealMatrix work = a.matrix();
  // Work on the exactly symmetric average so both triangles agree.
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      double avg = 0.5 * (work(i, j) + work(j, i));
      work(i, j) = avg;
      work(j, i) = avg;
    }
  RealMatrix v = RealMatrix::identity(n);
  double threshold = kOffDiagonalFactor * work.norm_frobenius();

  int sweep = 0;
  while (off_diagonal_frobenius(work) > threshold) {
    if (sweep >= kMaxSweeps)
      fail(ErrorCode::convergence_failure,
           "jacobi_eigensystem: no convergence after 100 sweeps");
    ++sweep;
    for (int p = 0; p < n - 1; ++p) {
      for (int q = p + 1; q < n; ++q) {
        double apq = work(p, q);
        if (apq == 0.0) continue;
        double app = work(p, p);
        double aqq = work(q, q);
        double tau = (aqq - app) / (2.0 * apq);
        double t = (tau >= 0.0) ? 1.0 / (tau + std::sqrt(1.0 + tau * tau))
                                : -1.0 / (-tau + std::sqrt(1.0 + tau * tau));
        double c = 1.0 / std::sqrt(1.0 + t * t);
        double s = t * c;
        work(p, p) = app - t * apq;
        work(q, q) = aqq + t * apq;
        work(p, q) = 0.0;
        work(q, p) = 0.0;
        for (int i = 0; i < n; ++i) {
          if (i == p || i == q) continue;
          double aip = work(i, p);
          double aiq = work(i, q);
          work(i, p) = c * aip - s * aiq;
          work(p, i) = work(i, p);
          work(i, q) = s * aip + c * aiq;
          work(q, i) = work(i, q);
        }
        for (int i = 0; i < n; ++i) {
          double vip = v(i, p);
          double viq = v(i, q);
          v(i, p) = c * vip - s * viq;
          v(i, q) = s * vip + c * viq;
        }
      }
    }
  }

  std::vector<int> index(static_cast<std::size_t>(n));
  std::iota(index.begin(), index.end(), 0);
  std::sort(index.begin(), index.end(),
            [&work](int lhs, int rhs) { return work(lhs, lhs) < work(rhs, rhs); });

  JacobiEigensystem out{std::vector<double>(static_cast<std::size_t>(n)), RealMatrix(n), sweep};
  for (int k = 0; k < n; ++k) {
    int src = index[static_cast<std::size_t>(k)];
    out.values[static_cast<std::size_t>(k)] = work(src, src);
    std::vector<double> column(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) column[static_cast<std::size_t>(i)] = v(i, src);
    canonicalize_sign(column);
    for (int i = 0; i < n; ++i) out.vectors(i, k) = column[static_cast<std::size_t>(i)];
  }
  return out;
}

std::vector<double> symmetric_eigenvalues(const SymmetricMatrix& a) {
  return jacobi_eigensystem(a).values;
}

EigenPair cofactor_eigenvector(const SymmetricMatrix& a, double lambda, const Tolerances& tol) {
  tol.validate();
  int n = a.order();
  if (n == 1) return EigenPair{lambda, {1.0}, 0};

  RealMatrix b = a.matrix();
  for (int i = 0; i < n; ++i) b(i, i) -= lambda;

  std::vector<double> best;
  double best_norm = -1.0;
  int best_row = -1;
  for (int g = 0; g < n; ++g) {
    std::vector<double> row(static_cast<std::size_t>(n));
    for (int j = 0; j < n; ++j) row[static_cast<std::size_t>(j)] = cofactor(b, g, j);
    double nrm = norm2(row);
    if (nrm > best_norm) {
      best_norm = nrm;
      best_row = g;
      best = std::move(row);
    }
  }

  double scale = a.matrix().max_abs();
  double floor = tol.root_tol * std::pow(scale, n - 1);
  if (best_norm <= floor) {
    std::ostringstream msg;
    msg << "cofactor_eigenvector: every cofactor row of a - lambda I is negligible at lambda = "
        << lambda << "; the eigenvalue is not simple";
    fail(ErrorCode::degenerate_eigenvalue, msg.str());
  }

  for (double& x : best) x /= best_norm;
  canonicalize_sign(best);

  std::vector<double> residual = multiply(a.matrix(), best);
  for (int i = 0; i < n; ++i) residual[static_cast<std::size_t>(i)] -= lambda * best[static_cast<std::size_t>(i)];
  if (max_abs(residual) > tol.eig_residual_tol * scale) {
    std::ostringstream msg;
    msg << "cofactor_eigenvector: residual " << max_abs(residual)
        << " exceeds tolerance; lambda = " << lambda << " is not an eigenvalue of the matrix";
    fail(ErrorCode::invalid_argument, msg.str());
  }

  return EigenPair{lambda, std::move(best), best_row};
}

SymmetricMatrix projector(const EigenPair& pair) {
  int n = static_cast<int>(pair.vector.size());
  if (std::fabs(norm2(pair.vector) - 1.0) > 1e-9)
    fail(ErrorCode::invalid_argument, "projector: eigenvector is not unit norm");
  RealMatrix p(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      p(i, j) = pair.vector[static_cast<std::size_t>(i)] * pair.vector[static_cast<std::size_t>(j)];
  return SymmetricMatrix(std::move(p));
}

SpectralDecomposition spectral_decompose(const SymmetricMatrix& a, const Tolerances& tol) {
  tol.validate();
  std::vector<double> values = symmetric_eigenvalues(a);
  for (std::size_t k = 1; k < values.size(); ++k) {
    if (values[k] - values[k - 1] <= tol.distinct_tol) {
      std::ostringstream msg;
      msg << "spectral_decompose: eigenvalues " << values[k - 1] << " and " << values[k]
          << " are closer than " << tol.distinct_tol;
      fail(ErrorCode::degenerate_eigenvalue, msg.str());
    }
  }

  std::vector<EigenPair> pairs;
  std::vector<SymmetricMatrix> projectors;
  pairs.reserve(values.size());
  projectors.reserve(values.size());
  for (double lambda : values) {
    pairs.push_back(cofactor_eigenvector(a, lambda, tol));
    projectors.push_back(projector(pairs.back()));
  }

  SpectralDecomposition d{a, std::move(pairs), std::move(projectors)};
  RealMatrix sum(a.order());
  for (std::size_t k = 0; k < d.pairs.size(); ++k)
    sum = sum + d.pairs[k].lambda * d.projectors[k].matrix();
  if ((sum - a.matrix()).max_abs() > 1e-8 * std::max(a.matrix().max_abs(), 1e-300))
    fail(ErrorCode::convergence_failure,
         "spectral_decompose: projector expansion does not reproduce the input");
  return d;
}

SymmetricMatrix reconstruct(const SpectralDecomposition& d) {
  RealMatrix sum(d.order());
  for (std::size_t k = 0; k < d.pairs.size(); ++k)
    sum = sum + d.pairs[k].lambda * d.projectors[k].matrix();
  return SymmetricMatrix(std::move(sum));
}

SymmetricMatrix spectral_power(const SpectralDecomposition& d, int k) {
  if (k < 0) fail(ErrorCode::invalid_argument, "spectral_power: exponent must be >= 0");
  RealMatrix sum(d.order());
  for (std::size_t m = 0; m < d.pairs.size(); ++m)
    sum = sum + std::pow(d.pairs[m].lambda, k) * d.projectors[m].matrix();
  return SymmetricMatrix(std::move(sum));
}

std::vector<double> expand_in_eigenbasis(const SpectralDecomposition& d,
                                         const std::vector<double>& y) {
  if (static_cast<int>(y.size()) != d.order())
    fail(ErrorCode::dimension_mismatch, "expand_in_eigenbasis: vector length mismatch");
  std::vector<double> coeffs(y.size());
  for (std::size_t k = 0; k < d.pairs.size(); ++k) coeffs[k] = dot(d.pairs[k].vector, y);
  return coeffs;
}

}  // namespace pencilspec
