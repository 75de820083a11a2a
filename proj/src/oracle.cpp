#include "pencilspec/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

namespace pencilspec {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr int kMaxOracleOrder = 16;
constexpr int kMaxIterations = 500;
constexpr int kPolishSteps = 4;

using ComplexLD = std::complex<long double>;

// Determinant in extended precision at a complex argument. High-degree
// coefficient recovery needs samples good to more than double precision.
ComplexLD det_at(const QuadraticPencil& p, ComplexLD mu) {
  int n = p.order();
  ComplexLD mu2 = mu * mu;
  std::vector<ComplexLD> w(static_cast<std::size_t>(n) * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      w[static_cast<std::size_t>(i) * n + j] =
          mu2 * static_cast<long double>(p.mass()(i, j)) +
          mu * static_cast<long double>(p.damping()(i, j)) +
          static_cast<long double>(p.stiffness()(i, j));
  ComplexLD det{1.0L, 0.0L};
  for (int k = 0; k < n; ++k) {
    int pivot = k;
    long double best = std::abs(w[static_cast<std::size_t>(k) * n + k]);
    for (int i = k + 1; i < n; ++i) {
      long double cand = std::abs(w[static_cast<std::size_t>(i) * n + k]);
      if (cand > best) {
        best = cand;
        pivot = i;
      }
    }
    if (best == 0.0L) return ComplexLD{0.0L, 0.0L};
    if (pivot != k) {
      for (int j = 0; j < n; ++j)
        std::swap(w[static_cast<std::size_t>(pivot) * n + j], w[static_cast<std::size_t>(k) * n + j]);
      det = -det;
    }
    ComplexLD pv = w[static_cast<std::size_t>(k) * n + k];
    det *= pv;
    for (int i = k + 1; i < n; ++i) {
      ComplexLD f = w[static_cast<std::size_t>(i) * n + k] / pv;
      if (f == ComplexLD{0.0L, 0.0L}) continue;
      for (int j = k + 1; j < n; ++j)
        w[static_cast<std::size_t>(i) * n + j] -= f * w[static_cast<std::size_t>(k) * n + j];
    }
  }
  return det;
}

Complex horner(const std::vector<double>& coeffs, Complex z) {
  Complex acc{0.0, 0.0};
  for (std::size_t i = coeffs.size(); i-- > 0;) acc = acc * z + coeffs[i];
  return acc;
}

Complex horner_derivative(const std::vector<double>& coeffs, Complex z) {
  Complex acc{0.0, 0.0};
  for (std::size_t i = coeffs.size(); i-- > 1;)
    acc = acc * z + static_cast<double>(i) * coeffs[i];
  return acc;
}

}  // namespace

double DetPolynomial::evaluate(double x) const {
  double acc = 0.0;
  for (std::size_t i = coefficients.size(); i-- > 0;) acc = acc * x + coefficients[i];
  return acc;
}

Complex DetPolynomial::evaluate(Complex z) const { return horner(coefficients, z); }

DetPolynomial det_poly(const QuadraticPencil& p, const Tolerances& tol) {
  tol.validate();
  int n = p.order();
  if (n > kMaxOracleOrder) {
    std::ostringstream msg;
    msg << "det_poly: interpolation is ill-conditioned beyond order " << kMaxOracleOrder
        << " (got " << n << ")";
    fail(ErrorCode::unsupported_order, msg.str());
  }

  // Sampling radius: geometric blend of a rigorous root bound for the
  // monic form with the geometric mean of the root magnitudes (from the
  // constant coefficient det K~). Sampling near the root scale keeps the
  // determinant's dynamic range small enough for accurate coefficients;
  // a wide real interval would bury the low-order terms in edge noise.
  RealMatrix c_tilde = solve(p.mass().matrix(), p.damping().matrix());
  RealMatrix k_tilde = solve(p.mass().matrix(), p.stiffness().matrix());
  double b = std::min(c_tilde.norm_inf(), c_tilde.norm_frobenius());
  double g = std::min(k_tilde.norm_inf(), k_tilde.norm_frobenius());
  double bound = 0.5 * (b + std::sqrt(b * b + 4.0 * g));
  double geo_mean = std::pow(std::fabs(determinant(k_tilde)), 1.0 / (2.0 * n));
  geo_mean = std::max(geo_mean, bound / 8.0);
  double rho = std::max(std::sqrt(geo_mean * std::max(bound, geo_mean)), 1e-6);

  // Roots of unity on |mu| = rho: the interpolation matrix is a scaled DFT,
  // so the coefficients come from one inverse transform.
  int m = 2 * n + 1;
  std::vector<ComplexLD> samples(static_cast<std::size_t>(m));
  for (int j = 0; j < m; ++j) {
    long double angle = 2.0L * static_cast<long double>(kPi) * j / m;
    ComplexLD mu = static_cast<long double>(rho) * ComplexLD{std::cos(angle), std::sin(angle)};
    samples[static_cast<std::size_t>(j)] = det_at(p, mu);
  }

  DetPolynomial poly{std::vector<double>(static_cast<std::size_t>(m))};
  long double rho_power = 1.0L;
  for (int i = 0; i < m; ++i) {
    ComplexLD acc{0.0L, 0.0L};
    for (int j = 0; j < m; ++j) {
      long double angle = -2.0L * static_cast<long double>(kPi) * i * j / m;
      acc += samples[static_cast<std::size_t>(j)] * ComplexLD{std::cos(angle), std::sin(angle)};
    }
    // The polynomial is real, so the transform's imaginary parts cancel.
    poly.coefficients[static_cast<std::size_t>(i)] =
        static_cast<double>(acc.real() / (m * rho_power));
    rho_power *= rho;
  }

  double det_m = determinant(p.mass().matrix());
  if (std::fabs(poly.coefficients.back() - det_m) > 1e-8 * std::fabs(det_m))
    fail(ErrorCode::convergence_failure,
         "det_poly: leading coefficient disagrees with det(M); interpolation lost accuracy");
  return poly;
}

std::vector<Complex> poly_roots(const DetPolynomial& poly, const Tolerances& tol) {
  tol.validate();
  std::vector<double> coeffs = poly.coefficients;
  if (coeffs.empty() || coeffs.back() == 0.0)
    fail(ErrorCode::invalid_argument, "poly_roots: leading coefficient must be nonzero");

  std::vector<Complex> roots;
  // Exact zero constant terms are roots at the origin; deflate them so the
  // iteration never has to resolve a coincident cluster there.
  while (coeffs.size() > 1 && coeffs.front() == 0.0) {
    roots.push_back(Complex{0.0, 0.0});
    coeffs.erase(coeffs.begin());
  }
  int degree = static_cast<int>(coeffs.size()) - 1;
  if (degree == 0) return roots;

  std::vector<double> monic(coeffs.size());
  for (std::size_t i = 0; i < coeffs.size(); ++i) monic[i] = coeffs[i] / coeffs.back();

  double radius = 0.0;
  for (int i = 0; i < degree; ++i) radius = std::max(radius, std::fabs(monic[static_cast<std::size_t>(i)]));
  radius += 1.0;

  // Deterministic perturbed circle: spread radii and a fixed angular offset
  // keep the start asymmetric with respect to the real axis.
  std::vector<Complex> z(static_cast<std::size_t>(degree));
  for (int k = 0; k < degree; ++k) {
    double r = radius * (0.5 + 0.5 * (k + 1.0) / degree);
    double theta = 2.0 * kPi * k / degree + 0.4;
    z[static_cast<std::size_t>(k)] = Complex{r * std::cos(theta), r * std::sin(theta)};
  }

  bool converged = false;
  for (int iter = 0; iter < kMaxIterations && !converged; ++iter) {
    double max_update = 0.0;
    for (int k = 0; k < degree; ++k) {
      Complex denom{1.0, 0.0};
      for (int j = 0; j < degree; ++j) {
        if (j == k) continue;
        denom *= z[static_cast<std::size_t>(k)] - z[static_cast<std::size_t>(j)];
      }
      if (std::abs(denom) == 0.0) {
        // Coincident iterates: nudge deterministically and retry next pass.
        z[static_cast<std::size_t>(k)] += Complex{1e-6 * radius, 1e-6 * radius};
        max_update = radius;
        continue;
      }
      Complex update = horner(monic, z[static_cast<std::size_t>(k)]) / denom;
      z[static_cast<std::size_t>(k)] -= update;
      max_update = std::max(max_update, std::abs(update));
    }
    converged = max_update <= tol.root_tol;
  }
  if (!converged)
    fail(ErrorCode::convergence_failure,
         "poly_roots: Durand-Kerner did not converge within 500 iterations");

  for (int k = 0; k < degree; ++k) {
    Complex& zk = z[static_cast<std::size_t>(k)];
    for (int step = 0; step < kPolishSteps; ++step) {
      Complex dp = horner_derivative(monic, zk);
      if (std::abs(dp) == 0.0) break;
      zk -= horner(monic, zk) / dp;
    }
  }

  roots.insert(roots.end(), z.begin(), z.end());
  return roots;
}

std::vector<Complex> oracle_spectrum(const QuadraticPencil& p, const Tolerances& tol) {
  return poly_roots(det_poly(p, tol), tol);
}

namespace {

bool complex_less(const Complex& a, const Complex& b) {
  if (a.real() != b.real()) return a.real() < b.real();
  return a.imag() < b.imag();
}

MatchResult sorted_pairing(const std::vector<Complex>& a, const std::vector<Complex>& b) {
  std::size_t m = a.size();
  std::vector<int> ia(m), ib(m);
  std::iota(ia.begin(), ia.end(), 0);
  std::iota(ib.begin(), ib.end(), 0);
  std::sort(ia.begin(), ia.end(), [&a](int l, int r) { return complex_less(a[static_cast<std::size_t>(l)], a[static_cast<std::size_t>(r)]); });
  std::sort(ib.begin(), ib.end(), [&b](int l, int r) { return complex_less(b[static_cast<std::size_t>(l)], b[static_cast<std::size_t>(r)]); });
  MatchResult res{std::vector<int>(m), 0.0};
  for (std::size_t k = 0; k < m; ++k) {
    res.assignment[static_cast<std::size_t>(ia[k])] = ib[k];
    res.worst = std::max(res.worst, std::abs(a[static_cast<std::size_t>(ia[k])] - b[static_cast<std::size_t>(ib[k])]));
  }
  return res;
}

MatchResult greedy_pairing(const std::vector<Complex>& a, const std::vector<Complex>& b) {
  std::size_t m = a.size();
  std::vector<bool> used(m, false);
  MatchResult res{std::vector<int>(m, -1), 0.0};
  for (std::size_t i = 0; i < m; ++i) {
    int best = -1;
    double best_dist = 0.0;
    for (std::size_t j = 0; j < m; ++j) {
      if (used[j]) continue;
      double d = std::abs(a[i] - b[j]);
      if (best < 0 || d < best_dist) {
        best = static_cast<int>(j);
        best_dist = d;
      }
    }
    used[static_cast<std::size_t>(best)] = true;
    res.assignment[i] = best;
    res.worst = std::max(res.worst, best_dist);
  }
  return res;
}

MatchResult exhaustive_pairing(const std::vector<Complex>& a, const std::vector<Complex>& b) {
  std::size_t m = a.size();
  std::vector<int> perm(m);
  std::iota(perm.begin(), perm.end(), 0);
  MatchResult best{{}, 0.0};
  bool have_best = false;
  do {
    double worst = 0.0;
    for (std::size_t i = 0; i < m; ++i)
      worst = std::max(worst, std::abs(a[i] - b[static_cast<std::size_t>(perm[i])]));
    if (!have_best || worst < best.worst) {
      best.assignment = perm;
      best.worst = worst;
      have_best = true;
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

}  // namespace

MatchReport multiset_match_report(const std::vector<Complex>& a, const std::vector<Complex>& b,
                                  double tol) {
  if (a.size() != b.size())
    fail(ErrorCode::dimension_mismatch, "multiset_match: lists differ in length");
  if (a.empty()) return MatchReport{true, MatchResult{{}, 0.0}};

  MatchResult best = sorted_pairing(a, b);
  if (best.worst <= tol) return MatchReport{true, best};

  MatchResult greedy = greedy_pairing(a, b);
  if (greedy.worst < best.worst) best = greedy;
  if (best.worst <= tol) return MatchReport{true, best};

  if (a.size() <= 8) {
    MatchResult exact = exhaustive_pairing(a, b);
    if (exact.worst < best.worst) best = exact;
  }
  return MatchReport{best.worst <= tol, best};
}

MatchResult multiset_match(const std::vector<Complex>& a, const std::vector<Complex>& b,
                           double tol) {
  MatchReport report = multiset_match_report(a, b, tol);
  if (!report.ok) {
    std::ostringstream msg;
    msg << "multisets do not match within " << tol << ": worst residual " << report.result.worst;
    fail(ErrorCode::no_matching, msg.str());
  }
  return report.result;
}

}  // namespace pencilspec
