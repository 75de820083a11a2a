#pragma once

#include <vector>

#include "pencilspec/pencil.hpp"

namespace pencilspec {

/// det(lambda^2 M + lambda C + K) as a degree-2n polynomial, coefficients
/// stored ascending (constant term first).
struct DetPolynomial {
  std::vector<double> coefficients;

  int degree() const { return static_cast<int>(coefficients.size()) - 1; }
  double evaluate(double x) const;
  Complex evaluate(Complex z) const;
};

/// Builds the determinant polynomial by evaluating det P(mu) at 2n+1
/// points on a circle at the estimated spectral radius and inverting the
/// resulting discrete Fourier transform. Shares no eigen-machinery with
/// the modal path. Orders above 16 are rejected as ill-conditioned.
DetPolynomial det_poly(const QuadraticPencil& p, const Tolerances& tol = {});

/// All complex roots (with multiplicity) by Durand-Kerner simultaneous
/// iteration from deterministic perturbed-circle starting points, each
/// root polished with a few Newton steps.
std::vector<Complex> poly_roots(const DetPolynomial& poly, const Tolerances& tol = {});

/// det_poly followed by poly_roots: the full 2n-element root multiset.
std::vector<Complex> oracle_spectrum(const QuadraticPencil& p, const Tolerances& tol = {});

struct MatchResult {
  std::vector<int> assignment;  // assignment[i] = index into b paired with a[i]
  double worst;                 // largest matched distance
};

struct MatchReport {
  bool ok;
  MatchResult result;
};

/// Non-throwing matching: sorted pairing first, then greedy nearest
/// neighbor, then (for lists of at most 8) exhaustive assignment.
MatchReport multiset_match_report(const std::vector<Complex>& a, const std::vector<Complex>& b,
                                  double tol);

/// Pairs the two multisets within tol or throws no_matching with the
/// worst residual of the best pairing found.
MatchResult multiset_match(const std::vector<Complex>& a, const std::vector<Complex>& b,
                           double tol);

}  // namespace pencilspec
