#pragma once

#include <vector>

#include "pencilspec/matrix.hpp"

namespace pencilspec {

/// One eigenvalue of a symmetric matrix together with the unit eigenvector
/// built from a row of cofactors of A - lambda I. g_row records which row
/// the construction used (zero-based).
struct EigenPair {
  double lambda;
  std::vector<double> vector;
  int g_row;
};

/// Eigenvalues (ascending) and the accumulated rotation basis from cyclic
/// Jacobi sweeps. Column k of `vectors` pairs with values[k].
struct JacobiEigensystem {
  std::vector<double> values;
  RealMatrix vectors;
  int sweeps;
};

/// Full decomposition: eigenpairs sorted by ascending eigenvalue plus the
/// rank-one projectors built from them.
struct SpectralDecomposition {
  SymmetricMatrix source;
  std::vector<EigenPair> pairs;
  std::vector<SymmetricMatrix> projectors;

  int order() const { return source.order(); }
};

/// Cyclic Jacobi sweeps until the off-diagonal Frobenius norm falls below
/// 1e-12 * ||a||_F; at most 100 sweeps, then convergence_failure.
JacobiEigensystem jacobi_eigensystem(const SymmetricMatrix& a);

/// The sorted real roots of det(a - lambda I) = 0, via Jacobi sweeps.
std::vector<double> symmetric_eigenvalues(const SymmetricMatrix& a);

/// Builds the eigenvector for a simple eigenvalue from the cofactors of
/// B = a - lambda I: picks the row whose cofactor vector has the largest
/// Euclidean norm, normalizes, and flips the sign so the entry of largest
/// magnitude is positive. Throws degenerate_eigenvalue when every row's
/// cofactor vector is negligible (multiplicity >= 2).
EigenPair cofactor_eigenvector(const SymmetricMatrix& a, double lambda,
                               const Tolerances& tol = {});

/// Rank-one projector x x' from a unit eigenvector.
SymmetricMatrix projector(const EigenPair& pair);

SpectralDecomposition spectral_decompose(const SymmetricMatrix& a, const Tolerances& tol = {});

/// Sum of lambda_i P_i; reproduces the source within 1e-8 * ||source||_max.
SymmetricMatrix reconstruct(const SpectralDecomposition& d);

/// Sum of lambda_i^k P_i for k >= 0 (k = 0 gives the identity since the
/// projectors sum to I).
SymmetricMatrix spectral_power(const SpectralDecomposition& d, int k);

/// Coefficients y_i = x_i' y of y in the orthonormal eigenbasis.
std::vector<double> expand_in_eigenbasis(const SpectralDecomposition& d,
                                         const std::vector<double>& y);

}  // namespace pencilspec
