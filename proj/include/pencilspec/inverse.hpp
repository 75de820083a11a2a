#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "pencilspec/pencil.hpp"

namespace pencilspec {

/// Input to the inverse problem: the target conjugate-pair spectrum, an
/// optional orthogonal dressing matrix, and optional mass eigenvalues
/// (the diagonal of M in the shared basis).
struct InverseSpec {
  Spectrum spectrum;
  std::optional<RealMatrix> dressing;
  std::optional<std::vector<double>> mass_eigenvalues;
};

/// The reconstructed pencil plus the modal certificate that produced it.
struct ReconstructedPencil {
  QuadraticPencil pencil;
  ModalData modal;
};

/// Groups 2n raw values into n conjugate pairs. Each im > 0 value is
/// matched with a value within conj_pair_tol of its conjugate; the im > 0
/// members become the representatives.
Spectrum pair_conjugates(const std::vector<Complex>& values, const Tolerances& tol = {});

/// Enforces simplicity: representatives pairwise further apart than
/// distinct_tol, and every representative further than distinct_tol from
/// every other pair's conjugate.
Spectrum check_distinct(const Spectrum& s, const Tolerances& tol = {});

/// alpha = -(lambda + conj(lambda)) = -2 re, beta = lambda conj(lambda) = |lambda|^2.
std::pair<double, double> vieta_coefficients(Complex representative);

/// The canonical rank-one projectors: E_k with a single 1 at (k, k).
std::vector<SymmetricMatrix> canonical_projectors(int n);

/// C~ = diag(alphas), K~ = diag(betas).
NormalizedPencil assemble_diagonal(const std::vector<double>& alphas,
                                   const std::vector<double>& betas,
                                   const Tolerances& tol = {});

/// Conjugates a diagonal normalized pencil by an orthogonal matrix:
/// C~' = Q C~ Q', K~' = Q K~ Q'. The spectrum is unchanged.
NormalizedPencil dress(const NormalizedPencil& np, const RealMatrix& q,
                       const Tolerances& tol = {});

/// Full inverse construction. Modes are assigned in ascending (alpha, beta)
/// order so a pencil rebuilt from forward-problem output reproduces the
/// original coefficient matrices. With mass eigenvalues m_i the outputs are
/// M = Q diag(m) Q', C = Q diag(m_i alpha_i) Q', K = Q diag(m_i beta_i) Q'.
ReconstructedPencil reconstruct_pencil(const InverseSpec& spec, const Tolerances& tol = {});

}  // namespace pencilspec
