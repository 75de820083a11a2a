#pragma once

#include <utility>
#include <vector>

#include "pencilspec/matrix.hpp"
#include "pencilspec/spectral.hpp"

namespace pencilspec {

/// lambda^2 M + lambda C + K with symmetric coefficients and det M != 0.
class QuadraticPencil {
 public:
  QuadraticPencil(SymmetricMatrix mass, SymmetricMatrix damping, SymmetricMatrix stiffness,
                  const Tolerances& tol = {});

  const SymmetricMatrix& mass() const { return m_; }
  const SymmetricMatrix& damping() const { return c_; }
  const SymmetricMatrix& stiffness() const { return k_; }
  int order() const { return m_.order(); }

 private:
  SymmetricMatrix m_;
  SymmetricMatrix c_;
  SymmetricMatrix k_;
};

/// The monic form lambda^2 I + lambda C~ + K~ after dividing out the mass
/// matrix. Construction enforces the commutator bound
/// ||C~K~ - K~C~||_max <= commute_tol * max(||C~||_max ||K~||_max, 1).
class NormalizedPencil {
 public:
  NormalizedPencil(RealMatrix c_tilde, RealMatrix k_tilde, const Tolerances& tol = {});

  const RealMatrix& c_tilde() const { return c_; }
  const RealMatrix& k_tilde() const { return k_; }
  int order() const { return c_.order(); }

 private:
  RealMatrix c_;
  RealMatrix k_;
};

/// Shared-eigenbasis data of a commuting normalized pencil: per-mode
/// coefficients, the orthonormal basis (columns), rank-one modal
/// projectors, and the conjugate-pair representative of each mode.
struct ModalData {
  std::vector<double> alphas;
  std::vector<double> betas;
  RealMatrix basis;
  std::vector<SymmetricMatrix> modal_projectors;
  std::vector<Complex> lambdas;  // im > 0 representative per mode

  int order() const { return basis.order(); }
};

/// The n conjugate-pair representatives (im > 0), sorted by (re, im).
/// Distinctness is checked separately by check_distinct().
class Spectrum {
 public:
  explicit Spectrum(std::vector<Complex> representatives);

  const std::vector<Complex>& representatives() const { return reps_; }
  int size() const { return static_cast<int>(reps_.size()); }

  /// All 2n eigenvalues: each representative followed by its conjugate.
  std::vector<Complex> expanded() const;

 private:
  std::vector<Complex> reps_;
};

/// C~ = M^-1 C, K~ = M^-1 K. Throws singular_mass when |det M| <= root_tol
/// and non_commuting when the commutator bound fails.
NormalizedPencil normalize_pencil(const QuadraticPencil& p, const Tolerances& tol = {});

/// Diagonalizes C~ (which must be symmetric), reads alpha_i from its
/// eigenvalues, takes beta_i as the Rayleigh quotient z_i' K~ z_i, and
/// verifies K~ z_i = beta_i z_i. Throws shared_basis_violation when the
/// two matrices do not actually share the eigenbasis.
ModalData simultaneous_diagonalize(const NormalizedPencil& np, const Tolerances& tol = {});

/// Roots of lambda^2 + alpha lambda + beta = 0, which must be a conjugate
/// pair: first element has im > 0. Throws real_modes when the discriminant
/// is not negative beyond root_tol.
std::pair<Complex, Complex> modal_eigenvalues(double alpha, double beta,
                                              const Tolerances& tol = {});

/// Full forward problem: normalize, diagonalize, solve the modal
/// quadratics. The spectrum is sorted by (re, im); modal data stays in
/// mode order (ascending alpha).
std::pair<Spectrum, ModalData> pencil_spectrum(const QuadraticPencil& p,
                                               const Tolerances& tol = {});

/// lambda^2 M + lambda C + K at a complex argument.
ComplexMatrix evaluate_pencil(const QuadraticPencil& p, Complex lambda);

}  // namespace pencilspec
