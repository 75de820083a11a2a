#include "pencilspec/pencil.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace pencilspec {

namespace {

bool complex_less(const Complex& a, const Complex& b) {
  if (a.real() != b.real()) return a.real() < b.real();
  return a.imag() < b.imag();
}

}  // namespace

QuadraticPencil::QuadraticPencil(SymmetricMatrix mass, SymmetricMatrix damping,
                                 SymmetricMatrix stiffness, const Tolerances& tol)
    : m_(std::move(mass)), c_(std::move(damping)), k_(std::move(stiffness)) {
  tol.validate();
  if (m_.order() != c_.order() || m_.order() != k_.order())
    fail(ErrorCode::dimension_mismatch, "pencil coefficients must share one order");
  double det_m = determinant(m_.matrix());
  if (std::fabs(det_m) <= tol.root_tol) {
    std::ostringstream msg;
    msg << "mass matrix is singular: |det M| = " << std::fabs(det_m);
    fail(ErrorCode::singular_mass, msg.str());
  }
}

NormalizedPencil::NormalizedPencil(RealMatrix c_tilde, RealMatrix k_tilde, const Tolerances& tol)
    : c_(std::move(c_tilde)), k_(std::move(k_tilde)) {
  tol.validate();
  if (c_.order() != k_.order())
    fail(ErrorCode::dimension_mismatch, "normalized coefficients must share one order");
  RealMatrix commutator = c_ * k_ - k_ * c_;
  double bound = tol.commute_tol * std::max(c_.max_abs() * k_.max_abs(), 1.0);
  if (commutator.max_abs() > bound) {
    std::ostringstream msg;
    msg << "normalized coefficients do not commute: ||[C,K]||_max = " << commutator.max_abs()
        << " exceeds " << bound;
    fail(ErrorCode::non_commuting, msg.str());
  }
}

Spectrum::Spectrum(std::vector<Complex> representatives) : reps_(std::move(representatives)) {
  for (const Complex& z : reps_) {
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
      fail(ErrorCode::invalid_argument, "spectrum values must be finite");
    if (!(z.imag() > 0.0))
      fail(ErrorCode::invalid_argument,
           "spectrum representatives must have strictly positive imaginary part");
  }
  std::sort(reps_.begin(), reps_.end(), complex_less);
}

std::vector<Complex> Spectrum::expanded() const {
  std::vector<Complex> out;
  out.reserve(reps_.size() * 2);
  for (const Complex& z : reps_) {
    out.push_back(z);
    out.push_back(std::conj(z));
  }
  return out;
}

NormalizedPencil normalize_pencil(const QuadraticPencil& p, const Tolerances& tol) {
  tol.validate();
  RealMatrix c_tilde = solve(p.mass().matrix(), p.damping().matrix());
  RealMatrix k_tilde = solve(p.mass().matrix(), p.stiffness().matrix());
  return NormalizedPencil(std::move(c_tilde), std::move(k_tilde), tol);
}

ModalData simultaneous_diagonalize(const NormalizedPencil& np, const Tolerances& tol) {
  tol.validate();
  int n = np.order();
  const RealMatrix& ct = np.c_tilde();
  const RealMatrix& kt = np.k_tilde();

  double asym = (ct - ct.transpose()).max_abs();
  if (asym > tol.sym_tol) {
    std::ostringstream msg;
    msg << "normalized damping matrix is not symmetric (asymmetry " << asym
        << "); supply a mass matrix sharing the eigenbasis of C and K";
    fail(ErrorCode::non_symmetric, msg.str());
  }

  SpectralDecomposition d = spectral_decompose(SymmetricMatrix(ct, tol.sym_tol), tol);

  ModalData modal{std::vector<double>(static_cast<std::size_t>(n)),
                  std::vector<double>(static_cast<std::size_t>(n)), RealMatrix(n), {}, {}};
  modal.modal_projectors.reserve(static_cast<std::size_t>(n));
  modal.lambdas.reserve(static_cast<std::size_t>(n));
  double k_scale = kt.max_abs();
  for (int i = 0; i < n; ++i) {
    const EigenPair& pair = d.pairs[static_cast<std::size_t>(i)];
    modal.alphas[static_cast<std::size_t>(i)] = pair.lambda;
    std::vector<double> kz = kt * pair.vector;
    double beta = dot(pair.vector, kz);
    for (int r = 0; r < n; ++r) kz[static_cast<std::size_t>(r)] -= beta * pair.vector[static_cast<std::size_t>(r)];
    if (max_abs(kz) > tol.eig_residual_tol * k_scale) {
      std::ostringstream msg;
      msg << "stiffness matrix does not share the damping eigenbasis: residual " << max_abs(kz)
          << " at mode " << i;
      fail(ErrorCode::shared_basis_violation, msg.str());
    }
    modal.betas[static_cast<std::size_t>(i)] = beta;
    for (int r = 0; r < n; ++r) modal.basis(r, i) = pair.vector[static_cast<std::size_t>(r)];
    modal.modal_projectors.push_back(d.projectors[static_cast<std::size_t>(i)]);
    modal.lambdas.push_back(modal_eigenvalues(pair.lambda, beta, tol).first);
  }
  return modal;
}

std::pair<Complex, Complex> modal_eigenvalues(double alpha, double beta, const Tolerances& tol) {
  tol.validate();
  double disc = alpha * alpha - 4.0 * beta;
  if (disc >= -tol.root_tol) {
    std::ostringstream msg;
    msg << "modal quadratic lambda^2 + " << alpha << " lambda + " << beta
        << " has non-negative discriminant " << disc << "; eigenvalues are not a conjugate pair";
    fail(ErrorCode::real_modes, msg.str());
  }
  double im = 0.5 * std::sqrt(-disc);
  Complex rep{-0.5 * alpha, im};
  return {rep, std::conj(rep)};
}

std::pair<Spectrum, ModalData> pencil_spectrum(const QuadraticPencil& p, const Tolerances& tol) {
  ModalData modal = simultaneous_diagonalize(normalize_pencil(p, tol), tol);
  return {Spectrum(modal.lambdas), std::move(modal)};
}

ComplexMatrix evaluate_pencil(const QuadraticPencil& p, Complex lambda) {
  int n = p.order();
  Complex lambda2 = lambda * lambda;
  ComplexMatrix out(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      out(i, j) = lambda2 * p.mass()(i, j) + lambda * p.damping()(i, j) + p.stiffness()(i, j);
  return out;
}

}  // namespace pencilspec
