#include "pencilspec/inverse.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

namespace pencilspec {

namespace {

void require_orthogonal(const RealMatrix& q, double tol_value) {
  RealMatrix gram = q * q.transpose();
  double dev = (gram - RealMatrix::identity(q.order())).max_abs();
  if (dev > tol_value) {
    std::ostringstream msg;
    msg << "matrix is not orthogonal: ||QQ' - I||_max = " << dev << " exceeds " << tol_value;
    fail(ErrorCode::not_orthogonal, msg.str());
  }
}

}  // namespace

Spectrum pair_conjugates(const std::vector<Complex>& values, const Tolerances& tol) {
  tol.validate();
  if (values.size() % 2 != 0)
    fail(ErrorCode::odd_length, "spectrum must contain an even number of values");
  for (const Complex& z : values) {
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
      fail(ErrorCode::invalid_argument, "spectrum values must be finite");
    if (std::fabs(z.imag()) <= tol.conj_pair_tol) {
      std::ostringstream msg;
      msg << "spectrum value " << z.real() << " + " << z.imag()
          << "i is real within conj_pair_tol; eigenvalues must be complex";
      fail(ErrorCode::real_value, msg.str());
    }
  }

  std::vector<Complex> reps;
  std::vector<bool> used(values.size(), false);
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (values[i].imag() < 0.0) continue;
    bool matched = false;
    for (std::size_t j = 0; j < values.size(); ++j) {
      if (used[j] || values[j].imag() > 0.0) continue;
      if (std::abs(values[j] - std::conj(values[i])) <= tol.conj_pair_tol) {
        used[j] = true;
        matched = true;
        break;
      }
    }
    if (!matched) {
      std::ostringstream msg;
      msg << "value " << values[i].real() << " + " << values[i].imag()
          << "i has no conjugate partner within " << tol.conj_pair_tol;
      fail(ErrorCode::unpaired_value, msg.str());
    }
    reps.push_back(values[i]);
  }
  if (reps.size() * 2 != values.size())
    fail(ErrorCode::unpaired_value,
         "spectrum has unmatched values with negative imaginary part");
  return Spectrum(std::move(reps));
}

Spectrum check_distinct(const Spectrum& s, const Tolerances& tol) {
  tol.validate();
  const std::vector<Complex>& reps = s.representatives();
  for (std::size_t i = 0; i < reps.size(); ++i) {
    for (std::size_t j = i + 1; j < reps.size(); ++j) {
      if (std::abs(reps[i] - reps[j]) <= tol.distinct_tol) {
        std::ostringstream msg;
        msg << "eigenvalue pairs " << i << " and " << j << " are closer than " << tol.distinct_tol;
        fail(ErrorCode::duplicate_eigenvalue, msg.str());
      }
      if (std::abs(reps[i] - std::conj(reps[j])) <= tol.distinct_tol) {
        std::ostringstream msg;
        msg << "eigenvalue pair " << i << " coincides with the conjugate of pair " << j;
        fail(ErrorCode::duplicate_eigenvalue, msg.str());
      }
    }
  }
  return s;
}

std::pair<double, double> vieta_coefficients(Complex representative) {
  if (!(representative.imag() > 0.0))
    fail(ErrorCode::invalid_argument,
         "vieta_coefficients: representative must have positive imaginary part");
  double alpha = -2.0 * representative.real();
  double beta = representative.real() * representative.real() +
                representative.imag() * representative.imag();
  return {alpha, beta};
}

std::vector<SymmetricMatrix> canonical_projectors(int n) {
  if (n < 1) fail(ErrorCode::invalid_argument, "order must be >= 1");
  std::vector<SymmetricMatrix> out;
  out.reserve(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) {
    RealMatrix p(n);
    p(k, k) = 1.0;
    out.emplace_back(std::move(p));
  }
  return out;
}

NormalizedPencil assemble_diagonal(const std::vector<double>& alphas,
                                   const std::vector<double>& betas, const Tolerances& tol) {
  if (alphas.size() != betas.size())
    fail(ErrorCode::dimension_mismatch, "assemble_diagonal: coefficient lists differ in length");
  if (alphas.empty())
    fail(ErrorCode::invalid_argument, "assemble_diagonal: coefficient lists must be non-empty");
  return NormalizedPencil(RealMatrix::diagonal(alphas), RealMatrix::diagonal(betas), tol);
}

NormalizedPencil dress(const NormalizedPencil& np, const RealMatrix& q, const Tolerances& tol) {
  tol.validate();
  int n = np.order();
  if (q.order() != n)
    fail(ErrorCode::dimension_mismatch, "dress: orthogonal matrix order mismatch");
  double scale = std::max({np.c_tilde().max_abs(), np.k_tilde().max_abs(), 1.0});
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (i == j) continue;
      if (std::fabs(np.c_tilde()(i, j)) > 1e-12 * scale ||
          std::fabs(np.k_tilde()(i, j)) > 1e-12 * scale)
        fail(ErrorCode::invalid_argument, "dress: normalized pencil must be diagonal");
    }
  require_orthogonal(q, 1e-10);

  std::vector<double> ad(static_cast<std::size_t>(n));
  std::vector<double> bd(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    ad[static_cast<std::size_t>(i)] = np.c_tilde()(i, i);
    bd[static_cast<std::size_t>(i)] = np.k_tilde()(i, i);
  }
  return NormalizedPencil(conjugate_by_orthogonal(q, ad), conjugate_by_orthogonal(q, bd), tol);
}

ReconstructedPencil reconstruct_pencil(const InverseSpec& spec, const Tolerances& tol) {
  tol.validate();
  check_distinct(spec.spectrum, tol);
  int n = spec.spectrum.size();
  if (n < 1) fail(ErrorCode::invalid_argument, "spectrum must contain at least one pair");

  // Mode order is ascending (alpha, beta), matching the order the forward
  // diagonalization reports, so round trips land on the same assignment.
  std::vector<Complex> reps = spec.spectrum.representatives();
  std::sort(reps.begin(), reps.end(), [](const Complex& a, const Complex& b) {
    auto va = vieta_coefficients(a);
    auto vb = vieta_coefficients(b);
    if (va.first != vb.first) return va.first < vb.first;
    return va.second < vb.second;
  });

  std::vector<double> alphas(static_cast<std::size_t>(n));
  std::vector<double> betas(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    auto [alpha, beta] = vieta_coefficients(reps[static_cast<std::size_t>(i)]);
    alphas[static_cast<std::size_t>(i)] = alpha;
    betas[static_cast<std::size_t>(i)] = beta;
  }

  RealMatrix q = RealMatrix::identity(n);
  if (spec.dressing) {
    if (spec.dressing->order() != n)
      fail(ErrorCode::dimension_mismatch, "dressing matrix order does not match spectrum size");
    require_orthogonal(*spec.dressing, 1e-10);
    q = *spec.dressing;
  }

  std::vector<double> mass(static_cast<std::size_t>(n), 1.0);
  if (spec.mass_eigenvalues) {
    if (static_cast<int>(spec.mass_eigenvalues->size()) != n)
      fail(ErrorCode::dimension_mismatch, "mass eigenvalue count does not match spectrum size");
    for (double m : *spec.mass_eigenvalues)
      if (!(m > tol.root_tol)) {
        std::ostringstream msg;
        msg << "mass eigenvalue " << m << " is not strictly positive";
        fail(ErrorCode::non_positive_mass, msg.str());
      }
    mass = *spec.mass_eigenvalues;
  }

  std::vector<double> ca(static_cast<std::size_t>(n));
  std::vector<double> kb(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    ca[static_cast<std::size_t>(i)] = mass[static_cast<std::size_t>(i)] * alphas[static_cast<std::size_t>(i)];
    kb[static_cast<std::size_t>(i)] = mass[static_cast<std::size_t>(i)] * betas[static_cast<std::size_t>(i)];
  }

  // Q diag(1) Q' is exactly I, so skip the arithmetic for the default mass.
  RealMatrix m_out = spec.mass_eigenvalues ? conjugate_by_orthogonal(q, mass)
                                           : RealMatrix::identity(n);
  RealMatrix c_out = spec.dressing ? conjugate_by_orthogonal(q, ca) : RealMatrix::diagonal(ca);
  RealMatrix k_out = spec.dressing ? conjugate_by_orthogonal(q, kb) : RealMatrix::diagonal(kb);

  QuadraticPencil pencil(SymmetricMatrix(std::move(m_out), tol.sym_tol),
                         SymmetricMatrix(std::move(c_out), tol.sym_tol),
                         SymmetricMatrix(std::move(k_out), tol.sym_tol), tol);

  ModalData modal{std::move(alphas), std::move(betas), q, {}, {}};
  modal.modal_projectors.reserve(static_cast<std::size_t>(n));
  modal.lambdas = std::move(reps);
  for (int i = 0; i < n; ++i) {
    std::vector<double> col(static_cast<std::size_t>(n));
    for (int r = 0; r < n; ++r) col[static_cast<std::size_t>(r)] = q(r, i);
    modal.modal_projectors.push_back(projector(EigenPair{modal.alphas[static_cast<std::size_t>(i)], col, i}));
  }

  return ReconstructedPencil{std::move(pencil), std::move(modal)};
}

}  // namespace pencilspec
