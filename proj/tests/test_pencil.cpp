#include <cmath>
#include <random>

#include "doctest.h"
#include "pencilspec/oracle.hpp"
#include "pencilspec/pencil.hpp"
#include "support.hpp"

using namespace pencilspec;
using testsupport::uniform;

namespace {

SymmetricMatrix sym(std::vector<std::vector<double>> rows) {
  return SymmetricMatrix(RealMatrix::from_rows(rows));
}

QuadraticPencil pencil(std::vector<std::vector<double>> m, std::vector<std::vector<double>> c,
                       std::vector<std::vector<double>> k) {
  return QuadraticPencil(sym(std::move(m)), sym(std::move(c)), sym(std::move(k)));
}

// Commuting pencil with known modal data: coefficients conjugated by a
// shared orthogonal basis.
QuadraticPencil dressed_pencil(const std::vector<double>& alphas,
                               const std::vector<double>& betas, std::uint64_t seed) {
  int n = static_cast<int>(alphas.size());
  RealMatrix q = random_orthogonal(n, seed);
  return QuadraticPencil(SymmetricMatrix(RealMatrix::identity(n)),
                         SymmetricMatrix(conjugate_by_orthogonal(q, alphas)),
                         SymmetricMatrix(conjugate_by_orthogonal(q, betas)));
}

}  // namespace

TEST_CASE("normalize_pencil: identity, scalar mass, commutator rejection") {
  NormalizedPencil np = normalize_pencil(
      pencil({{1, 0}, {0, 1}}, {{2, 0}, {0, 4}}, {{5, 0}, {0, 13}}));
  CHECK(approx_eq(np.c_tilde(), RealMatrix::diagonal({2, 4}), 1e-14));
  CHECK(approx_eq(np.k_tilde(), RealMatrix::diagonal({5, 13}), 1e-14));

  NormalizedPencil scaled = normalize_pencil(
      pencil({{2, 0}, {0, 2}}, {{6, -2}, {-2, 6}}, {{18, -8}, {-8, 18}}));
  CHECK(approx_eq(scaled.c_tilde(), RealMatrix::from_rows({{3, -1}, {-1, 3}}), 1e-13));
  CHECK(approx_eq(scaled.k_tilde(), RealMatrix::from_rows({{9, -4}, {-4, 9}}), 1e-13));

  CHECK_THROWS_AS(
      normalize_pencil(pencil({{1, 0}, {0, 1}}, {{1, 0}, {0, 2}}, {{0, 1}, {1, 0}})), Error);
  try {
    normalize_pencil(pencil({{1, 0}, {0, 1}}, {{1, 0}, {0, 2}}, {{0, 1}, {1, 0}}));
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::non_commuting);
  }
}

TEST_CASE("singular mass is rejected at pencil construction") {
  CHECK_THROWS_AS(pencil({{1, 1}, {1, 1}}, {{2, 0}, {0, 2}}, {{5, 0}, {0, 5}}), Error);
  try {
    pencil({{1, 1}, {1, 1}}, {{2, 0}, {0, 2}}, {{5, 0}, {0, 5}});
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::singular_mass);
  }
}

TEST_CASE("simultaneous_diagonalize: diagonal input, dressed input, degenerate input") {
  ModalData diag = simultaneous_diagonalize(
      NormalizedPencil(RealMatrix::diagonal({2, 4}), RealMatrix::diagonal({5, 13})));
  CHECK(diag.alphas[0] == doctest::Approx(2.0));
  CHECK(diag.alphas[1] == doctest::Approx(4.0));
  CHECK(diag.betas[0] == doctest::Approx(5.0));
  CHECK(diag.betas[1] == doctest::Approx(13.0));
  CHECK(approx_eq(diag.basis, RealMatrix::identity(2), 1e-12));

  ModalData dressed = simultaneous_diagonalize(NormalizedPencil(
      RealMatrix::from_rows({{3, -1}, {-1, 3}}), RealMatrix::from_rows({{9, -4}, {-4, 9}})));
  CHECK(dressed.alphas[0] == doctest::Approx(2.0));
  CHECK(dressed.alphas[1] == doctest::Approx(4.0));
  CHECK(dressed.betas[0] == doctest::Approx(5.0));
  CHECK(dressed.betas[1] == doctest::Approx(13.0));
  double inv_root2 = 1.0 / std::sqrt(2.0);
  CHECK(std::fabs(std::fabs(dressed.basis(0, 0)) - inv_root2) <= 1e-10);
  CHECK(std::fabs(std::fabs(dressed.basis(1, 1)) - inv_root2) <= 1e-10);

  CHECK_THROWS_AS(simultaneous_diagonalize(
                      NormalizedPencil(RealMatrix::identity(2), RealMatrix::diagonal({5, 13}))),
                  Error);
}

TEST_CASE("shared-basis violation is detected when commutation is only approximate") {
  // Commutator ~2e-13 slips under commute_tol, yet the eigenvectors of the
  // two matrices are visibly misaligned.
  RealMatrix c = RealMatrix::diagonal({1.0, 1.0 + 2e-7});
  RealMatrix k = RealMatrix::from_rows({{1.0, 1e-6}, {1e-6, 2.0}});
  try {
    simultaneous_diagonalize(NormalizedPencil(c, k));
    FAIL("expected shared_basis_violation");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::shared_basis_violation);
  }
}

TEST_CASE("modal_eigenvalues: conjugate pairs and the real-mode rejection") {
  auto [low, low_conj] = modal_eigenvalues(2.0, 5.0);
  CHECK(low.real() == doctest::Approx(-1.0));
  CHECK(low.imag() == doctest::Approx(2.0));
  CHECK(low_conj == std::conj(low));

  auto [high, high_conj] = modal_eigenvalues(4.0, 13.0);
  CHECK(high.real() == doctest::Approx(-2.0));
  CHECK(high.imag() == doctest::Approx(3.0));
  CHECK(high_conj == std::conj(high));

  CHECK_THROWS_AS(modal_eigenvalues(2.0, 1.0), Error);
  try {
    modal_eigenvalues(2.0, 1.0);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::real_modes);
  }
}

TEST_CASE("pencil_spectrum: scalar, decoupled, and dressed pencils") {
  auto [scalar, scalar_modal] = pencil_spectrum(pencil({{1}}, {{2}}, {{5}}));
  CHECK(scalar.size() == 1);
  CHECK(testsupport::close(scalar.representatives()[0], Complex{-1.0, 2.0}, 1e-12));
  CHECK(scalar_modal.alphas[0] == doctest::Approx(2.0));

  auto [diag, diag_modal] = pencil_spectrum(
      pencil({{1, 0}, {0, 1}}, {{2, 0}, {0, 4}}, {{5, 0}, {0, 13}}));
  (void)diag_modal;
  REQUIRE(diag.size() == 2);
  CHECK(testsupport::close(diag.representatives()[0], Complex{-2.0, 3.0}, 1e-12));
  CHECK(testsupport::close(diag.representatives()[1], Complex{-1.0, 2.0}, 1e-12));

  auto [dressed, dressed_modal] = pencil_spectrum(
      pencil({{1, 0}, {0, 1}}, {{3, -1}, {-1, 3}}, {{9, -4}, {-4, 9}}));
  (void)dressed_modal;
  REQUIRE(dressed.size() == 2);
  CHECK(testsupport::close(dressed.representatives()[0], Complex{-2.0, 3.0}, 1e-10));
  CHECK(testsupport::close(dressed.representatives()[1], Complex{-1.0, 2.0}, 1e-10));
}

TEST_CASE("evaluate_pencil: root annihilates its mode, lambda zero gives K") {
  QuadraticPencil scalar = pencil({{1}}, {{2}}, {{5}});
  CHECK(std::abs(determinant(evaluate_pencil(scalar, Complex{-1.0, 2.0}))) <= 1e-12);

  QuadraticPencil p = pencil({{1, 0}, {0, 1}}, {{2, 0}, {0, 4}}, {{5, 0}, {0, 13}});
  ComplexMatrix at_zero = evaluate_pencil(p, Complex{0.0, 0.0});
  CHECK(std::abs(at_zero(0, 0) - Complex{5.0, 0.0}) <= 1e-15);
  CHECK(std::abs(at_zero(1, 1) - Complex{13.0, 0.0}) <= 1e-15);

  ComplexMatrix at_root = evaluate_pencil(p, Complex{-1.0, 2.0});
  CHECK(std::abs(at_root(0, 0)) == doctest::Approx(0.0));
  CHECK(std::abs(at_root(1, 1) - Complex{6.0, 4.0}) <= 1e-12);
  CHECK(std::abs(at_root(0, 1)) == doctest::Approx(0.0));
}

TEST_CASE("modal reconstruction, completeness, and Vieta across random pencils") {
  std::mt19937_64 rng(2020);
  for (int trial = 0; trial < 20; ++trial) {
    int n = 1 + trial % 6;
    std::vector<double> alphas(static_cast<std::size_t>(n)), betas(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
      double alpha = -3.0 + 1.0 * i + uniform(rng, 0.0, 0.4);
      double spread = uniform(rng, 0.5, 3.0);
      alphas[static_cast<std::size_t>(i)] = alpha;
      betas[static_cast<std::size_t>(i)] = 0.25 * (alpha * alpha + spread * spread);
    }
    QuadraticPencil p = dressed_pencil(alphas, betas, 5000 + static_cast<std::uint64_t>(trial));
    NormalizedPencil np = normalize_pencil(p);
    ModalData modal = simultaneous_diagonalize(np);

    RealMatrix c_sum(n), k_sum(n), p_sum(n);
    for (int i = 0; i < n; ++i) {
      const RealMatrix& proj = modal.modal_projectors[static_cast<std::size_t>(i)].matrix();
      c_sum = c_sum + modal.alphas[static_cast<std::size_t>(i)] * proj;
      k_sum = k_sum + modal.betas[static_cast<std::size_t>(i)] * proj;
      p_sum = p_sum + proj;

      // Vieta per mode.
      Complex lambda = modal.lambdas[static_cast<std::size_t>(i)];
      CHECK(std::fabs(-modal.alphas[static_cast<std::size_t>(i)] - 2.0 * lambda.real()) <= 1e-10);
      CHECK(std::fabs(modal.betas[static_cast<std::size_t>(i)] - std::norm(lambda)) <= 1e-10);

      // Commutation chain on each shared eigenvector.
      std::vector<double> z(static_cast<std::size_t>(n));
      for (int r = 0; r < n; ++r) z[static_cast<std::size_t>(r)] = modal.basis(r, i);
      std::vector<double> ck = np.c_tilde() * (np.k_tilde() * z);
      std::vector<double> kc = np.k_tilde() * (np.c_tilde() * z);
      for (int r = 0; r < n; ++r)
        CHECK(std::fabs(ck[static_cast<std::size_t>(r)] - kc[static_cast<std::size_t>(r)]) <= 1e-9);
    }
    CHECK((c_sum - np.c_tilde()).max_abs() <= 1e-8 * std::max(np.c_tilde().max_abs(), 1e-12));
    CHECK((k_sum - np.k_tilde()).max_abs() <= 1e-8 * std::max(np.k_tilde().max_abs(), 1e-12));
    CHECK((p_sum - RealMatrix::identity(n)).max_abs() <= 1e-9);
  }
}

TEST_CASE("pencil spectrum satisfies the normalized determinant residual") {
  std::mt19937_64 rng(2121);
  for (int trial = 0; trial < 10; ++trial) {
    int n = 1 + trial % 4;
    std::vector<double> alphas(static_cast<std::size_t>(n)), betas(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
      double alpha = -2.0 + 1.2 * i + uniform(rng, 0.0, 0.5);
      double spread = uniform(rng, 0.8, 2.5);
      alphas[static_cast<std::size_t>(i)] = alpha;
      betas[static_cast<std::size_t>(i)] = 0.25 * (alpha * alpha + spread * spread);
    }
    QuadraticPencil p = dressed_pencil(alphas, betas, 7000 + static_cast<std::uint64_t>(trial));
    auto [spectrum, modal] = pencil_spectrum(p);
    (void)modal;

    double radius = 1.0;
    for (const Complex& z : spectrum.expanded()) radius = std::max(radius, std::abs(z));
    double scale = 0.0;
    for (int j = 0; j < 16; ++j) {
      double angle = 2.0 * 3.14159265358979323846 * j / 16 + 0.1;
      Complex mu{radius * std::cos(angle), radius * std::sin(angle)};
      scale = std::max(scale, std::abs(determinant(evaluate_pencil(p, mu))));
    }
    for (const Complex& z : spectrum.expanded())
      CHECK(std::abs(determinant(evaluate_pencil(p, z))) <= 1e-6 * scale);
  }
}

TEST_CASE("forward spectrum multiset-matches the determinant oracle") {
  std::mt19937_64 rng(2222);
  for (int trial = 0; trial < 10; ++trial) {
    int n = 1 + trial % 6;
    std::vector<double> alphas(static_cast<std::size_t>(n)), betas(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
      double alpha = -3.0 + 1.1 * i + uniform(rng, 0.0, 0.3);
      double spread = uniform(rng, 0.5, 2.0);
      alphas[static_cast<std::size_t>(i)] = alpha;
      betas[static_cast<std::size_t>(i)] = 0.25 * (alpha * alpha + spread * spread);
    }
    QuadraticPencil p = dressed_pencil(alphas, betas, 9000 + static_cast<std::uint64_t>(trial));
    auto [spectrum, modal] = pencil_spectrum(p);
    (void)modal;
    MatchResult match = multiset_match(spectrum.expanded(), oracle_spectrum(p), 1e-6);
    CHECK(match.worst <= 1e-6);
  }
}

TEST_CASE("non-symmetric normalized damping is rejected with guidance") {
  // M and C that do not share an eigenbasis make M^-1 C non-symmetric.
  RealMatrix m = RealMatrix::from_rows({{2, 1}, {1, 3}});
  RealMatrix c = RealMatrix::from_rows({{1, 0}, {0, 5}});
  RealMatrix k = RealMatrix::from_rows({{1, 0}, {0, 1}});
  QuadraticPencil p{SymmetricMatrix(m), SymmetricMatrix(c), SymmetricMatrix(k)};
  try {
    pencil_spectrum(p);
    FAIL("expected an error");
  } catch (const Error& e) {
    bool expected = e.code() == ErrorCode::non_symmetric || e.code() == ErrorCode::non_commuting;
    CHECK(expected);
  }
}

TEST_CASE("spectrum type keeps representatives sorted and expands conjugates") {
  Spectrum s({Complex{-1.0, 2.0}, Complex{-2.0, 3.0}});
  CHECK(s.representatives()[0] == Complex{-2.0, 3.0});
  CHECK(s.representatives()[1] == Complex{-1.0, 2.0});
  auto all = s.expanded();
  REQUIRE(all.size() == 4);
  CHECK(all[1] == Complex{-2.0, -3.0});
  CHECK(all[3] == Complex{-1.0, -2.0});
  CHECK_THROWS_AS(Spectrum({Complex{1.0, -2.0}}), Error);
}
