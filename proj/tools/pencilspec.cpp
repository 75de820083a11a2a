// pencilspec: file-driven front end for the quadratic-pencil toolkit.
// Subcommands read and write the JSON schemas documented in the README;
// the JSON result envelope goes to stdout, a short summary to stderr.

#include <cstdlib>
#include <functional>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "pencilspec/inverse.hpp"
#include "pencilspec/io.hpp"
#include "pencilspec/oracle.hpp"

namespace {

using nlohmann::ordered_json;
using namespace pencilspec;

constexpr const char* kToolVersion = "0.1.0";
constexpr double kRoundTripTol = 1e-8;

int exit_code_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::degenerate_eigenvalue:
      return 3;
    case ErrorCode::non_commuting:
    case ErrorCode::shared_basis_violation:
      return 4;
    case ErrorCode::no_matching:
      return 5;
    default:
      return 2;
  }
}

void emit(const std::string& status, ordered_json payload, const Tolerances& tol) {
  ordered_json env;
  env["status"] = status;
  env["payload"] = std::move(payload);
  env["tolerances"] = tolerances_to_json(tol);
  env["tool_version"] = kToolVersion;
  std::cout << env.dump(2) << '\n';
}

ordered_json matrix_body(const RealMatrix& m) {
  ordered_json rows = ordered_json::array();
  for (int i = 0; i < m.order(); ++i) {
    ordered_json row = ordered_json::array();
    for (int j = 0; j < m.order(); ++j) row.push_back(m(i, j));
    rows.push_back(std::move(row));
  }
  return rows;
}

SymmetricMatrix read_symmetric(const std::string& path, const Tolerances& tol) {
  return SymmetricMatrix(read_matrix_file(path), tol.sym_tol);
}

QuadraticPencil read_pencil(const std::string& mass, const std::string& damping,
                            const std::string& stiffness, const Tolerances& tol) {
  return QuadraticPencil(read_symmetric(mass, tol), read_symmetric(damping, tol),
                         read_symmetric(stiffness, tol), tol);
}

// Largest |det P(mu)| over a ring of sample points at the spectral radius;
// used to express per-eigenvalue determinant residuals scale-free.
double det_scale_on_circle(const QuadraticPencil& p, const std::vector<Complex>& spectrum) {
  double radius = 1.0;
  for (const Complex& z : spectrum) radius = std::max(radius, std::abs(z));
  double worst = 0.0;
  constexpr int kSamples = 16;
  for (int j = 0; j < kSamples; ++j) {
    double angle = 2.0 * 3.14159265358979323846 * j / kSamples + 0.1;
    Complex mu{radius * std::cos(angle), radius * std::sin(angle)};
    worst = std::max(worst, std::abs(determinant(evaluate_pencil(p, mu))));
  }
  return worst;
}

int run_decompose(const std::string& path, const Tolerances& tol) {
  SpectralDecomposition d = spectral_decompose(read_symmetric(path, tol), tol);
  int n = d.order();

  double orthonormality = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      double expected = (i == j) ? 1.0 : 0.0;
      orthonormality = std::max(
          orthonormality,
          std::fabs(dot(d.pairs[static_cast<std::size_t>(i)].vector, d.pairs[static_cast<std::size_t>(j)].vector) - expected));
    }
  double idempotence = 0.0;
  double annihilation = 0.0;
  RealMatrix projector_sum(n);
  for (int i = 0; i < n; ++i) {
    const RealMatrix& pi = d.projectors[static_cast<std::size_t>(i)].matrix();
    idempotence = std::max(idempotence, (pi * pi - pi).max_abs());
    projector_sum = projector_sum + pi;
    for (int j = 0; j < n; ++j) {
      if (i == j) continue;
      annihilation = std::max(annihilation, (pi * d.projectors[static_cast<std::size_t>(j)].matrix()).max_abs());
    }
  }
  double completeness = (projector_sum - RealMatrix::identity(n)).max_abs();
  double expansion = (reconstruct(d).matrix() - d.source.matrix()).max_abs();

  ordered_json payload;
  payload["n"] = n;
  ordered_json eigenvalues = ordered_json::array();
  ordered_json g_rows = ordered_json::array();
  ordered_json eigenvectors = ordered_json::array();
  ordered_json projectors = ordered_json::array();
  for (int i = 0; i < n; ++i) {
    const EigenPair& pair = d.pairs[static_cast<std::size_t>(i)];
    eigenvalues.push_back(pair.lambda);
    g_rows.push_back(pair.g_row);
    eigenvectors.push_back(pair.vector);
    projectors.push_back(matrix_body(d.projectors[static_cast<std::size_t>(i)].matrix()));
  }
  payload["eigenvalues"] = std::move(eigenvalues);
  payload["g_rows"] = std::move(g_rows);
  payload["eigenvectors"] = std::move(eigenvectors);
  payload["projectors"] = std::move(projectors);
  ordered_json residuals;
  residuals["orthonormality"] = orthonormality;
  residuals["idempotence"] = idempotence;
  residuals["annihilation"] = annihilation;
  residuals["completeness"] = completeness;
  residuals["expansion"] = expansion;
  payload["residuals"] = std::move(residuals);

  emit("ok", std::move(payload), tol);
  std::cerr << "decompose: order " << n << ", expansion residual " << expansion << '\n';
  return 0;
}

int run_forward(const std::string& mass, const std::string& damping, const std::string& stiffness,
                bool no_oracle, const Tolerances& tol) {
  QuadraticPencil p = read_pencil(mass, damping, stiffness, tol);
  NormalizedPencil np = normalize_pencil(p, tol);
  double commutator_norm =
      (np.c_tilde() * np.k_tilde() - np.k_tilde() * np.c_tilde()).max_abs();
  ModalData modal = simultaneous_diagonalize(np, tol);
  Spectrum spectrum(modal.lambdas);

  ordered_json payload;
  payload["n"] = p.order();
  ordered_json values = ordered_json::array();
  for (const Complex& z : spectrum.expanded()) values.push_back(complex_to_json(z));
  payload["spectrum"] = std::move(values);
  payload["alphas"] = modal.alphas;
  payload["betas"] = modal.betas;
  payload["basis"] = matrix_body(modal.basis);
  payload["commutator_norm"] = commutator_norm;
  if (no_oracle) {
    payload["oracle_residual"] = nullptr;
  } else {
    MatchReport report =
        multiset_match_report(spectrum.expanded(), oracle_spectrum(p, tol), 1e-6);
    payload["oracle_residual"] = report.result.worst;
  }

  emit("ok", std::move(payload), tol);
  std::cerr << "forward: " << p.order() << " conjugate pairs, commutator norm "
            << commutator_norm << '\n';
  return 0;
}

struct InverseOptions {
  std::string spectrum_path;
  std::optional<std::uint64_t> q_seed;
  std::optional<std::string> q_file;
  std::vector<double> mass;
  std::string out_mass = "mass.json";
  std::string out_damping = "damping.json";
  std::string out_stiffness = "stiffness.json";
  std::string out_certificate = "certificate.json";
};

std::optional<std::uint64_t> env_seed() {
  const char* raw = std::getenv("PENCILSPEC_SEED");
  if (raw == nullptr || *raw == '\0') return std::nullopt;
  char* end = nullptr;
  unsigned long long value = std::strtoull(raw, &end, 10);
  if (end == raw || *end != '\0')
    fail(ErrorCode::invalid_argument, "PENCILSPEC_SEED must be an unsigned integer");
  return static_cast<std::uint64_t>(value);
}

int run_inverse(const InverseOptions& opt, const Tolerances& tol) {
  std::vector<Complex> raw = read_spectrum_file(opt.spectrum_path);
  Spectrum spectrum = pair_conjugates(raw, tol);
  int n = spectrum.size();

  InverseSpec spec{spectrum, std::nullopt, std::nullopt};
  std::string q_source = "identity";
  std::optional<std::uint64_t> seed = opt.q_seed;
  if (!opt.q_file && !seed) seed = env_seed();
  if (opt.q_file) {
    spec.dressing = read_matrix_file(*opt.q_file);
    q_source = "file";
  } else if (seed) {
    spec.dressing = random_orthogonal(n, *seed);
    q_source = "seed";
  }
  if (!opt.mass.empty()) spec.mass_eigenvalues = opt.mass;

  ReconstructedPencil rec = reconstruct_pencil(spec, tol);
  write_matrix_file(opt.out_mass, rec.pencil.mass().matrix());
  write_matrix_file(opt.out_damping, rec.pencil.damping().matrix());
  write_matrix_file(opt.out_stiffness, rec.pencil.stiffness().matrix());

  ordered_json certificate;
  certificate["n"] = n;
  certificate["alphas"] = rec.modal.alphas;
  certificate["betas"] = rec.modal.betas;
  certificate["q"] = matrix_to_json(rec.modal.basis);
  certificate["mass_eigenvalues"] =
      spec.mass_eigenvalues ? ordered_json(*spec.mass_eigenvalues)
                            : ordered_json(std::vector<double>(static_cast<std::size_t>(n), 1.0));
  ordered_json cert_values = ordered_json::array();
  for (const Complex& z : spectrum.expanded()) cert_values.push_back(complex_to_json(z));
  certificate["spectrum"] = std::move(cert_values);
  write_json_file(opt.out_certificate, certificate);

  // The reconstruction is only accepted if the forward problem actually
  // reproduces the requested eigenvalues.
  auto [round_trip, modal] = pencil_spectrum(rec.pencil, tol);
  (void)modal;
  MatchReport report = multiset_match_report(raw, round_trip.expanded(), kRoundTripTol);

  ordered_json payload;
  payload["n"] = n;
  payload["alphas"] = rec.modal.alphas;
  payload["betas"] = rec.modal.betas;
  payload["q_source"] = q_source;
  if (q_source == "seed") payload["q_seed"] = *seed;
  payload["round_trip_residual"] = report.result.worst;
  ordered_json files;
  files["mass"] = opt.out_mass;
  files["damping"] = opt.out_damping;
  files["stiffness"] = opt.out_stiffness;
  files["certificate"] = opt.out_certificate;
  payload["files"] = std::move(files);

  if (!report.ok) {
    emit("no_matching", std::move(payload), tol);
    std::cerr << "inverse: round-trip residual " << report.result.worst << " exceeds "
              << kRoundTripTol << '\n';
    return 5;
  }
  emit("ok", std::move(payload), tol);
  std::cerr << "inverse: wrote " << opt.out_mass << ", " << opt.out_damping << ", "
            << opt.out_stiffness << " (round-trip residual " << report.result.worst << ")\n";
  return 0;
}

int run_power(const std::string& path, int k, const Tolerances& tol) {
  SymmetricMatrix a = read_symmetric(path, tol);
  SpectralDecomposition d = spectral_decompose(a, tol);
  SymmetricMatrix powered = spectral_power(d, k);

  RealMatrix iterated = RealMatrix::identity(a.order());
  for (int i = 0; i < k; ++i) iterated = iterated * a.matrix();
  double residual = (powered.matrix() - iterated).max_abs();

  ordered_json payload;
  payload["n"] = a.order();
  payload["k"] = k;
  payload["result"] = matrix_body(powered.matrix());
  payload["residual"] = residual;
  emit("ok", std::move(payload), tol);
  std::cerr << "power: k = " << k << ", residual vs repeated multiplication " << residual << '\n';
  return 0;
}

int run_verify(const std::string& mass, const std::string& damping, const std::string& stiffness,
               const std::string& spectrum_path, double match_tol, const Tolerances& tol) {
  QuadraticPencil p = read_pencil(mass, damping, stiffness, tol);
  std::vector<Complex> claimed = read_spectrum_file(spectrum_path);
  if (claimed.size() % 2 != 0)
    fail(ErrorCode::odd_length, "spectrum must contain an even number of values");
  if (static_cast<int>(claimed.size()) != 2 * p.order())
    fail(ErrorCode::dimension_mismatch, "spectrum length must equal twice the pencil order");

  auto [forward, modal] = pencil_spectrum(p, tol);
  (void)modal;
  MatchReport forward_report = multiset_match_report(claimed, forward.expanded(), match_tol);
  MatchReport oracle_report = multiset_match_report(claimed, oracle_spectrum(p, tol), match_tol);

  double scale = det_scale_on_circle(p, claimed);
  ordered_json det_residuals = ordered_json::array();
  for (const Complex& z : claimed) {
    double residual = std::abs(determinant(evaluate_pencil(p, z)));
    det_residuals.push_back(scale > 0.0 ? residual / scale : residual);
  }

  bool matched = forward_report.ok && oracle_report.ok;
  ordered_json payload;
  payload["n"] = p.order();
  payload["match_tol"] = match_tol;
  payload["matched"] = matched;
  payload["forward_residual"] = forward_report.result.worst;
  payload["oracle_residual"] = oracle_report.result.worst;
  payload["det_residuals"] = std::move(det_residuals);

  if (!matched) {
    emit("no_matching", std::move(payload), tol);
    std::cerr << "verify: spectrum mismatch (forward " << forward_report.result.worst
              << ", oracle " << oracle_report.result.worst << ")\n";
    return 5;
  }
  emit("ok", std::move(payload), tol);
  std::cerr << "verify: spectrum matches (forward " << forward_report.result.worst << ", oracle "
            << oracle_report.result.worst << ")\n";
  return 0;
}

int run_guarded(const Tolerances& tol, const std::function<int()>& body) {
  try {
    tol.validate();
    return body();
  } catch (const Error& e) {
    ordered_json payload;
    payload["message"] = e.what();
    emit(to_string(e.code()), std::move(payload), tol);
    std::cerr << "error: " << e.what() << '\n';
    return exit_code_for(e.code());
  } catch (const std::exception& e) {
    ordered_json payload;
    payload["message"] = e.what();
    emit("internal_error", std::move(payload), tol);
    std::cerr << "internal error: " << e.what() << '\n';
    return 1;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"pencilspec: spectral decomposition, quadratic-pencil spectra, and\n"
               "inverse reconstruction from prescribed conjugate eigenvalue pairs"};
  app.require_subcommand(1);
  app.fallthrough();

  Tolerances tol;
  app.add_option("--tol-sym", tol.sym_tol, "Symmetry tolerance")->capture_default_str();
  app.add_option("--tol-commute", tol.commute_tol, "Commutator tolerance")->capture_default_str();
  app.add_option("--tol-eig-residual", tol.eig_residual_tol, "Eigen-residual tolerance")
      ->capture_default_str();
  app.add_option("--tol-distinct", tol.distinct_tol, "Eigenvalue separation tolerance")
      ->capture_default_str();
  app.add_option("--tol-conj-pair", tol.conj_pair_tol,
                 "Absolute conjugate-matching tolerance (inputs are expected O(1)-O(1e3))")
      ->capture_default_str();
  app.add_option("--tol-root", tol.root_tol, "Root-iteration/singularity tolerance")
      ->capture_default_str();

  std::string decompose_path;
  auto* decompose = app.add_subcommand(
      "decompose", "Eigenvalues, cofactor eigenvectors, and projectors of a symmetric matrix");
  decompose->add_option("matrix", decompose_path, "Matrix JSON file")->required();

  std::string fwd_mass, fwd_damping, fwd_stiffness;
  bool fwd_no_oracle = false;
  auto* forward =
      app.add_subcommand("forward", "Spectrum of the pencil lambda^2 M + lambda C + K");
  forward->add_option("mass", fwd_mass, "Mass matrix JSON file")->required();
  forward->add_option("damping", fwd_damping, "Damping matrix JSON file")->required();
  forward->add_option("stiffness", fwd_stiffness, "Stiffness matrix JSON file")->required();
  forward->add_flag("--no-oracle", fwd_no_oracle,
                    "Skip the determinant-polynomial cross-check");

  InverseOptions inv;
  std::uint64_t inv_seed_value = 0;
  std::string inv_q_file;
  auto* inverse = app.add_subcommand(
      "inverse", "Reconstruct M, C, K from a prescribed conjugate-pair spectrum");
  inverse->add_option("spectrum", inv.spectrum_path, "Spectrum JSON file (all 2n values)")
      ->required();
  auto* seed_opt = inverse->add_option(
      "--q-seed", inv_seed_value,
      "Dress the diagonal solution with a seeded random orthogonal matrix "
      "(PENCILSPEC_SEED supplies the seed when this flag is absent)");
  auto* qfile_opt =
      inverse->add_option("--q-file", inv_q_file, "Dress with an orthogonal matrix from a file");
  seed_opt->excludes(qfile_opt);
  qfile_opt->excludes(seed_opt);
  inverse->add_option("--mass", inv.mass,
                      "Comma-separated positive mass eigenvalues in the shared basis")
      ->delimiter(',');
  inverse->add_option("--out-mass", inv.out_mass, "Output path for M")->capture_default_str();
  inverse->add_option("--out-damping", inv.out_damping, "Output path for C")
      ->capture_default_str();
  inverse->add_option("--out-stiffness", inv.out_stiffness, "Output path for K")
      ->capture_default_str();
  inverse->add_option("--out-certificate", inv.out_certificate,
                      "Output path for the modal certificate")
      ->capture_default_str();

  std::string power_path;
  int power_k = 0;
  auto* power = app.add_subcommand("power", "Matrix power through the spectral expansion");
  power->add_option("matrix", power_path, "Matrix JSON file")->required();
  power->add_option("k", power_k, "Exponent (>= 0)")->required()->check(CLI::NonNegativeNumber);

  std::string ver_mass, ver_damping, ver_stiffness, ver_spectrum;
  double ver_tol = 1e-6;
  auto* verify = app.add_subcommand(
      "verify", "Check a claimed spectrum against the modal path and the determinant oracle");
  verify->add_option("mass", ver_mass, "Mass matrix JSON file")->required();
  verify->add_option("damping", ver_damping, "Damping matrix JSON file")->required();
  verify->add_option("stiffness", ver_stiffness, "Stiffness matrix JSON file")->required();
  verify->add_option("spectrum", ver_spectrum, "Spectrum JSON file (all 2n values)")->required();
  verify->add_option("--tol", ver_tol, "Multiset matching tolerance")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  if (seed_opt->count() > 0) inv.q_seed = inv_seed_value;
  if (qfile_opt->count() > 0) inv.q_file = inv_q_file;

  if (app.got_subcommand(decompose))
    return run_guarded(tol, [&] { return run_decompose(decompose_path, tol); });
  if (app.got_subcommand(forward))
    return run_guarded(
        tol, [&] { return run_forward(fwd_mass, fwd_damping, fwd_stiffness, fwd_no_oracle, tol); });
  if (app.got_subcommand(inverse)) return run_guarded(tol, [&] { return run_inverse(inv, tol); });
  if (app.got_subcommand(power))
    return run_guarded(tol, [&] { return run_power(power_path, power_k, tol); });
  if (app.got_subcommand(verify))
    return run_guarded(tol, [&] {
      return run_verify(ver_mass, ver_damping, ver_stiffness, ver_spectrum, ver_tol, tol);
    });
  return 2;
}
