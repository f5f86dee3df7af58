#include "focklab/experiment.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>

#include <Eigen/SVD>
#include <json.hpp>

#include "focklab/carleson.hpp"
#include "focklab/expression.hpp"
#include "focklab/quadrature.hpp"
#include "focklab/spectral.hpp"
#include "focklab/toeplitz.hpp"

namespace focklab {

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;

RealMatrix parse_frame(const std::string& text, std::size_t n) {
  if (text == "real") return frame_real(n);
  if (text == "imaginary") return frame_imaginary(n);
  if (text == "diagonal") return frame_diagonal(n);
  const auto rows = parse_complex_rows(text);
  if (rows.size() != n) throw std::invalid_argument("frame: expected " + std::to_string(n) + " vectors");
  RealMatrix B(2 * static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  for (std::size_t c = 0; c < n; ++c) {
    if (rows[c].size() != 2 * n) throw std::invalid_argument("frame: each vector needs 2n entries");
    for (std::size_t j = 0; j < 2 * n; ++j) {
      if (rows[c][j].imag() != 0.0) throw std::invalid_argument("frame: entries must be real");
      B(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(c)) = rows[c][j].real();
    }
  }
  return B;
}

LagrangianFrame make_frame(const std::string& frame, const std::string& rotation, std::size_t n) {
  const RealMatrix B = parse_frame(frame, n);
  if (rotation == "auto") return LagrangianFrame::from_basis(B);
  const auto rows = parse_complex_rows(rotation);
  ComplexMatrix X(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  if (rows.size() != n) throw std::invalid_argument("rotation: expected an n x n matrix");
  for (std::size_t i = 0; i < n; ++i) {
    if (rows[i].size() != n) throw std::invalid_argument("rotation: expected an n x n matrix");
    for (std::size_t j = 0; j < n; ++j) X(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = rows[i][j];
  }
  return LagrangianFrame::with_rotation(B, X);
}

namespace {

json complex_json(cplx v) { return json::array({v.real(), v.imag()}); }

json matrix_json(const ComplexMatrix& M) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < M.rows(); ++i) {
    json r = json::array();
    for (Eigen::Index j = 0; j < M.cols(); ++j) r.push_back(complex_json(M(i, j)));
    rows.push_back(r);
  }
  return rows;
}

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

struct Context {
  ExperimentConfig cfg;
  fs::path out;
  BasisSet basis;
  HalfIndex k;
  json results = json::object();
  std::vector<CheckRecord> checks;
  std::vector<std::string> artifacts;
  std::vector<std::function<void()>> writers;  // deferred until the run finishes
  std::string module = "config";

  double tol(double fallback) const { return cfg.tolerance >= 0.0 ? cfg.tolerance : fallback; }

  void check(std::string name, std::string property, double tolerance, double residual) {
    checks.push_back({std::move(name), std::move(property), tolerance, residual, residual <= tolerance});
  }

  void matrix(const std::string& stem, const ComplexMatrix& M) {
    artifacts.push_back(stem + ".csv");
    artifacts.push_back(stem + "_legend.csv");
    const fs::path p = out / (stem + ".csv");
    const fs::path l = out / (stem + "_legend.csv");
    writers.push_back([M, p, l, this] { write_matrix_csv(M, basis, p.string(), l.string()); });
  }

  void samples(const std::string& stem, const SpectralSamples& s) {
    artifacts.push_back(stem + ".csv");
    const fs::path p = out / (stem + ".csv");
    writers.push_back([s, p] { write_samples_csv(s, p.string()); });
  }

  void table(const std::string& name, std::string text) {
    artifacts.push_back(name);
    const fs::path p = out / name;
    writers.push_back([text = std::move(text), p] {
      std::ofstream f(p);
      if (!f) throw std::runtime_error("cannot write " + p.string());
      f << text;
    });
  }
};

// T_mu, or the real coderivative when k != 0.
ComplexMatrix operator_matrix(const Measure& mu, Context& c) {
  c.module = "toeplitz";
  return c.k.is_zero() ? assemble_toeplitz(mu, c.basis, c.cfg.quadrature).entries
                       : assemble_real_coderivative(mu, c.k, c.basis, c.cfg.quadrature).entries;
}

const RealMeasure& horizontal_part(const Measure& mu, const std::string& field, const ExperimentConfig& cfg) {
  const auto* h = mu.as<Measure::Horizontal>();
  if (!h) cfg.fail(field, "this command needs a horizontal measure, i.e. horizontal(R); got " + mu.describe());
  return h->rho;
}

void cmd_assemble(Context& c) {
  const Measure mu = parse_measure(c.cfg.measure, c.cfg.n);
  const ComplexMatrix T = operator_matrix(mu, c);
  c.matrix("operator", T);
  c.results["size"] = c.basis.size();
  c.results["interior_size"] = c.basis.interior_size();
  c.results["max_entry"] = T.cwiseAbs().maxCoeff();
  if (is_real_measure(mu)) {
    c.check("self_adjoint", "a real symbol gives a self-adjoint operator", c.tol(1e-10),
            (T - T.adjoint()).cwiseAbs().maxCoeff());
  }
  if (mu.as<Measure::Lebesgue>() && c.k.is_zero()) {
    const ComplexMatrix I = ComplexMatrix::Identity(T.rows(), T.cols());
    c.check("identity_symbol", "the Lebesgue symbol gives the identity", c.tol(1e-10), (T - I).cwiseAbs().maxCoeff());
  }
}

void cmd_berezin(Context& c) {
  const Measure mu = parse_measure(c.cfg.measure, c.cfg.n);
  const ComplexMatrix T = operator_matrix(mu, c);
  const auto points = config_points(c.cfg);
  std::string csv;
  for (std::size_t j = 0; j < c.cfg.n; ++j) csv += "re_z" + std::to_string(j + 1) + ",im_z" + std::to_string(j + 1) + ",";
  csv += "re_measure,im_measure,re_operator,im_operator,kernel_norm,in_domain\n";
  double worst = 0.0;
  std::size_t used = 0;
  json rows = json::array();
  for (const auto& z : points) {
    c.module = "toeplitz";
    const cplx direct = c.k.is_zero() ? berezin_measure(mu, z, c.cfg.quadrature)
                                      : berezin_coderivative(mu, c.k, z, c.cfg.quadrature);
    const BerezinOperatorValue op = berezin_operator(T, c.basis, z);
    if (op.in_domain) {
      worst = std::max(worst, std::abs(direct - op.value));
      ++used;
    }
    for (Eigen::Index j = 0; j < z.size(); ++j) csv += fmt(z(j).real()) + "," + fmt(z(j).imag()) + ",";
    csv += fmt(direct.real()) + "," + fmt(direct.imag()) + "," + fmt(op.value.real()) + "," + fmt(op.value.imag()) +
           "," + fmt(op.kernel_norm) + "," + (op.in_domain ? "1" : "0") + "\n";
    rows.push_back({{"measure", complex_json(direct)}, {"operator", complex_json(op.value)},
                    {"kernel_norm", op.kernel_norm}, {"in_domain", op.in_domain}});
  }
  c.table("berezin.csv", csv);
  c.results["points"] = rows;
  c.results["points_in_domain"] = used;
  if (used > 0) {
    c.check("berezin_consistency",
            "the Berezin transform of the assembled operator equals the Gaussian convolution of the symbol",
            c.tol(1e-6), worst);
  }
}

void cmd_carleson(Context& c) {
  const Measure mu = parse_measure(c.cfg.measure, c.cfg.n);
  const Lattice lattice{c.cfg.window, c.cfg.spacing};
  RealVector r = RealVector::Ones(static_cast<Eigen::Index>(c.cfg.n));
  for (std::size_t j = 0; j < c.cfg.r.size(); ++j) r(static_cast<Eigen::Index>(j)) = c.cfg.r[j];
  c.module = "carleson";
  const CarlesonReport C = carleson_constant(mu, c.k, r, lattice, c.cfg.quadrature);
  const auto report = [](const CarlesonReport& rep) {
    json j{{"sup_estimate", rep.sup_estimate}, {"interior_max", rep.interior_max}, {"boundary_max", rep.boundary_max},
           {"verdict", rep.verdict()}, {"samples", rep.samples}};
    json arg = json::array();
    for (Eigen::Index i = 0; i < rep.argmax.size(); ++i) arg.push_back(complex_json(rep.argmax(i)));
    j["argmax"] = arg;
    return j;
  };
  c.results["carleson_constant"] = report(C);
  c.results["condition_M"] = report(condition_M(mu, lattice, c.cfg.quadrature));
  c.results["condition_M_normalized"] = report(condition_M_normalized(mu, lattice, c.cfg.quadrature));
  if (c.k.is_integer()) {
    const KfcReport kfc = kfc_verdict(mu, c.k.as_integer(), c.basis, c.cfg.quadrature, c.cfg.seed);
    c.results["form_test"] = {{"omega", kfc.omega},
                              {"omega_half", kfc.omega_half},
                              {"random_estimate", kfc.random_estimate},
                              {"random_trials", kfc.random_trials},
                              {"seed", kfc.seed},
                              {"verdict", kfc.growth_detected ? "growth-detected" : "bounded-on-window"}};
  }
  if (!c.cfg.two_p.empty()) {
    const HalfIndex p = HalfIndex::from_doubled(c.cfg.two_p);
    if (!c.k.geq(p)) c.cfg.fail("two_p", "weight shift needs p <= k componentwise");
    const WeightShiftReport ws = weight_shift(mu, c.k, p, r, lattice, c.cfg.quadrature);
    c.results["weight_shift"] = {{"C_k", ws.C_k},
                                 {"C_k_minus_p_of_mu_p", ws.C_kmp_of_mu_p},
                                 {"C_p_of_mu_k_minus_p", ws.C_p_of_mu_kmp},
                                 {"error_k_minus_p_orientation", ws.error_kmp_orientation},
                                 {"error_p_orientation", ws.error_p_orientation},
                                 {"error_mass", ws.error_mass}};
    c.check("weight_shift_best_orientation",
            "C_k(mu, r) agrees with the weight-shifted constant in at least one index orientation", c.tol(1e-9),
            std::min(ws.error_kmp_orientation, ws.error_p_orientation));
  }
}

void cmd_spectral(Context& c) {
  const Measure mu = parse_measure(c.cfg.measure, c.cfg.n);
  const RealMeasure& rho = horizontal_part(mu, "measure", c.cfg);
  c.module = "spectral";
  const auto grid = uniform_grid(c.cfg.n, c.cfg.grid_lo, c.cfg.grid_hi, c.cfg.grid_count);
  const SpectralSamples g = c.k.is_zero() ? gamma_plain(rho, grid, c.cfg.quadrature.spectral_order)
                                          : gamma_2k(rho, c.k, grid, c.cfg.quadrature.spectral_order);
  c.samples("gamma", g);
  const ComplexMatrix T = operator_matrix(mu, c);
  c.module = "spectral";
  const SpectrumReport s = norm_and_spectrum(T, g);
  c.results["norm"] = s.norm;
  c.results["spectral_radius"] = s.spectral_radius;
  c.results["gamma_sup"] = s.gamma_sup;
  c.results["norm_gap"] = std::abs(s.norm - s.gamma_sup);
  c.results["eigen_to_range"] = s.eigen_to_range;
  c.results["range_to_eigen"] = s.range_to_eigen;
  std::string csv = "re,im\n";
  for (cplx l : s.eigenvalues) csv += fmt(l.real()) + "," + fmt(l.imag()) + "\n";
  c.table("eigenvalues.csv", csv);
  c.check("truncated_norm_bounded", "the truncated operator norm does not exceed sup |gamma|", c.tol(1e-6),
          std::max(0.0, s.norm - s.gamma_sup));
}

void cmd_verify_diagonalization(Context& c) {
  const Measure mu = parse_measure(c.cfg.measure, c.cfg.n);
  c.module = "spectral";
  const DiagonalizationReport d = diagonalization_residual(mu, c.k, c.basis, c.cfg.quadrature);
  c.matrix("operator", d.toeplitz);
  c.matrix("multiplication", d.multiplication);
  const auto grid = uniform_grid(c.cfg.n, c.cfg.grid_lo, c.cfg.grid_hi, c.cfg.grid_count);
  const RealMeasure& rho = horizontal_part(mu, "measure", c.cfg);
  c.samples("gamma", c.k.is_zero() ? gamma_plain(rho, grid, c.cfg.quadrature.spectral_order)
                                   : gamma_2k(rho, c.k, grid, c.cfg.quadrature.spectral_order));
  c.results["interior_size"] = d.interior_size;
  c.check("diagonalization",
          "the operator is unitarily equivalent to multiplication by its spectral function (interior block)",
          c.tol(1e-5), d.residual);
}

void cmd_commutativity(Context& c) {
  const Measure a = parse_measure(c.cfg.measure, c.cfg.n);
  const Measure b = parse_measure(c.cfg.measure2, c.cfg.n);
  const ComplexMatrix A = operator_matrix(a, c);
  const ComplexMatrix B = operator_matrix(b, c);
  const double norm = commutator_interior_norm(A, B, c.basis);
  c.results["commutator_norm"] = norm;

  // same commutator from matrices truncated at 2D, restricted to the same block
  const BasisSet wide(c.cfg.n, 2 * c.cfg.D);
  const auto assemble_wide = [&](const Measure& mu) {
    return c.k.is_zero() ? assemble_toeplitz(mu, wide, c.cfg.quadrature).entries
                         : assemble_real_coderivative(mu, c.k, wide, c.cfg.quadrature).entries;
  };
  const ComplexMatrix Aw = assemble_wide(a);
  const ComplexMatrix Bw = assemble_wide(b);
  const auto m = static_cast<Eigen::Index>(c.basis.interior_size());
  const ComplexMatrix Cw = (Aw * Bw - Bw * Aw).topLeftCorner(m, m);
  c.results["commutator_norm_wide"] = Eigen::JacobiSVD<ComplexMatrix>(Cw).singularValues()(0);

  const bool both = a.as<Measure::Horizontal>() && b.as<Measure::Horizontal>();
  c.results["both_horizontal"] = both;
  if (both) {
    c.check("horizontal_commute", "operators with horizontal symbols commute", c.tol(1e-6), norm);
  }
}

void cmd_lagrangian(Context& c) {
  const Measure mu = parse_measure(c.cfg.measure, c.cfg.n);
  c.module = "lagrangian";
  const RealMatrix B = parse_frame(c.cfg.frame, c.cfg.n);
  const LagrangianCheck lc = is_lagrangian(B);
  c.results["lagrangian"] = {{"max_violation", lc.max_violation}, {"rank", lc.rank}};
  if (!lc.lagrangian) c.cfg.fail("frame", "the frame does not span a Lagrangian plane");
  const LagrangianFrame frame = make_frame(c.cfg.frame, c.cfg.rotation, c.cfg.n);
  const RotationCheck rc = validate_rotation(frame.basis, frame.X);
  c.results["rotation"] = matrix_json(frame.X);
  c.check("rotation_valid", "the rotation is unitary and maps the plane onto iR^n", c.tol(1e-12),
          std::max(rc.unitarity, rc.real_part));

  const InvarianceReport inv = l_invariance_test(mu, frame, c.basis, c.cfg.quadrature);
  c.results["berezin_y_variation"] = inv.berezin_y_variation;
  c.results["weyl_commutator"] = inv.weyl_commutator;
  c.results["invariant"] = inv.invariant;

  const ComplexMatrix L = assemble_L_real_coderivative(mu, c.k, frame, c.basis, c.cfg.quadrature).entries;
  c.matrix("operator", L);
  const Measure rotated = pushforward(mu, frame.X.adjoint());
  if (const auto* h = rotated.as<Measure::Horizontal>()) {
    c.module = "spectral";
    const ComplexMatrix M = multiplication_matrix(gamma_function(h->rho, c.k, c.cfg.quadrature.spectral_order),
                                                  c.basis, c.cfg.quadrature.spectral_order, c.k.twice().total());
    c.matrix("multiplication", M);
    c.check("lagrangian_diagonalization",
            "the rotated operator is unitarily equivalent to multiplication by the spectral function of the rotated symbol",
            c.tol(1e-5), interior_max(L - M, c.basis));
  } else {
    c.results["diagonalization"] = "skipped: the rotated measure is not a horizontal product";
  }
}

json checks_json(const std::vector<CheckRecord>& checks) {
  json out = json::array();
  for (const auto& ch : checks) {
    out.push_back({{"name", ch.name}, {"property", ch.property}, {"tolerance", ch.tolerance},
                   {"residual", ch.residual}, {"pass", ch.pass}});
  }
  return out;
}

}  // namespace

RunOutcome run(ExperimentConfig cfg, const std::string& out_dir, std::optional<std::uint64_t> seed) {
  if (seed) cfg.seed = *seed;
  Context c;
  c.cfg = cfg;
  c.out = out_dir;
  RunOutcome outcome;
  json summary{{"tool", "fock-lab"}, {"command", cfg.command}, {"seed", cfg.seed}};
  std::string status = "pass";

  std::error_code ec;
  fs::create_directories(c.out, ec);
  if (ec) throw std::runtime_error("cannot create output directory " + out_dir + ": " + ec.message());

  try {
    c.k = cfg.two_k.empty() ? HalfIndex::zeros(cfg.n) : HalfIndex::from_doubled(cfg.two_k);
    c.module = "fock_basis";
    c.basis = BasisSet(cfg.n, cfg.D);
    summary["basis"] = {{"n", cfg.n}, {"D", cfg.D}, {"size", c.basis.size()},
                        {"interior_size", c.basis.interior_size()}};
    if (cfg.command == "assemble") {
      cmd_assemble(c);
    } else if (cfg.command == "berezin") {
      cmd_berezin(c);
    } else if (cfg.command == "carleson") {
      cmd_carleson(c);
    } else if (cfg.command == "spectral") {
      cmd_spectral(c);
    } else if (cfg.command == "verify-diagonalization") {
      cmd_verify_diagonalization(c);
    } else if (cfg.command == "commutativity") {
      cmd_commutativity(c);
    } else if (cfg.command == "lagrangian") {
      cmd_lagrangian(c);
    } else {
      cfg.fail("command", "unknown command '" + cfg.command + "'");
    }
    c.module = "output";
    for (const auto& w : c.writers) w();
    outcome.exit_code = exit_success;
    for (const auto& ch : c.checks) {
      if (!ch.pass) {
        outcome.exit_code = exit_verification_failed;
        status = "verification-failed";
      }
    }
  } catch (const ConfigError& e) {
    outcome.exit_code = exit_invalid_input;
    status = "invalid-input";
    summary["error"] = {{"module", "config"}, {"field", e.field()}, {"message", e.what()}};
  } catch (const std::exception& e) {
    outcome.exit_code = exit_invalid_input;
    status = "invalid-input";
    json err{{"module", c.module}, {"message", e.what()}};
    if (const auto* nf = dynamic_cast<const NonFiniteIntegrand*>(&e)) err["node"] = nf->node();
    summary["error"] = err;
  }

  summary["status"] = status;
  summary["exit_code"] = outcome.exit_code;
  summary["checks"] = checks_json(c.checks);
  summary["results"] = c.results;
  if (outcome.exit_code != exit_invalid_input) outcome.artifacts = c.artifacts;
  outcome.artifacts.insert(outcome.artifacts.begin(), {"resolved.cfg", "summary.json"});
  summary["artifacts"] = outcome.artifacts;
  outcome.checks = c.checks;
  outcome.summary = summary.dump(2) + "\n";

  std::ofstream(c.out / "resolved.cfg") << resolved_config(cfg);
  std::ofstream(c.out / "summary.json") << outcome.summary;
  return outcome;
}

}  // namespace focklab
