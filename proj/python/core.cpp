#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "focklab/carleson.hpp"
#include "focklab/config.hpp"
#include "focklab/experiment.hpp"
#include "focklab/lagrangian.hpp"
#include "focklab/spectral.hpp"
#include "focklab/toeplitz.hpp"

namespace py = pybind11;
using namespace focklab;

namespace {

HalfIndex half(const std::vector<int>& two_k, std::size_t n) {
  return two_k.empty() ? HalfIndex::zeros(n) : HalfIndex::from_doubled(two_k);
}

QuadratureConfig quad(int moment_order, int spectral_order) {
  QuadratureConfig q;
  q.moment_order = moment_order;
  q.spectral_order = spectral_order;
  return q;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Toeplitz operators with measure symbols on truncated Fock spaces";

  py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);

  m.def(
      "basis_indices",
      [](std::size_t n, int D) {
        std::vector<std::vector<int>> out;
        const BasisSet basis(n, D);
        for (const auto& a : basis.indices()) out.emplace_back(a.entries().begin(), a.entries().end());
        return out;
      },
      py::arg("n"), py::arg("D"), "Multi-indices of the truncated basis in graded-lex order.");

  m.def(
      "assemble",
      [](const std::string& measure, std::size_t n, int D, const std::vector<int>& two_k, int moment_order) {
        const Measure mu = parse_measure(measure, n);
        const BasisSet basis(n, D);
        const HalfIndex k = half(two_k, n);
        const QuadratureConfig q = quad(moment_order, 80);
        return k.is_zero() ? assemble_toeplitz(mu, basis, q).entries
                           : assemble_real_coderivative(mu, k, basis, q).entries;
      },
      py::arg("measure"), py::arg("n") = 1, py::arg("D") = 10, py::arg("two_k") = std::vector<int>{},
      py::arg("moment_order") = 40, "Toeplitz (or real coderivative) matrix of a measure given in config grammar.");

  m.def(
      "berezin",
      [](const std::string& measure, const ComplexVector& z, int moment_order) {
        return berezin_measure(parse_measure(measure, static_cast<std::size_t>(z.size())), z, quad(moment_order, 80));
      },
      py::arg("measure"), py::arg("z"), py::arg("moment_order") = 40);

  m.def(
      "gamma",
      [](const std::string& rho, const std::vector<double>& x, const std::vector<int>& two_k, int order) {
        const std::size_t n = two_k.empty() ? 1 : two_k.size();
        const RealMeasure r = parse_real_measure(rho, n);
        const SpectralSamples s = gamma_2k(r, half(two_k, n), x, order);
        return s.values;
      },
      py::arg("rho"), py::arg("x"), py::arg("two_k") = std::vector<int>{}, py::arg("order") = 80,
      "Spectral function samples; x is node-major with n coordinates per point.");

  m.def(
      "diagonalization_residual",
      [](const std::string& rho, std::size_t n, int D, const std::vector<int>& two_k) {
        return diagonalization_residual(parse_real_measure(rho, n), half(two_k, n), BasisSet(n, D)).residual;
      },
      py::arg("rho"), py::arg("n") = 1, py::arg("D") = 10, py::arg("two_k") = std::vector<int>{});

  m.def(
      "carleson_constant",
      [](const std::string& measure, std::size_t n, const std::vector<int>& two_k, const std::vector<double>& r,
         double window, double spacing) {
        if (!r.empty() && r.size() != n) throw std::invalid_argument("r needs n radii");
        RealVector radii = RealVector::Ones(static_cast<Eigen::Index>(n));
        for (std::size_t j = 0; j < r.size(); ++j) radii(static_cast<Eigen::Index>(j)) = r[j];
        return carleson_constant(parse_measure(measure, n), half(two_k, n), radii, Lattice{window, spacing})
            .sup_estimate;
      },
      py::arg("measure"), py::arg("n") = 1, py::arg("two_k") = std::vector<int>{}, py::arg("r") = std::vector<double>{},
      py::arg("window") = 2.0, py::arg("spacing") = 0.25);

  m.def("rotation_to_vertical", &rotation_to_vertical, py::arg("basis"),
        "Unitary X taking the Lagrangian plane spanned by the columns of basis (2n x n) onto iR^n.");

  m.def(
      "weyl_matrix", [](const ComplexVector& h, int D) { return weyl_matrix(h, BasisSet(static_cast<std::size_t>(h.size()), D)); },
      py::arg("h"), py::arg("D") = 10);

  m.def(
      "run",
      [](const std::string& config_text, const std::string& out_dir, std::optional<std::uint64_t> seed) {
        std::istringstream in(config_text);
        const RunOutcome r = run(parse_config(in, "<python>"), out_dir, seed);
        return py::make_tuple(r.exit_code, r.summary);
      },
      py::arg("config"), py::arg("out_dir"), py::arg("seed") = py::none(),
      "Runs a config given as text; returns (exit_code, summary_json).");
}
