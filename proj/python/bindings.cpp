#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "circrmt/ensembles.hpp"
#include "circrmt/esd.hpp"
#include "circrmt/limits.hpp"
#include "circrmt/partitions.hpp"
#include "circrmt/spectra.hpp"
#include "circrmt/trace_mc.hpp"
#include "circrmt/verify.hpp"

namespace py = pybind11;
using namespace circrmt;

namespace {

EnsembleSpec make_spec(const std::string& ensemble, std::size_t n, std::optional<double> theta) {
  EnsembleSpec spec{parse_ensemble(ensemble), n, theta};
  if (requires_theta(spec.kind) && !spec.theta) spec.theta = std::numbers::pi;
  spec.validate();
  return spec;
}

py::dict limit_dict(const LimitValue& v) {
  py::dict d;
  d["value"] = v.value;
  d["method"] = std::string(to_string(v.method));
  d["mc_error"] = v.mc_error;
  d["n_terms"] = v.n_terms;
  d["n_crossing"] = v.n_crossing;
  return d;
}

LimitOptions limit_options(std::size_t mc_points, std::uint64_t seed, bool riemann) {
  LimitOptions lo;
  lo.mc_points = mc_points;
  lo.seed = seed;
  lo.crossing = riemann ? CrossingMethod::Riemann : CrossingMethod::MonteCarlo;
  return lo;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "circrmt native module";
  m.attr("__version__") = "0.1.0";
  m.attr("DEFAULT_SEED") = kDefaultSeed;

  py::register_exception<WordParseError>(m, "WordParseError", PyExc_ValueError);
  py::register_exception<ResourceLimitError>(m, "ResourceLimitError", PyExc_RuntimeError);

  m.def("sample_input",
        [](const std::string& dist, std::size_t len, std::uint64_t seed) {
          return sample_input(parse_distribution(dist), len, seed).values;
        },
        py::arg("dist"), py::arg("length"), py::arg("seed"));

  m.def("build",
        [](const std::string& ensemble, std::vector<double> values, std::size_t n, std::optional<double> theta) {
          if (n == 0) {
            const auto k = parse_ensemble(ensemble);
            n = (k == EnsembleKind::ToeplitzNonsym || k == EnsembleKind::Hankel) ? (values.size() + 1) / 2 : values.size();
          }
          return build(make_spec(ensemble, n, theta), values);
        },
        py::arg("ensemble"), py::arg("values") = std::vector<double>{}, py::arg("n") = 0, py::arg("theta") = py::none(),
        "Dense matrix of an ensemble; n is inferred from the input length when omitted.");

  m.def("spectrum",
        [](const std::string& ensemble, std::vector<double> values, std::size_t n, std::optional<double> theta,
           double normalization) {
          if (n == 0) {
            const auto k = parse_ensemble(ensemble);
            n = (k == EnsembleKind::ToeplitzNonsym || k == EnsembleKind::Hankel) ? (values.size() + 1) / 2 : values.size();
          }
          return spectrum(make_spec(ensemble, n, theta), values, normalization).eigenvalues;
        },
        py::arg("ensemble"), py::arg("values") = std::vector<double>{}, py::arg("n") = 0, py::arg("theta") = py::none(),
        py::arg("normalization") = 1.0);

  m.def("check_decompositions",
        [](std::size_t n, std::uint64_t seed) {
          py::dict d;
          for (const auto& c : check_decompositions(n, seed)) d[py::str(c.name)] = c.relative();
          return d;
        },
        py::arg("n"), py::arg("seed") = kDefaultSeed);

  m.def("trace_moment_mc",
        [](const std::string& word, std::size_t n, std::size_t replicates, std::uint64_t seed, double theta,
           const std::string& dist, unsigned threads, bool dense) {
          McOptions o;
          o.n = n;
          o.replicates = replicates;
          o.seed = seed;
          o.theta = theta;
          o.distribution = parse_distribution(dist);
          o.threads = threads;
          o.path = dense ? ProductPath::Dense : ProductPath::Structured;
          const auto e = trace_moment_mc(parse_word(word), o);
          py::dict d;
          d["mean"] = e.mean;
          d["std_error"] = e.std_error;
          d["replicates"] = e.replicates;
          d["n"] = e.n;
          return d;
        },
        py::arg("word"), py::arg("n") = 256, py::arg("replicates") = 100, py::arg("seed") = kDefaultSeed,
        py::arg("theta") = std::numbers::pi, py::arg("dist") = "gaussian", py::arg("threads") = 1,
        py::arg("dense") = false);

  m.def("enumerate_pair_partitions",
        [](int two_m) {
          std::vector<std::vector<std::pair<int, int>>> out;
          for (const auto& p : enumerate_pair_partitions(two_m)) out.push_back(p.pairs());
          return out;
        },
        py::arg("two_m"));

  m.def("limit_word",
        [](const std::string& word, double theta, std::size_t mc_points, std::uint64_t seed, bool riemann) {
          return limit_dict(limit_word(parse_word(word), theta, limit_options(mc_points, seed, riemann)));
        },
        py::arg("word"), py::arg("theta") = std::numbers::pi, py::arg("mc_points") = 2'000'000,
        py::arg("seed") = kDefaultSeed, py::arg("riemann") = false);

  m.def("limit_mixed_moment_cd",
        [](std::vector<bool> star, std::vector<int> powers, double theta, std::size_t mc_points, std::uint64_t seed,
           bool riemann) {
          return limit_dict(limit_mixed_moment_CD(EpsilonPattern(star, powers), theta,
                                                  limit_options(mc_points, seed, riemann)));
        },
        py::arg("star"), py::arg("powers") = std::vector<int>{}, py::arg("theta") = std::numbers::pi,
        py::arg("mc_points") = 2'000'000, py::arg("seed") = kDefaultSeed, py::arg("riemann") = false);

  m.def("toeplitz_lsd_moment", [](int p) { return limit_dict(toeplitz_lsd_moment(p)); }, py::arg("p"));
  m.def("hankel_lsd_moment", [](int p) { return limit_dict(hankel_lsd_moment(p)); }, py::arg("p"));

  m.def("rayleigh_moment", &rayleigh_moment, py::arg("p"));
  m.def("rayleigh_cdf", &rayleigh_cdf, py::arg("x"));
  m.def("gaussian_moment", &gaussian_moment, py::arg("p"));
  m.def("arc_moment", &arc_moment, py::arg("theta"), py::arg("k"));
  m.def("complex_gaussian_mixed_moment", &complex_gaussian_mixed_moment, py::arg("k"), py::arg("l"));
  m.def("is_symmetric_monomial", py::overload_cast<std::string_view>(&is_symmetric_monomial), py::arg("word"));

  m.def("ks_rayleigh", [](std::vector<double> sample) { return ks_distance(sample, rayleigh_cdf); }, py::arg("sample"));
  m.def("empirical_moments",
        [](std::vector<cplx> eigenvalues, int max_p) { return empirical_moments(eigenvalues, max_p); },
        py::arg("eigenvalues"), py::arg("max_p"));

  m.def("verify",
        [](const std::string& level, std::uint64_t seed, std::vector<int> criteria) {
          VerifyOptions o;
          o.level = parse_level(level);
          o.seed = seed;
          o.criteria = std::move(criteria);
          const auto r = run_verify(o);
          return py::make_tuple(r.passed(), report_text(r));
        },
        py::arg("level") = "fast", py::arg("seed") = 7, py::arg("criteria") = std::vector<int>{});
}
