// circrmt: structured random matrices, finite-n moments and limiting moments.

#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <memory>
#include <numbers>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"

#include "circrmt/ensembles.hpp"
#include "circrmt/esd.hpp"
#include "circrmt/limits.hpp"
#include "circrmt/partitions.hpp"
#include "circrmt/spectra.hpp"
#include "circrmt/trace_mc.hpp"
#include "circrmt/verify.hpp"

using namespace circrmt;
using nlohmann::json;

namespace {

unsigned default_threads() {
  if (const char* env = std::getenv("CIRCRMT_THREADS")) {
    const long v = std::strtol(env, nullptr, 10);
    if (v >= 1) return static_cast<unsigned>(v);
  }
  return 1;
}

struct Common {
  std::uint64_t seed = kDefaultSeed;
  unsigned threads = default_threads();
  std::string output;
  std::string format = "json";
  std::string dist = "gaussian";
};

struct Sink {
  std::ofstream file;
  std::ostream* os = &std::cout;
  explicit Sink(const std::string& path) {
    if (path.empty() || path == "-") return;
    file.open(path);
    if (!file) throw std::runtime_error("cannot open output file " + path);
    os = &file;
  }
  std::ostream& operator*() { return *os; }
};

void add_common(CLI::App* cmd, Common& c, bool with_format = true) {
  cmd->add_option("--seed", c.seed, "RNG seed")->capture_default_str();
  cmd->add_option("--threads", c.threads, "worker threads (default: CIRCRMT_THREADS or 1)")
      ->check(CLI::PositiveNumber);
  cmd->add_option("-o,--output", c.output, "output file (default: stdout)");
  if (with_format) cmd->add_option("--format", c.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
  cmd->add_option("--dist", c.dist, "entry distribution: gaussian, rademacher, uniform")->capture_default_str();
}

EnsembleSpec make_spec(const std::string& name, std::size_t n, const std::optional<double>& theta) {
  EnsembleSpec spec{parse_ensemble(name), n, std::nullopt};
  if (requires_theta(spec.kind)) spec.theta = theta.value_or(std::numbers::pi);
  else if (theta) throw std::invalid_argument("ensemble " + name + " takes no theta");
  spec.validate();
  return spec;
}

json complex_json(cplx z) { return json::array({z.real(), z.imag()}); }

void dump(std::ostream& os, const json& j) { os << std::setw(2) << j << '\n'; }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"circrmt: circulant-type, Toeplitz and Hankel random matrices"};
  app.require_subcommand(1);

  // gen
  Common gen_c;
  std::string gen_ensemble = "circulant";
  std::size_t gen_n = 8;
  std::optional<double> gen_theta;
  auto* gen = app.add_subcommand("gen", "build one matrix");
  gen->add_option("-e,--ensemble", gen_ensemble, "ensemble name")->required();
  gen->add_option("-n,--n", gen_n, "dimension")->check(CLI::PositiveNumber);
  gen->add_option("--theta", gen_theta, "angle for tilde-circulant and diag");
  add_common(gen, gen_c);

  // spectrum
  Common sp_c;
  std::string sp_ensemble = "circulant";
  std::size_t sp_n = 256;
  std::optional<double> sp_theta;
  bool sp_raw = false;
  auto* sp = app.add_subcommand("spectrum", "eigenvalues of one realization");
  sp->add_option("-e,--ensemble", sp_ensemble, "ensemble name")->required();
  sp->add_option("-n,--n", sp_n, "dimension")->check(CLI::PositiveNumber);
  sp->add_option("--theta", sp_theta, "angle for tilde-circulant and diag");
  sp->add_flag("--raw", sp_raw, "do not scale random ensembles by n^{-1/2}");
  add_common(sp, sp_c);

  // esd
  Common esd_c;
  esd_c.format = "csv";
  std::string esd_ensemble = "left-skew";
  std::size_t esd_n = 1024, esd_reps = 10;
  std::optional<double> esd_theta;
  std::optional<std::size_t> esd_bins;
  std::string esd_summary;
  auto* esd = app.add_subcommand("esd", "pooled empirical spectral distribution");
  esd->add_option("-e,--ensemble", esd_ensemble, "ensemble name")->required();
  esd->add_option("-n,--n", esd_n, "dimension")->check(CLI::PositiveNumber);
  esd->add_option("--reps", esd_reps, "replicates")->check(CLI::PositiveNumber);
  esd->add_option("--theta", esd_theta, "angle for tilde-circulant and diag");
  esd->add_option("--bins", esd_bins, "histogram bins (default: Freedman-Diaconis)");
  esd->add_option("--summary", esd_summary, "write the JSON summary here instead of stderr");
  add_common(esd, esd_c);

  // moment
  Common mo_c;
  std::string mo_word;
  McOptions mo;
  std::string mo_path = "structured";
  bool mo_raw = false, mo_values = false;
  auto* mom = app.add_subcommand("moment", "Monte Carlo estimate of n^{-1} E Tr(word)");
  mom->add_option("-w,--word", mo_word, "word, e.g. \"C C* S S*\"")->required();
  mom->add_option("-n,--n", mo.n, "dimension")->check(CLI::PositiveNumber);
  mom->add_option("--reps", mo.replicates, "replicates (at least 2)");
  mom->add_option("--theta", mo.theta, "angle of C~ and D letters");
  mom->add_option("--path", mo_path, "structured or dense")->check(CLI::IsMember({"structured", "dense"}));
  mom->add_flag("--raw", mo_raw, "do not scale random letters by n^{-1/2}");
  mom->add_flag("--per-replicate", mo_values, "include per-replicate values");
  add_common(mom, mo_c, false);

  // limit
  Common li_c;
  std::string li_word, li_pattern, li_powers;
  double li_theta = std::numbers::pi;
  LimitOptions lo;
  bool li_riemann = false, li_dump = false;
  auto* lim = app.add_subcommand("limit", "limiting moment via pair partitions");
  lim->add_option("-w,--word", li_word, "word in C, C~, S, T, Ts, D or in R, L, H");
  lim->add_option("--pattern", li_pattern, "epsilon pattern such as \"1 * 1 *\" (instead of --word)");
  lim->add_option("--powers", li_powers, "diag powers for --pattern, e.g. \"1 1 1 -1\"");
  lim->add_option("--theta", li_theta, "angle")->capture_default_str();
  lim->add_option("--mc-points", lo.mc_points, "Monte Carlo points for crossing terms")->capture_default_str();
  lim->add_flag("--riemann", li_riemann, "midpoint Riemann grid instead of Monte Carlo");
  lim->add_option("--grid", lo.riemann_grid, "Riemann grid per axis")->capture_default_str();
  lim->add_flag("--dump-terms", li_dump, "include the admissible terms");
  add_common(lim, li_c, false);

  // verify
  Common ve_c;
  ve_c.seed = 7;
  std::string ve_level = "fast";
  std::vector<int> ve_criteria;
  auto* ver = app.add_subcommand("verify", "acceptance checks");
  ver->add_option("--level", ve_level, "fast or full")->check(CLI::IsMember({"fast", "full"}));
  ver->add_option("--criterion", ve_criteria, "run only these criteria (1-9)");
  add_common(ver, ve_c, false);

  // study
  Common st_c;
  st_c.format = "csv";
  std::string st_ensemble = "hankel";
  std::vector<std::size_t> st_grid{256, 1024};
  std::size_t st_reps = 4;
  std::optional<double> st_theta;
  auto* st = app.add_subcommand("study", "convergence study over a grid of n");
  st->add_option("-e,--ensemble", st_ensemble, "ensemble name")->required();
  st->add_option("--n-grid", st_grid, "ascending dimensions")->delimiter(',');
  st->add_option("--reps", st_reps, "replicates per n")->check(CLI::PositiveNumber);
  st->add_option("--theta", st_theta, "angle for tilde-circulant and diag");
  add_common(st, st_c);

  CLI11_PARSE(app, argc, argv);

  try {
    if (*gen) {
      const auto spec = make_spec(gen_ensemble, gen_n, gen_theta);
      const auto input = sample_input(parse_distribution(gen_c.dist), std::max<std::size_t>(1, spec.input_length()), gen_c.seed);
      std::vector<double> values = spec.input_length() ? input.values : std::vector<double>{};
      const DenseMatrix m = build(spec, values);
      Sink out(gen_c.output);
      if (gen_c.format == "csv") {
        *out << "row,col,re,im\n" << std::setprecision(17);
        for (Eigen::Index i = 0; i < m.rows(); ++i)
          for (Eigen::Index j = 0; j < m.cols(); ++j) *out << i << ',' << j << ',' << m(i, j).real() << ',' << m(i, j).imag() << '\n';
      } else {
        json rows = json::array();
        for (Eigen::Index i = 0; i < m.rows(); ++i) {
          json row = json::array();
          for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(complex_json(m(i, j)));
          rows.push_back(row);
        }
        dump(*out, {{"ensemble", to_string(spec.kind)}, {"n", spec.n}, {"theta", spec.theta ? json(*spec.theta) : json()},
                    {"seed", gen_c.seed}, {"distribution", gen_c.dist}, {"input", values}, {"matrix", rows}});
      }
    } else if (*sp) {
      const auto spec = make_spec(sp_ensemble, sp_n, sp_theta);
      std::vector<double> values;
      if (spec.input_length()) values = sample_input(parse_distribution(sp_c.dist), spec.input_length(), sp_c.seed).values;
      const double scale = (is_random(spec.kind) && !sp_raw) ? 1.0 / std::sqrt(static_cast<double>(spec.n)) : 1.0;
      const auto s = spectrum(spec, values, scale);
      Sink out(sp_c.output);
      if (sp_c.format == "csv") {
        *out << "index,re,im\n" << std::setprecision(17);
        for (std::size_t j = 0; j < s.size(); ++j) *out << j << ',' << s.eigenvalues[j].real() << ',' << s.eigenvalues[j].imag() << '\n';
      } else {
        json ev = json::array();
        for (const auto& z : s.eigenvalues) ev.push_back(complex_json(z));
        dump(*out, {{"ensemble", to_string(spec.kind)}, {"n", spec.n}, {"seed", sp_c.seed}, {"normalization", scale}, {"eigenvalues", ev}});
      }
    } else if (*esd) {
      const auto spec = make_spec(esd_ensemble, esd_n, esd_theta);
      const auto pooled = pooled_spectrum(spec, esd_reps, esd_c.seed, parse_distribution(esd_c.dist), esd_c.threads);
      json summary{{"ensemble", to_string(spec.kind)}, {"n", spec.n}, {"replicates", esd_reps}, {"seed", esd_c.seed},
                   {"distribution", esd_c.dist}};
      const bool complex_law = spec.kind == EnsembleKind::Circulant || spec.kind == EnsembleKind::SkewCirculant ||
                               spec.kind == EnsembleKind::TildeCirculant || spec.kind == EnsembleKind::DiagonalD;
      Sink out(esd_c.output);
      if (complex_law) {
        const auto e = esd_complex(pooled.eigenvalues);
        if (spec.kind != EnsembleKind::DiagonalD) {
          summary["ks_re"] = e.ks_re;
          summary["ks_im"] = e.ks_im;
          summary["covariance"] = {{e.covariance(0, 0), e.covariance(0, 1)}, {e.covariance(1, 0), e.covariance(1, 1)}};
        }
        if (esd_c.format == "csv") {
          *out << "re,im\n" << std::setprecision(12);
          for (const auto& [re, im] : e.points) *out << re << ',' << im << '\n';
        } else {
          json pts = json::array();
          for (const auto& [re, im] : e.points) pts.push_back({re, im});
          summary["points"] = pts;
        }
      } else {
        std::vector<double> re;
        for (const auto& z : pooled.eigenvalues) re.push_back(z.real());
        const auto h = histogram(re, esd_bins);
        if (esd_c.format == "csv") write_csv(*out, h);
        else summary["histogram"] = {{"bin_edges", h.bin_edges}, {"counts", h.counts}, {"total", h.total}};
      }
      try {
        const auto s = summarize_esd(pooled);
        summary["statistic"] = s.statistic;
        summary["value"] = s.value;
        summary["per_replicate_mean"] = s.per_replicate_mean;
      } catch (const std::invalid_argument&) {
      }
      json moments = json::array();
      for (const auto& m : empirical_moments(pooled.eigenvalues, 4)) moments.push_back(complex_json(m));
      summary["moments"] = moments;
      if (esd_c.format == "json") dump(*out, summary);
      else if (!esd_summary.empty()) {
        Sink s(esd_summary);
        dump(*s, summary);
      } else dump(std::cerr, summary);
    } else if (*mom) {
      const Word w = parse_word(mo_word);
      mo.seed = mo_c.seed;
      mo.threads = mo_c.threads;
      mo.distribution = parse_distribution(mo_c.dist);
      mo.path = mo_path == "dense" ? ProductPath::Dense : ProductPath::Structured;
      mo.scale_random = !mo_raw;
      const auto est = trace_moment_mc(w, mo);
      json j{{"word", to_string(w)}, {"n", est.n}, {"replicates", est.replicates}, {"seed", mo.seed}, {"theta", mo.theta},
             {"distribution", mo_c.dist}, {"mean_re", est.mean.real()}, {"mean_im", est.mean.imag()}, {"std_error", est.std_error}};
      if (mo_values) {
        json v = json::array();
        for (const auto& z : est.per_replicate) v.push_back(complex_json(z));
        j["per_replicate"] = v;
      }
      Sink out(mo_c.output);
      dump(*out, j);
    } else if (*lim) {
      if (li_word.empty() == li_pattern.empty()) throw CLI::ValidationError("limit", "give exactly one of --word and --pattern");
      lo.seed = li_c.seed;
      lo.threads = li_c.threads;
      lo.crossing = li_riemann ? CrossingMethod::Riemann : CrossingMethod::MonteCarlo;
      LimitValue v;
      json j;
      if (!li_word.empty()) {
        const Word w = parse_word(li_word);
        v = limit_word(w, li_theta, lo);
        j["word"] = to_string(w);
        if (li_dump) {
          json terms = json::array();
          for (const auto& t : limit_word_terms(w, li_theta)) {
            json tj = t.term;
            tj["monomial"] = t.monomial;
            tj["weight"] = t.weight;
            tj["gap_rates"] = t.gap_rates;
            terms.push_back(tj);
          }
          j["terms"] = terms;
        }
      } else {
        EpsilonPattern pattern = EpsilonPattern::parse(li_pattern);
        if (!li_powers.empty()) {
          std::istringstream is(li_powers);
          std::vector<int> powers;
          for (int k; is >> k;) powers.push_back(k);
          pattern = EpsilonPattern(pattern.star, powers);
        }
        v = limit_mixed_moment_CD(pattern, li_theta, lo);
        j["word"] = li_pattern;
        if (li_dump && pattern.size() > 0) {
          json terms = json::array();
          for (const auto& p : enumerate_pair_partitions(static_cast<int>(pattern.size())))
            if (admissible(p, pattern)) terms.push_back(solve_index_system(p, pattern));
          j["terms"] = terms;
        }
      }
      j["theta"] = li_theta;
      j["value_re"] = v.value.real();
      j["value_im"] = v.value.imag();
      j["mc_error"] = v.mc_error;
      j["method"] = std::string(to_string(v.method));
      j["n_terms"] = v.n_terms;
      j["n_crossing"] = v.n_crossing;
      Sink out(li_c.output);
      dump(*out, j);
    } else if (*ver) {
      VerifyOptions vo;
      vo.level = parse_level(ve_level);
      vo.seed = ve_c.seed;
      vo.threads = ve_c.threads;
      vo.criteria = ve_criteria;
      const auto report = run_verify(vo);
      Sink out(ve_c.output);
      write_report(*out, report);
      std::cerr << "timings (not part of the report):\n";
      write_timings(std::cerr, report);
      return report.passed() ? 0 : 1;
    } else if (*st) {
      const auto spec = make_spec(st_ensemble, st_grid.empty() ? 1 : st_grid.front(), st_theta);
      const auto study = convergence_study(spec, st_grid, st_reps, st_c.seed, parse_distribution(st_c.dist), st_c.threads);
      Sink out(st_c.output);
      if (st_c.format == "csv") {
        write_csv(*out, study);
      } else {
        json rows = json::array();
        for (const auto& r : study.rows)
          rows.push_back({{"n", r.n}, {"statistic", r.summary.statistic}, {"value", r.summary.value},
                          {"per_replicate_mean", r.summary.per_replicate_mean}, {"m2", r.summary.moments[1].real()},
                          {"m4", r.summary.moments[3].real()}});
        dump(*out, {{"ensemble", to_string(spec.kind)}, {"replicates", st_reps}, {"seed", st_c.seed}, {"rows", rows},
                    {"decreasing", study.decreasing}});
      }
    }
  } catch (const WordParseError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return 2;
  } catch (const CLI::Error& e) {
    return app.exit(e);
  } catch (const std::invalid_argument& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
