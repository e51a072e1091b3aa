#include "circrmt/limits.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>
#include <stdexcept>
#include <tuple>

#include "circrmt/parallel.hpp"
#include "circrmt/rng.hpp"

namespace circrmt {

std::string_view to_string(LimitMethod method) {
  switch (method) {
    case LimitMethod::ClosedForm: return "closed_form";
    case LimitMethod::MonteCarlo: return "mc_integration";
    case LimitMethod::Riemann: return "riemann";
  }
  return "unknown";
}

// ---- limit laws -------------------------------------------------------------

namespace {

double factorial(int k) {
  double f = 1.0;
  for (int i = 2; i <= k; ++i) f *= i;
  return f;
}

}  // namespace

double complex_gaussian_mixed_moment(int k, int l) {
  if (k < 0 || l < 0) throw std::invalid_argument("complex_gaussian_mixed_moment: negative order");
  return k == l ? factorial(k) : 0.0;
}

double rayleigh_moment(int p) {
  if (p < 0) throw std::invalid_argument("rayleigh_moment: negative order");
  return p % 2 ? 0.0 : factorial(p / 2);
}

double rayleigh_pdf(double x) { return std::abs(x) * std::exp(-x * x); }

double rayleigh_cdf(double x) { return x < 0 ? 0.5 * std::exp(-x * x) : 1.0 - 0.5 * std::exp(-x * x); }

double gaussian_moment(int p) {
  if (p < 0) throw std::invalid_argument("gaussian_moment: negative order");
  if (p % 2) return 0.0;
  double m = 1.0;
  for (int k = p - 1; k > 1; k -= 2) m *= k;
  return m;
}

double gaussian_pdf(double x, double variance) {
  return std::exp(-x * x / (2 * variance)) / std::sqrt(2 * std::numbers::pi * variance);
}

double gaussian_cdf(double x, double variance) { return 0.5 * std::erfc(-x / std::sqrt(2 * variance)); }

cplx exp_integral(double u) {
  if (u == 0.0) return 1.0;
  if (std::abs(u) < 1e-6) return {1.0 - u * u / 6.0, u / 2.0};
  return (std::exp(cplx(0.0, u)) - 1.0) / cplx(0.0, u);
}

cplx arc_moment(double theta, int k) { return exp_integral(theta * k); }

cplx LimitLaw::moment(int p) const {
  if (p < 0) throw std::invalid_argument("LimitLaw::moment: negative order");
  switch (kind) {
    case Kind::StandardComplexGaussian:
    case Kind::BivariateGaussianHalf: return p == 0 ? 1.0 : 0.0;
    case Kind::StandardGaussian: return gaussian_moment(p);
    case Kind::SymmetrizedRayleigh: return rayleigh_moment(p);
    case Kind::ArcOnCircle: return arc_moment(theta, p);
  }
  return 0.0;
}

double LimitLaw::pdf(double x) const {
  switch (kind) {
    case Kind::StandardComplexGaussian: throw std::logic_error("LimitLaw::pdf: complex Gaussian has no density on the real line");
    case Kind::BivariateGaussianHalf: return gaussian_pdf(x, 0.5);
    case Kind::StandardGaussian: return gaussian_pdf(x);
    case Kind::SymmetrizedRayleigh: return rayleigh_pdf(x);
    case Kind::ArcOnCircle: {
      const double lo = std::min(0.0, theta), hi = std::max(0.0, theta);
      return (x >= lo && x <= hi && hi > lo) ? 1.0 / (hi - lo) : 0.0;
    }
  }
  return 0.0;
}

double LimitLaw::cdf(double x) const {
  switch (kind) {
    case Kind::StandardComplexGaussian: throw std::logic_error("LimitLaw::cdf: complex Gaussian has no distribution function on the real line");
    case Kind::BivariateGaussianHalf: return gaussian_cdf(x, 0.5);
    case Kind::StandardGaussian: return gaussian_cdf(x);
    case Kind::SymmetrizedRayleigh: return rayleigh_cdf(x);
    case Kind::ArcOnCircle: {
      const double lo = std::min(0.0, theta), hi = std::max(0.0, theta);
      if (hi == lo) return x < 0 ? 0.0 : 1.0;
      return std::clamp((x - lo) / (hi - lo), 0.0, 1.0);
    }
  }
  return 0.0;
}

// ---- engine -----------------------------------------------------------------

namespace {

struct Atom {
  int id = 0;
  bool star = false;
  auto operator<=>(const Atom&) const = default;
};

// One random letter between diagonal phases; rates[r] multiplies i_{r+2}/n,
// i.e. the index that follows atom r.
struct Monomial {
  std::vector<Atom> atoms;
  std::vector<double> rates;
};

struct Piece {
  bool diagonal = false;
  double rate = 0.0;
  Atom atom;
};

struct Alternative {
  double coef = 1.0;
  std::vector<Piece> pieces;
};

using LetterExpansion = std::vector<Alternative>;

Monomial assemble(const std::vector<const Alternative*>& choice) {
  Monomial mono;
  double lead = 0.0;
  for (const Alternative* alt : choice) {
    for (const Piece& piece : alt->pieces) {
      if (piece.diagonal) {
        (mono.rates.empty() ? lead : mono.rates.back()) += piece.rate;
      } else {
        mono.atoms.push_back(piece.atom);
        mono.rates.push_back(0.0);
      }
    }
  }
  if (mono.rates.empty()) mono.rates.push_back(lead);  // pure diagonal word: stored in the single slot
  else mono.rates.back() += lead;
  return mono;
}

long long rate_key(double rate) { return std::llround(rate * 1e11); }

struct MonomialKey {
  std::vector<Atom> atoms;
  std::vector<long long> rates;
  auto operator<=>(const MonomialKey&) const = default;
};

struct WeightedMonomial {
  Monomial mono;
  double weight = 0.0;
};

std::vector<WeightedMonomial> expand(const std::vector<LetterExpansion>& letters, std::size_t max_monomials) {
  std::size_t count = 1;
  for (const auto& l : letters) {
    count *= l.size();
    if (count > max_monomials) throw ResourceLimitError("word expansion exceeds the monomial budget");
  }
  std::map<MonomialKey, WeightedMonomial> merged;
  std::vector<std::size_t> digit(letters.size(), 0);
  std::vector<const Alternative*> choice(letters.size());
  for (std::size_t c = 0; c < count; ++c) {
    double coef = 1.0;
    for (std::size_t q = 0; q < letters.size(); ++q) {
      choice[q] = &letters[q][digit[q]];
      coef *= choice[q]->coef;
    }
    Monomial mono = assemble(choice);
    MonomialKey key{mono.atoms, {}};
    for (double r : mono.rates) key.rates.push_back(rate_key(r));
    auto [it, inserted] = merged.try_emplace(std::move(key), WeightedMonomial{std::move(mono), 0.0});
    it->second.weight += coef;
    for (std::size_t q = letters.size(); q-- > 0;) {
      if (++digit[q] < letters[q].size()) break;
      digit[q] = 0;
    }
  }
  std::vector<WeightedMonomial> out;
  out.reserve(merged.size());
  for (auto& [key, wm] : merged)
    if (wm.weight != 0.0) out.push_back(std::move(wm));
  return out;
}

bool balanced(const std::vector<Atom>& atoms) {
  std::map<int, int> net;
  for (const Atom& a : atoms) net[a.id] += a.star ? -1 : 1;
  return std::all_of(net.begin(), net.end(), [](const auto& kv) { return kv.second == 0; });
}

struct PartitionCache {
  std::map<std::size_t, std::vector<PairPartition>> partitions;
  std::map<std::size_t, std::vector<IndexSolution>> solutions;
  std::map<std::size_t, std::vector<bool>> crossing;

  void ensure(std::size_t len) {
    if (partitions.count(len)) return;
    auto ps = enumerate_pair_partitions(static_cast<int>(len));
    std::vector<IndexSolution> sols;
    std::vector<bool> cross;
    for (const auto& p : ps) {
      sols.push_back(solve_indices(p));
      cross.push_back(is_crossing(p));
    }
    partitions.emplace(len, std::move(ps));
    solutions.emplace(len, std::move(sols));
    crossing.emplace(len, std::move(cross));
  }
};

bool admissible_atoms(const PairPartition& p, const std::vector<Atom>& atoms) {
  for (std::size_t r = 0; r < atoms.size(); ++r) {
    const auto& other = atoms[static_cast<std::size_t>(p.mate[r])];
    if (atoms[r].star == other.star || atoms[r].id != other.id) return false;
  }
  return true;
}

struct FormRate {
  std::vector<int> form;
  double rate = 0.0;
};

struct CrossingTerm {
  double weight = 0.0;
  std::vector<FormRate> parts;
};

struct Accumulator {
  cplx closed{};
  std::map<std::vector<std::pair<std::vector<int>, long long>>, CrossingTerm> crossing;
  std::size_t n_terms = 0;
  std::size_t n_crossing = 0;
  std::size_t dim = 0;
};

void add_monomial(const Monomial& mono, double weight, PartitionCache& cache, Accumulator& acc) {
  const std::size_t len = mono.atoms.size();
  if (len == 0) {
    acc.closed += weight * exp_integral(mono.rates.front());
    return;
  }
  if (len % 2 != 0 || !balanced(mono.atoms)) return;
  cache.ensure(len);
  const auto& ps = cache.partitions.at(len);
  const auto& sols = cache.solutions.at(len);
  const auto& cross = cache.crossing.at(len);
  for (std::size_t k = 0; k < ps.size(); ++k) {
    if (!admissible_atoms(ps[k], mono.atoms)) continue;
    ++acc.n_terms;
    if (cross[k]) ++acc.n_crossing;
    std::map<std::vector<int>, double> by_form;
    for (std::size_t r = 0; r < len; ++r) by_form[sols[k].forms[(r + 1) % len]] += mono.rates[r];
    std::vector<FormRate> parts;
    bool single = true;
    for (const auto& [form, rate] : by_form) {
      if (std::abs(rate) < 1e-12) continue;
      int nonzero = 0;
      for (int c : form) nonzero += c != 0;
      const bool unit = nonzero == 1 && std::find(form.begin(), form.end(), 1) != form.end();
      single = single && unit;
      parts.push_back({form, rate});
    }
    if (single) {
      cplx v = weight;
      for (const auto& part : parts) v *= exp_integral(part.rate);
      acc.closed += v;
      continue;
    }
    std::vector<std::pair<std::vector<int>, long long>> key;
    for (const auto& part : parts) key.emplace_back(part.form, rate_key(part.rate));
    auto [it, inserted] = acc.crossing.try_emplace(std::move(key), CrossingTerm{0.0, parts});
    it->second.weight += weight;
    acc.dim = std::max(acc.dim, len / 2 + 1);
  }
}

cplx integrand(const std::vector<CrossingTerm>& terms, const double* x) {
  cplx g{};
  for (const auto& t : terms) {
    double phase = 0.0;
    for (const auto& part : t.parts) {
      double v = 0.0;
      for (std::size_t j = 0; j < part.form.size(); ++j) v += part.form[j] * x[j];
      phase += part.rate * (v - std::floor(v));
    }
    g += t.weight * std::polar(1.0, phase);
  }
  return g;
}

LimitValue finish(Accumulator& acc, const LimitOptions& opt) {
  LimitValue out;
  out.n_terms = acc.n_terms;
  out.n_crossing = acc.n_crossing;
  out.value = acc.closed;
  std::vector<CrossingTerm> terms;
  for (auto& [key, t] : acc.crossing)
    if (t.weight != 0.0) terms.push_back(std::move(t));
  if (terms.empty()) return out;
  const std::size_t dim = acc.dim;

  if (opt.crossing == CrossingMethod::Riemann) {
    if (dim > 4) throw ResourceLimitError("Riemann fallback supports at most 4 free variables");
    if (opt.riemann_grid < 1) throw std::invalid_argument("riemann_grid must be positive");
    const auto g = static_cast<std::size_t>(opt.riemann_grid);
    std::size_t total = 1;
    for (std::size_t d = 0; d < dim; ++d) total *= g;
    cplx sum{};
    std::vector<double> x(dim);
    for (std::size_t idx = 0; idx < total; ++idx) {
      std::size_t rest = idx;
      for (std::size_t d = 0; d < dim; ++d) {
        x[d] = (static_cast<double>(rest % g) + 0.5) / static_cast<double>(g);
        rest /= g;
      }
      sum += integrand(terms, x.data());
    }
    out.value += sum / static_cast<double>(total);
    out.method = LimitMethod::Riemann;
    return out;
  }

  if (opt.mc_points < 2) throw std::invalid_argument("mc_points must be at least 2");
  constexpr std::size_t kChunk = 1 << 15;
  const std::size_t chunks = (opt.mc_points + kChunk - 1) / kChunk;
  std::vector<cplx> sums(chunks);
  std::vector<double> squares(chunks);
  parallel_for(chunks, opt.threads, [&](std::size_t c) {
    auto engine = make_engine(derive_stream(opt.seed, 0xC405511ULL, c));
    const std::size_t count = std::min(kChunk, opt.mc_points - c * kChunk);
    std::vector<double> x(dim);
    cplx s{};
    double q = 0.0;
    for (std::size_t i = 0; i < count; ++i) {
      for (auto& xi : x) xi = static_cast<double>(engine() >> 11) * 0x1.0p-53;
      const cplx g = integrand(terms, x.data());
      s += g;
      q += std::norm(g);
    }
    sums[c] = s;
    squares[c] = q;
  });
  cplx s{};
  double q = 0.0;
  for (std::size_t c = 0; c < chunks; ++c) {
    s += sums[c];
    q += squares[c];
  }
  const double n = static_cast<double>(opt.mc_points);
  const cplx mean = s / n;
  const double var = std::max(0.0, (q - n * std::norm(mean)) / (n - 1.0));
  out.value += mean;
  out.mc_error = std::sqrt(var / n);
  out.method = LimitMethod::MonteCarlo;
  return out;
}

LimitValue evaluate(const std::vector<WeightedMonomial>& monos, const LimitOptions& opt) {
  PartitionCache cache;
  Accumulator acc;
  for (const auto& wm : monos) add_monomial(wm.mono, wm.weight, cache, acc);
  return finish(acc, opt);
}

// Matrix ids of the expansion; letters built from independent inputs get distinct ids.
enum Id : int { kC = 0, kCt, kS, kTc, kTs, kTsc, kTss, kRc, kLs, kHr, kHl };

Alternative atom(double coef, int id, bool star) { return {coef, {Piece{false, 0.0, {id, star}}}}; }

Alternative skew(double coef, int id, bool star) {
  const double pi = std::numbers::pi;
  return {coef, {Piece{true, pi, {}}, Piece{false, 0.0, {id, star}}, Piece{true, -pi, {}}}};
}

bool is_j_letter(LetterKind k) { return k == LetterKind::R || k == LetterKind::L || k == LetterKind::H; }

constexpr std::size_t kMaxMonomials = 65536;

std::vector<LetterExpansion> expand_letters(const Word& word, double theta, bool& odd_j_word) {
  odd_j_word = false;
  const bool any_j = std::any_of(word.letters.begin(), word.letters.end(), [](const Letter& l) { return is_j_letter(l.kind); });
  std::vector<LetterExpansion> out;
  const double h = 1.0 / std::sqrt(2.0);
  if (any_j) {
    for (const auto& l : word.letters)
      if (!is_j_letter(l.kind))
        throw std::invalid_argument("limit: words containing R, L or H may not contain " + std::string(letter_name(l.kind)));
    if (word.size() % 2 != 0) {
      odd_j_word = true;
      return out;
    }
    // X1 J X2 J ... = X1 X2* X3 X4* ... for real circulant and skew-circulant X.
    for (std::size_t q = 0; q < word.size(); ++q) {
      const bool star = q % 2 == 1;
      switch (word.letters[q].kind) {
        case LetterKind::R: out.push_back({atom(1.0, kRc, star)}); break;
        case LetterKind::L: out.push_back({skew(1.0, kLs, star)}); break;
        default: out.push_back({atom(h, kHr, star), skew(h, kHl, star)}); break;
      }
    }
    return out;
  }
  for (const auto& l : word.letters) {
    switch (l.kind) {
      case LetterKind::C: out.push_back({atom(1.0, kC, l.adjoint)}); break;
      case LetterKind::CTilde: out.push_back({atom(1.0, kCt, l.adjoint)}); break;
      case LetterKind::S: out.push_back({skew(1.0, kS, l.adjoint)}); break;
      case LetterKind::T: out.push_back({atom(h, kTc, l.adjoint), skew(h, kTs, l.adjoint)}); break;
      case LetterKind::Ts:
        out.push_back({atom(0.5, kTsc, false), skew(0.5, kTss, false), atom(0.5, kTsc, true), skew(0.5, kTss, true)});
        break;
      case LetterKind::D: out.push_back({Alternative{1.0, {Piece{true, theta * l.net_power(), {}}}}}); break;
      case LetterKind::J: throw std::invalid_argument("limit: J is supported only inside R, L and H");
      default: throw std::invalid_argument("limit: unsupported letter " + std::string(letter_name(l.kind)));
    }
  }
  return out;
}

void check_theta(double theta) {
  if (!(std::abs(theta) <= std::numbers::pi)) throw std::invalid_argument("limit: theta must lie in [-pi, pi]");
}

std::string monomial_text(const Monomial& m) {
  static const char* names[] = {"C", "C~", "S~", "Tc", "Ts~", "Tsc", "Tss~", "Rc", "Ls~", "Hc", "Hs~"};
  std::ostringstream os;
  for (std::size_t r = 0; r < m.atoms.size(); ++r) {
    if (r) os << ' ';
    os << names[m.atoms[r].id] << (m.atoms[r].star ? "*" : "");
  }
  return os.str();
}

}  // namespace

LimitValue limit_mixed_moment_CD(const EpsilonPattern& pattern, double theta, const LimitOptions& options) {
  check_theta(theta);
  if (pattern.size() % 2 != 0) throw std::invalid_argument("limit_mixed_moment_CD: pattern length must be even");
  if (pattern.size() == 0) return LimitValue{1.0};
  if (!pattern.balanced()) return LimitValue{};
  Monomial mono;
  for (std::size_t r = 0; r < pattern.size(); ++r) {
    mono.atoms.push_back({pattern.ids[r], pattern.star[r]});
    mono.rates.push_back(theta * pattern.diag_powers[r]);
  }
  return evaluate({{mono, 1.0}}, options);
}

LimitValue limit_word(const Word& word, double theta, const LimitOptions& options) {
  check_theta(theta);
  if (word.empty()) return LimitValue{1.0};
  bool odd_j = false;
  const auto letters = expand_letters(word, theta, odd_j);
  if (odd_j) return LimitValue{};
  return evaluate(expand(letters, kMaxMonomials), options);
}

std::vector<ExpandedTerm> limit_word_terms(const Word& word, double theta, std::size_t max_terms) {
  check_theta(theta);
  std::vector<ExpandedTerm> out;
  if (word.empty()) return out;
  bool odd_j = false;
  const auto letters = expand_letters(word, theta, odd_j);
  if (odd_j) return out;
  for (const auto& wm : expand(letters, kMaxMonomials)) {
    const auto& atoms = wm.mono.atoms;
    if (atoms.size() % 2 != 0 || atoms.empty() || !balanced(atoms)) continue;
    std::vector<bool> star;
    std::vector<int> ids;
    for (const auto& a : atoms) {
      star.push_back(a.star);
      ids.push_back(a.id);
    }
    const EpsilonPattern pattern(star, {}, ids);
    for (const auto& p : enumerate_pair_partitions(static_cast<int>(atoms.size()))) {
      if (!admissible(p, pattern)) continue;
      if (out.size() >= max_terms) throw ResourceLimitError("term dump exceeds the term budget");
      out.push_back({monomial_text(wm.mono), wm.weight, wm.mono.rates, solve_index_system(p, pattern)});
    }
  }
  return out;
}

LimitValue toeplitz_lsd_moment(int p, const LimitOptions& options) {
  if (p < 0) throw std::invalid_argument("toeplitz_lsd_moment: negative order");
  if (p > 8) throw ResourceLimitError("toeplitz_lsd_moment: order above 8 exceeds the word budget");
  if (p == 0) return LimitValue{1.0};
  if (p % 2) return LimitValue{};
  Word w;
  w.letters.assign(static_cast<std::size_t>(p), Letter{LetterKind::Ts});
  return limit_word(w, std::numbers::pi, options);
}

LimitValue hankel_lsd_moment(int p, const LimitOptions& options) {
  if (p < 0) throw std::invalid_argument("hankel_lsd_moment: negative order");
  if (p > 8) throw ResourceLimitError("hankel_lsd_moment: order above 8 exceeds the word budget");
  if (p == 0) return LimitValue{1.0};
  if (p % 2) return LimitValue{};
  Word w;
  w.letters.assign(static_cast<std::size_t>(p), Letter{LetterKind::H});
  return limit_word(w, std::numbers::pi, options);
}

std::vector<SuiteRow> remark43_suite(const LimitOptions& options) {
  const double pi = std::numbers::pi;
  std::vector<SuiteRow> rows;
  auto word_row = [&](std::string name, std::string text, cplx reference) {
    rows.push_back({std::move(name), text, limit_word(parse_word(text), pi, options), reference});
  };
  word_row("CC*SS*", "C C* S S*", 1.0);
  word_row("CSC*S*", "C S C* S*", 2.0 / 3.0);
  word_row("T2T*2", "T T T* T*", 11.0 / 6.0);
  word_row("TT*TT*", "T T* T T*", 5.0 / 3.0);
  rows.push_back({"toeplitz_m2", "Ts Ts", toeplitz_lsd_moment(2, options), 1.0});
  rows.push_back({"toeplitz_m4", "Ts Ts Ts Ts", toeplitz_lsd_moment(4, options), 8.0 / 3.0});
  rows.push_back({"hankel_m2", "H H", hankel_lsd_moment(2, options), 1.0});
  rows.push_back({"hankel_m4", "H H H H", hankel_lsd_moment(4, options), 2.0});
  word_row("Y1^2Y2^2", "R R L L", 1.0);
  word_row("Y1Y2Y1Y2", "R L R L", 0.0);
  return rows;
}

bool is_symmetric_monomial(const std::vector<std::string>& symbols) {
  std::map<std::string, int> balance;
  for (std::size_t q = 0; q < symbols.size(); ++q) balance[symbols[q]] += q % 2 == 0 ? 1 : -1;
  return std::all_of(balance.begin(), balance.end(), [](const auto& kv) { return kv.second == 0; });
}

bool is_symmetric_monomial(std::string_view word) {
  std::vector<std::string> symbols;
  if (word.find_first_of(" \t\n") == std::string_view::npos) {
    for (char ch : word) symbols.emplace_back(1, ch);
  } else {
    std::istringstream is{std::string(word)};
    for (std::string tok; is >> tok;) symbols.push_back(tok);
  }
  return is_symmetric_monomial(symbols);
}

}  // namespace circrmt
