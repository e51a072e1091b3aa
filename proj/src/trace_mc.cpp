#include "circrmt/trace_mc.hpp"

#include <array>
#include <cmath>
#include <map>
#include <optional>
#include <stdexcept>

#include "circrmt/operators.hpp"
#include "circrmt/parallel.hpp"

namespace circrmt {

namespace {

constexpr std::uint64_t kind_tag(LetterKind kind) {
  return 0x1e77e2ULL * 16 + static_cast<std::uint64_t>(kind);
}

std::size_t input_length(LetterKind kind, std::size_t n) {
  return (kind == LetterKind::T || kind == LetterKind::H) ? 2 * n - 1 : n;
}

StructuredOperator realize_random(LetterKind kind, std::span<const double> v, double theta) {
  switch (kind) {
    case LetterKind::C: return StructuredOperator::circulant(v);
    case LetterKind::CTilde: return StructuredOperator::tilde_circulant(v, theta);
    case LetterKind::S: return StructuredOperator::skew_circulant(v);
    case LetterKind::L: return StructuredOperator::left_skew_circulant(v);
    case LetterKind::R: return StructuredOperator::reverse_circulant(v);
    case LetterKind::T: return StructuredOperator::toeplitz(v);
    case LetterKind::Ts: return StructuredOperator::symmetric_toeplitz(v);
    case LetterKind::H: return StructuredOperator::hankel(v);
    default: break;
  }
  throw std::logic_error("realize_random: not a random letter");
}

// Realized operators of one replicate, one per letter in word order.
std::vector<StructuredOperator> realize(const Word& word, const McOptions& opt, std::size_t replicate) {
  std::map<LetterKind, StructuredOperator> base;
  std::vector<StructuredOperator> ops;
  ops.reserve(word.size());
  const double scale = opt.scale_random ? 1.0 / std::sqrt(static_cast<double>(opt.n)) : 1.0;
  for (const auto& letter : word.letters) {
    if (letter.kind == LetterKind::D) {
      ops.push_back(StructuredOperator::diagonal_D(opt.theta, opt.n, letter.net_power()));
      continue;
    }
    if (letter.kind == LetterKind::J) {
      ops.push_back(StructuredOperator::exchange(opt.n));
      continue;
    }
    auto it = base.find(letter.kind);
    if (it == base.end()) {
      std::vector<double> v(input_length(letter.kind, opt.n));
      auto engine = make_engine(derive_stream(opt.seed, kind_tag(letter.kind), replicate));
      fill_entries(opt.distribution, engine, v);
      it = base.emplace(letter.kind, realize_random(letter.kind, v, opt.theta).scaled(scale)).first;
    }
    ops.push_back(letter.adjoint ? it->second.adjoint() : it->second);
  }
  return ops;
}

std::size_t middle_fft_letters(const Word& w) {
  std::size_t cost = 0;
  for (std::size_t q = 1; q + 1 < w.size(); ++q)
    if (is_random_letter(w.letters[q].kind)) ++cost;
  return cost;
}

// Among all rotations of W and W*, pick the cheapest (ties broken by text) so
// that traciality and phi(W*) = conj phi(W) hold bit for bit.
std::pair<Word, bool> canonical_form(const Word& word) {
  std::optional<std::tuple<std::size_t, std::string, Word, bool>> best;
  for (bool conj : {false, true}) {
    const Word base = conj ? adjoint(word) : word;
    for (std::size_t k = 0; k < std::max<std::size_t>(1, base.size()); ++k) {
      Word w = rotate(base, k);
      auto key = std::make_tuple(middle_fft_letters(w), to_string(w), w, conj);
      if (!best || std::tie(std::get<0>(key), std::get<1>(key)) < std::tie(std::get<0>(*best), std::get<1>(*best)))
        best = std::move(key);
    }
  }
  return {std::get<2>(*best), std::get<3>(*best)};
}

cplx trace_structured(const std::vector<StructuredOperator>& ops, std::size_t n) {
  if (ops.empty()) return static_cast<double>(n);
  DenseMatrix m = ops.back().dense();
  for (std::size_t q = ops.size() - 1; q-- > 1;) ops[q].apply(m);
  if (ops.size() == 1) return m.trace();
  const DenseMatrix first = ops.front().dense();
  return first.cwiseProduct(m.transpose()).sum();
}

cplx trace_dense(const std::vector<StructuredOperator>& ops, std::size_t n) {
  const auto k = static_cast<Eigen::Index>(n);
  DenseMatrix m = DenseMatrix::Identity(k, k);
  for (const auto& op : ops) m = m * op.dense();
  return m.trace();
}

void validate(const McOptions& opt) {
  if (opt.n == 0) throw std::invalid_argument("trace_moment_mc: n must be positive");
  if (!(std::abs(opt.theta) <= std::numbers::pi)) throw std::invalid_argument("trace_moment_mc: theta must lie in [-pi, pi]");
}

}  // namespace

cplx replicate_trace(const Word& word, const McOptions& options, std::size_t replicate) {
  validate(options);
  const auto [w, conj] = canonical_form(word);
  const auto ops = realize(w, options, replicate);
  const cplx tr = options.path == ProductPath::Dense ? trace_dense(ops, options.n)
                                                      : trace_structured(ops, options.n);
  const cplx v = tr / static_cast<double>(options.n);
  return conj ? std::conj(v) : v;
}

MomentEstimate trace_moment_mc(const Word& word, const McOptions& options) {
  validate(options);
  if (options.replicates < 2) throw std::invalid_argument("trace_moment_mc: at least 2 replicates required");
  MomentEstimate out;
  out.n = options.n;
  out.replicates = options.replicates;
  out.per_replicate.resize(options.replicates);
  parallel_for(options.replicates, options.threads,
               [&](std::size_t r) { out.per_replicate[r] = replicate_trace(word, options, r); });
  cplx sum{};
  for (const auto& v : out.per_replicate) sum += v;
  out.mean = sum / static_cast<double>(options.replicates);
  double ss = 0.0;
  for (const auto& v : out.per_replicate) ss += std::norm(v - out.mean);
  const double r = static_cast<double>(options.replicates);
  out.std_error = std::sqrt(ss / (r - 1.0)) / std::sqrt(r);
  return out;
}

}  // namespace circrmt
