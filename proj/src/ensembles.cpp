#include "circrmt/ensembles.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace circrmt {

namespace {

constexpr double kPi = std::numbers::pi;

void require_nonempty(std::span<const double> v, const char* what) {
  if (v.empty()) throw std::invalid_argument(std::string(what) + ": empty input sequence");
}

std::size_t two_sided_dimension(std::size_t len, const char* what) {
  if (len == 0 || len % 2 == 0)
    throw std::invalid_argument(std::string(what) + ": two-sided input must have length 2n-1, got " +
                                std::to_string(len));
  return (len + 1) / 2;
}

void require_theta(double theta) {
  if (!(std::abs(theta) <= kPi)) throw std::invalid_argument("theta must lie in [-pi, pi]");
}

// Derived streams for check_decompositions / check_commutation.
std::vector<double> draw(EntryDistribution dist, std::size_t len, std::uint64_t seed,
                         std::uint64_t tag) {
  std::vector<double> v(len);
  auto engine = make_engine(derive_stream(seed, tag, 0));
  fill_entries(dist, engine, v);
  return v;
}

double max_abs(const DenseMatrix& a) { return a.cwiseAbs().maxCoeff(); }

}  // namespace

std::string to_string(EnsembleKind kind) {
  switch (kind) {
    case EnsembleKind::Circulant: return "circulant";
    case EnsembleKind::TildeCirculant: return "tilde-circulant";
    case EnsembleKind::SkewCirculant: return "skew";
    case EnsembleKind::LeftSkewCirculant: return "left-skew";
    case EnsembleKind::ReverseCirculant: return "reverse";
    case EnsembleKind::ToeplitzNonsym: return "toeplitz";
    case EnsembleKind::ToeplitzSym: return "sym-toeplitz";
    case EnsembleKind::Hankel: return "hankel";
    case EnsembleKind::DiagonalD: return "diag";
    case EnsembleKind::ExchangeJ: return "exchange";
  }
  return "unknown";
}

EnsembleKind parse_ensemble(std::string_view name) {
  for (auto kind : {EnsembleKind::Circulant, EnsembleKind::TildeCirculant, EnsembleKind::SkewCirculant,
                    EnsembleKind::LeftSkewCirculant, EnsembleKind::ReverseCirculant,
                    EnsembleKind::ToeplitzNonsym, EnsembleKind::ToeplitzSym, EnsembleKind::Hankel,
                    EnsembleKind::DiagonalD, EnsembleKind::ExchangeJ}) {
    if (name == to_string(kind)) return kind;
  }
  if (name == "skew-circulant") return EnsembleKind::SkewCirculant;
  if (name == "left-skew-circulant") return EnsembleKind::LeftSkewCirculant;
  if (name == "reverse-circulant") return EnsembleKind::ReverseCirculant;
  if (name == "symmetric-toeplitz") return EnsembleKind::ToeplitzSym;
  throw std::invalid_argument("unknown ensemble '" + std::string(name) + "'");
}

bool requires_theta(EnsembleKind kind) {
  return kind == EnsembleKind::TildeCirculant || kind == EnsembleKind::DiagonalD;
}

bool is_random(EnsembleKind kind) {
  return kind != EnsembleKind::DiagonalD && kind != EnsembleKind::ExchangeJ;
}

void EnsembleSpec::validate() const {
  if (n == 0) throw std::invalid_argument("ensemble dimension must be positive");
  if (requires_theta(kind) != theta.has_value())
    throw std::invalid_argument(requires_theta(kind) ? to_string(kind) + " requires theta"
                                                     : to_string(kind) + " takes no theta");
  if (theta) require_theta(*theta);
}

std::size_t EnsembleSpec::input_length() const {
  switch (kind) {
    case EnsembleKind::ToeplitzNonsym:
    case EnsembleKind::Hankel: return 2 * n - 1;
    case EnsembleKind::DiagonalD:
    case EnsembleKind::ExchangeJ: return 0;
    default: return n;
  }
}

DenseMatrix build_circulant(std::span<const double> c) {
  require_nonempty(c, "build_circulant");
  const auto n = static_cast<Eigen::Index>(c.size());
  DenseMatrix m(n, n);
  for (Eigen::Index j = 0; j < n; ++j)
    for (Eigen::Index i = 0; i < n; ++i) m(i, j) = c[static_cast<std::size_t>((j - i + n) % n)];
  return m;
}

DenseMatrix build_circulant(std::span<const cplx> generator) {
  if (generator.empty()) throw std::invalid_argument("build_circulant: empty generator");
  const auto n = static_cast<Eigen::Index>(generator.size());
  DenseMatrix m(n, n);
  for (Eigen::Index j = 0; j < n; ++j)
    for (Eigen::Index i = 0; i < n; ++i) m(i, j) = generator[static_cast<std::size_t>((j - i + n) % n)];
  return m;
}

std::vector<cplx> tilde_generator(std::span<const double> c, double theta) {
  require_theta(theta);
  const double n = static_cast<double>(c.size());
  std::vector<cplx> g(c.size());
  for (std::size_t r = 0; r < c.size(); ++r)
    g[r] = c[r] * std::polar(1.0, theta * static_cast<double>(r) / n);
  return g;
}

DenseMatrix build_tilde_circulant(std::span<const double> c, double theta) {
  require_nonempty(c, "build_tilde_circulant");
  const auto g = tilde_generator(c, theta);
  return build_circulant(std::span<const cplx>(g));
}

DenseMatrix build_skew_circulant(std::span<const double> s) {
  require_nonempty(s, "build_skew_circulant");
  const auto n = static_cast<Eigen::Index>(s.size());
  DenseMatrix m(n, n);
  for (Eigen::Index j = 0; j < n; ++j)
    for (Eigen::Index i = 0; i < n; ++i)
      m(i, j) = j >= i ? s[static_cast<std::size_t>(j - i)] : -s[static_cast<std::size_t>(n + j - i)];
  return m;
}

DenseMatrix build_left_skew_circulant(std::span<const double> l) {
  require_nonempty(l, "build_left_skew_circulant");
  const auto n = static_cast<Eigen::Index>(l.size());
  DenseMatrix m(n, n);
  for (Eigen::Index j = 0; j < n; ++j)
    for (Eigen::Index i = 0; i < n; ++i) {
      const auto k = i + j;
      m(i, j) = k < n ? l[static_cast<std::size_t>(k)] : -l[static_cast<std::size_t>(k - n)];
    }
  return m;
}

DenseMatrix build_reverse_circulant(std::span<const double> c) {
  require_nonempty(c, "build_reverse_circulant");
  const auto n = static_cast<Eigen::Index>(c.size());
  DenseMatrix m(n, n);
  for (Eigen::Index j = 0; j < n; ++j)
    for (Eigen::Index i = 0; i < n; ++i)
      m(i, j) = c[static_cast<std::size_t>(((n - 1 - j - i) % n + n) % n)];
  return m;
}

DenseMatrix build_toeplitz(std::span<const double> two_sided) {
  const auto n = static_cast<Eigen::Index>(two_sided_dimension(two_sided.size(), "build_toeplitz"));
  DenseMatrix m(n, n);
  for (Eigen::Index j = 0; j < n; ++j)
    for (Eigen::Index i = 0; i < n; ++i) m(i, j) = two_sided[static_cast<std::size_t>(j - i + n - 1)];
  return m;
}

DenseMatrix build_symmetric_toeplitz(std::span<const double> x) {
  require_nonempty(x, "build_symmetric_toeplitz");
  const auto n = static_cast<Eigen::Index>(x.size());
  DenseMatrix m(n, n);
  for (Eigen::Index j = 0; j < n; ++j)
    for (Eigen::Index i = 0; i < n; ++i) m(i, j) = x[static_cast<std::size_t>(std::abs(i - j))];
  return m;
}

DenseMatrix build_hankel(std::span<const double> h) {
  const auto n = static_cast<Eigen::Index>(two_sided_dimension(h.size(), "build_hankel"));
  DenseMatrix m(n, n);
  for (Eigen::Index j = 0; j < n; ++j)
    for (Eigen::Index i = 0; i < n; ++i) m(i, j) = h[static_cast<std::size_t>(i + j)];
  return m;
}

DenseMatrix build_diagonal_D(double theta, std::size_t n) {
  require_theta(theta);
  if (n == 0) throw std::invalid_argument("build_diagonal_D: n must be positive");
  DenseMatrix m = DenseMatrix::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  for (std::size_t j = 0; j < n; ++j)
    m(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(j)) =
        std::polar(1.0, theta * static_cast<double>(j) / static_cast<double>(n));
  return m;
}

DenseMatrix build_exchange_J(std::size_t n) {
  if (n == 0) throw std::invalid_argument("build_exchange_J: n must be positive");
  const auto k = static_cast<Eigen::Index>(n);
  DenseMatrix m = DenseMatrix::Zero(k, k);
  for (Eigen::Index i = 0; i < k; ++i) m(i, k - 1 - i) = 1.0;
  return m;
}

DenseMatrix build(const EnsembleSpec& spec, std::span<const double> values) {
  spec.validate();
  if (values.size() != spec.input_length())
    throw std::invalid_argument("build: " + to_string(spec.kind) + " of dimension " +
                                std::to_string(spec.n) + " needs " +
                                std::to_string(spec.input_length()) + " input values, got " +
                                std::to_string(values.size()));
  switch (spec.kind) {
    case EnsembleKind::Circulant: return build_circulant(values);
    case EnsembleKind::TildeCirculant: return build_tilde_circulant(values, *spec.theta);
    case EnsembleKind::SkewCirculant: return build_skew_circulant(values);
    case EnsembleKind::LeftSkewCirculant: return build_left_skew_circulant(values);
    case EnsembleKind::ReverseCirculant: return build_reverse_circulant(values);
    case EnsembleKind::ToeplitzNonsym: return build_toeplitz(values);
    case EnsembleKind::ToeplitzSym: return build_symmetric_toeplitz(values);
    case EnsembleKind::Hankel: return build_hankel(values);
    case EnsembleKind::DiagonalD: return build_diagonal_D(*spec.theta, spec.n);
    case EnsembleKind::ExchangeJ: return build_exchange_J(spec.n);
  }
  throw std::logic_error("build: unhandled ensemble kind");
}

std::vector<IdentityCheck> check_decompositions(std::size_t n, std::uint64_t seed,
                                                EntryDistribution dist) {
  if (n < 2) throw std::invalid_argument("check_decompositions: n must be at least 2");
  const auto c = draw(dist, n, seed, 0xc1);
  const auto s = draw(dist, n, seed, 0x51);
  const double root2 = std::sqrt(2.0);
  const auto k = static_cast<std::ptrdiff_t>(n);

  // tau_j = (c_j + s_j)/sqrt2, tau_{-j} = (c_{n-j} - s_{n-j})/sqrt2
  std::vector<double> tau(2 * n - 1);
  for (std::ptrdiff_t j = 0; j < k; ++j) tau[static_cast<std::size_t>(j + k - 1)] = (c[j] + s[j]) / root2;
  for (std::ptrdiff_t j = 1; j < k; ++j)
    tau[static_cast<std::size_t>(k - 1 - j)] = (c[k - j] - s[k - j]) / root2;

  std::vector<double> l(n);
  for (std::size_t j = 0; j < n; ++j) l[j] = s[n - 1 - j];

  std::vector<double> h(2 * n - 1);
  for (std::size_t j = 0; j < h.size(); ++j) h[j] = tau[(2 * n - 2) - j] / root2;  // tau_{(n-1)-j}

  std::vector<double> x(n);
  x[0] = root2 * tau[n - 1];
  for (std::size_t j = 1; j < n; ++j) x[j] = (tau[n - 1 + j] + tau[n - 1 - j]) / root2;

  const DenseMatrix C = build_circulant(c);
  const DenseMatrix S = build_skew_circulant(s);
  const DenseMatrix T = build_toeplitz(tau);
  const DenseMatrix J = build_exchange_J(n);
  const DenseMatrix D = build_diagonal_D(std::numbers::pi, n);
  const DenseMatrix Ct = build_tilde_circulant(s, std::numbers::pi);
  const DenseMatrix L = build_left_skew_circulant(l);
  const DenseMatrix H = build_hankel(h);
  const DenseMatrix R = build_reverse_circulant(c);
  const DenseMatrix Ts = build_symmetric_toeplitz(x);

  std::vector<IdentityCheck> out;
  auto add = [&](std::string name, const DenseMatrix& lhs, const DenseMatrix& rhs) {
    out.push_back({std::move(name), max_abs(lhs - rhs), max_abs(rhs)});
  };
  add("T = (C+S)/sqrt2", T, (C + S) / root2);
  add("S = D C~ D*", S, D * Ct * D.adjoint());
  add("L = S J", L, S * J);
  add("H = T J / sqrt2", H, T * J / root2);
  add("Ts = (T+T*)/sqrt2", Ts, (T + T.adjoint()) / root2);
  add("R = C J", R, C * J);
  add("R^2 = C C*", R * R, C * C.adjoint());
  add("L^2 = S S*", L * L, S * S.adjoint());
  return out;
}

CommutationCheck check_commutation(std::size_t n, std::uint64_t seed, EntryDistribution dist) {
  if (n == 0) throw std::invalid_argument("check_commutation: n must be positive");
  const DenseMatrix S1 = build_skew_circulant(draw(dist, n, seed, 0x511));
  const DenseMatrix S2 = build_skew_circulant(draw(dist, n, seed, 0x512));
  const DenseMatrix L1 = build_left_skew_circulant(draw(dist, n, seed, 0x111));
  const DenseMatrix L2 = build_left_skew_circulant(draw(dist, n, seed, 0x112));
  const DenseMatrix L3 = build_left_skew_circulant(draw(dist, n, seed, 0x113));
  CommutationCheck out;
  out.skew_relative = (S1 * S2 - S2 * S1).norm() / (S1.norm() * S2.norm());
  out.left_skew_relative =
      (L1 * L2 * L3 - L3 * L2 * L1).norm() / (L1.norm() * L2.norm() * L3.norm());
  return out;
}

}  // namespace circrmt
