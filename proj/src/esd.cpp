#include "circrmt/esd.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <numbers>
#include <stdexcept>

#include "circrmt/parallel.hpp"

namespace circrmt {

Histogram1D histogram(std::span<const double> values, std::optional<std::size_t> bins) {
  if (values.empty()) throw std::invalid_argument("histogram: empty sample");
  std::vector<double> sorted(values.begin(), values.end());
  std::sort(sorted.begin(), sorted.end());
  const double lo = sorted.front();
  double hi = sorted.back();
  if (hi <= lo) hi = lo + 1.0;

  std::size_t k = 0;
  if (bins) {
    if (*bins == 0) throw std::invalid_argument("histogram: bin count must be positive");
    k = *bins;
  } else {
    auto quantile = [&](double q) {
      const double pos = q * static_cast<double>(sorted.size() - 1);
      const auto i = static_cast<std::size_t>(pos);
      const double frac = pos - static_cast<double>(i);
      return i + 1 < sorted.size() ? sorted[i] * (1 - frac) + sorted[i + 1] * frac : sorted[i];
    };
    const double iqr = quantile(0.75) - quantile(0.25);
    const double width = 2.0 * iqr / std::cbrt(static_cast<double>(sorted.size()));
    k = width > 0 ? static_cast<std::size_t>(std::ceil((hi - lo) / width)) : 1;
    k = std::clamp<std::size_t>(k, 1, 10000);
  }

  Histogram1D h;
  h.bin_edges.resize(k + 1);
  for (std::size_t b = 0; b <= k; ++b) h.bin_edges[b] = lo + (hi - lo) * static_cast<double>(b) / static_cast<double>(k);
  h.counts.assign(k, 0);
  for (double v : sorted) {
    auto b = static_cast<std::size_t>((v - lo) / (hi - lo) * static_cast<double>(k));
    ++h.counts[std::min(b, k - 1)];
  }
  h.total = sorted.size();
  return h;
}

void write_csv(std::ostream& os, const Histogram1D& h) {
  os << "bin_left,bin_right,count,density\n" << std::setprecision(10);
  for (std::size_t b = 0; b < h.counts.size(); ++b) {
    const double w = h.bin_edges[b + 1] - h.bin_edges[b];
    os << h.bin_edges[b] << ',' << h.bin_edges[b + 1] << ',' << h.counts[b] << ','
       << static_cast<double>(h.counts[b]) / (static_cast<double>(h.total) * w) << '\n';
  }
}

std::vector<cplx> empirical_moments(std::span<const cplx> eigenvalues, int max_p) {
  if (max_p < 1) throw std::invalid_argument("empirical_moments: max_p must be at least 1");
  if (eigenvalues.empty()) throw std::invalid_argument("empirical_moments: empty sample");
  std::vector<cplx> m(static_cast<std::size_t>(max_p), 0.0);
  for (const cplx& lambda : eigenvalues) {
    cplx power = 1.0;
    for (int p = 0; p < max_p; ++p) {
      power *= lambda;
      m[static_cast<std::size_t>(p)] += power;
    }
  }
  for (auto& v : m) v /= static_cast<double>(eigenvalues.size());
  return m;
}

std::vector<cplx> empirical_moments(const SpectralSample& sample, int max_p) {
  return empirical_moments(std::span<const cplx>(sample.eigenvalues), max_p);
}

double ks_distance(std::span<const double> sample, const std::function<double(double)>& cdf) {
  if (sample.empty()) throw std::invalid_argument("ks_distance: empty sample");
  std::vector<double> x(sample.begin(), sample.end());
  std::sort(x.begin(), x.end());
  const double n = static_cast<double>(x.size());
  double d = 0.0;
  for (std::size_t i = 0; i < x.size();) {
    std::size_t j = i;
    while (j < x.size() && x[j] == x[i]) ++j;
    const double f = cdf(x[i]);
    d = std::max({d, std::abs(f - static_cast<double>(i) / n), std::abs(static_cast<double>(j) / n - f)});
    i = j;
  }
  return d;
}

Esd2D esd_complex(std::span<const cplx> eigenvalues) {
  if (eigenvalues.empty()) throw std::invalid_argument("esd_complex: empty sample");
  Esd2D out;
  std::vector<double> re, im;
  re.reserve(eigenvalues.size());
  im.reserve(eigenvalues.size());
  for (const cplx& z : eigenvalues) {
    out.points.emplace_back(z.real(), z.imag());
    re.push_back(z.real());
    im.push_back(z.imag());
  }
  const auto marginal = [](double x) { return gaussian_cdf(x, 0.5); };
  out.ks_re = ks_distance(re, marginal);
  out.ks_im = ks_distance(im, marginal);
  const double n = static_cast<double>(eigenvalues.size());
  double mr = 0, mi = 0;
  for (std::size_t k = 0; k < re.size(); ++k) {
    mr += re[k];
    mi += im[k];
  }
  mr /= n;
  mi /= n;
  out.mean = {mr, mi};
  for (std::size_t k = 0; k < re.size(); ++k) {
    const double a = re[k] - mr, b = im[k] - mi;
    out.covariance(0, 0) += a * a;
    out.covariance(0, 1) += a * b;
    out.covariance(1, 1) += b * b;
  }
  out.covariance(1, 0) = out.covariance(0, 1);
  out.covariance /= n;
  return out;
}

PooledSpectrum pooled_spectrum(const EnsembleSpec& spec, std::size_t replicates, std::uint64_t seed,
                               EntryDistribution dist, unsigned threads) {
  spec.validate();
  if (replicates == 0) throw std::invalid_argument("pooled_spectrum: replicates must be positive");
  PooledSpectrum out;
  out.spec = spec;
  out.replicates = replicates;
  out.per_replicate.resize(replicates);
  const double scale = is_random(spec.kind) ? 1.0 / std::sqrt(static_cast<double>(spec.n)) : 1.0;
  const auto tag = 0xE5D0ULL + static_cast<std::uint64_t>(spec.kind);
  parallel_for(replicates, threads, [&](std::size_t r) {
    std::vector<double> values;
    if (spec.input_length() > 0) values = sample_input(dist, spec.input_length(), derive_stream(seed, tag, r)).values;
    out.per_replicate[r] = spectrum(spec, values, scale).eigenvalues;
  });
  for (const auto& ev : out.per_replicate) out.eigenvalues.insert(out.eigenvalues.end(), ev.begin(), ev.end());
  return out;
}

namespace {

std::vector<double> real_parts_checked(std::span<const cplx> ev) {
  std::vector<double> out;
  out.reserve(ev.size());
  for (const cplx& z : ev) {
    if (std::abs(z.imag()) > 1e-8) throw std::domain_error("real spectrum expected but an eigenvalue has a non-negligible imaginary part");
    out.push_back(z.real());
  }
  return out;
}

// Statistic of one eigenvalue sample against the ensemble's limit law.
double statistic(const EnsembleSpec& spec, std::span<const cplx> ev) {
  switch (spec.kind) {
    case EnsembleKind::Circulant:
    case EnsembleKind::TildeCirculant:
    case EnsembleKind::SkewCirculant: {
      const auto e = esd_complex(ev);
      return std::max(e.ks_re, e.ks_im);
    }
    case EnsembleKind::LeftSkewCirculant:
    case EnsembleKind::ReverseCirculant: return ks_distance(real_parts_checked(ev), rayleigh_cdf);
    case EnsembleKind::ToeplitzSym: return std::abs(empirical_moments(ev, 4)[3].real() - 8.0 / 3.0);
    case EnsembleKind::Hankel: return std::abs(empirical_moments(ev, 4)[3].real() - 2.0);
    case EnsembleKind::DiagonalD: {
      std::vector<double> angles;
      const double theta = *spec.theta;
      for (const cplx& z : ev) angles.push_back(std::arg(z));
      const LimitLaw law{LimitLaw::Kind::ArcOnCircle, theta};
      return ks_distance(angles, [&](double x) { return law.cdf(x); });
    }
    default: break;
  }
  throw std::invalid_argument("convergence statistic not defined for ensemble " + to_string(spec.kind));
}

std::string statistic_name(EnsembleKind kind) {
  switch (kind) {
    case EnsembleKind::Circulant:
    case EnsembleKind::TildeCirculant:
    case EnsembleKind::SkewCirculant: return "ks_marginal";
    case EnsembleKind::ToeplitzSym:
    case EnsembleKind::Hankel: return "m4";
    default: return "ks";
  }
}

}  // namespace

EsdSummary summarize_esd(const PooledSpectrum& pooled) {
  EsdSummary s;
  s.statistic = statistic_name(pooled.spec.kind);
  s.value = statistic(pooled.spec, pooled.eigenvalues);
  double acc = 0.0;
  for (const auto& ev : pooled.per_replicate) acc += statistic(pooled.spec, ev);
  s.per_replicate_mean = acc / static_cast<double>(pooled.per_replicate.size());
  s.moments = empirical_moments(pooled.eigenvalues, 4);
  s.target_m4 = pooled.spec.kind == EnsembleKind::ToeplitzSym ? 8.0 / 3.0
                : pooled.spec.kind == EnsembleKind::Hankel    ? 2.0
                                                              : std::nan("");
  return s;
}

StudyResult convergence_study(EnsembleSpec spec, const std::vector<std::size_t>& n_grid, std::size_t replicates,
                              std::uint64_t seed, EntryDistribution dist, unsigned threads) {
  if (n_grid.empty()) throw std::invalid_argument("convergence_study: empty n grid");
  if (!std::is_sorted(n_grid.begin(), n_grid.end()) ||
      std::adjacent_find(n_grid.begin(), n_grid.end()) != n_grid.end())
    throw std::invalid_argument("convergence_study: n grid must be strictly ascending");
  StudyResult out;
  out.spec = spec;
  for (std::size_t n : n_grid) {
    spec.n = n;
    out.rows.push_back({n, summarize_esd(pooled_spectrum(spec, replicates, seed, dist, threads))});
  }
  out.decreasing = true;
  for (std::size_t k = 1; k < out.rows.size(); ++k)
    if (out.rows[k].summary.value > out.rows[k - 1].summary.value) out.decreasing = false;
  return out;
}

void write_csv(std::ostream& os, const StudyResult& study) {
  os << "n,statistic,value,per_replicate_mean,m2_re,m4_re\n" << std::setprecision(10);
  for (const auto& row : study.rows)
    os << row.n << ',' << row.summary.statistic << ',' << row.summary.value << ',' << row.summary.per_replicate_mean
       << ',' << row.summary.moments[1].real() << ',' << row.summary.moments[3].real() << '\n';
}

void write_moments_csv(std::ostream& os, std::span<const cplx> moments) {
  os << "p,re,im\n" << std::setprecision(12);
  for (std::size_t p = 0; p < moments.size(); ++p) os << p + 1 << ',' << moments[p].real() << ',' << moments[p].imag() << '\n';
}

}  // namespace circrmt
