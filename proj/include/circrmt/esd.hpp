#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "circrmt/ensembles.hpp"
#include "circrmt/limits.hpp"
#include "circrmt/spectra.hpp"

namespace circrmt {

struct Histogram1D {
  std::vector<double> bin_edges;
  std::vector<std::size_t> counts;
  std::size_t total = 0;
};

/// Freedman-Diaconis binning unless `bins` is given. Throws on an empty sample.
Histogram1D histogram(std::span<const double> values, std::optional<std::size_t> bins = std::nullopt);
void write_csv(std::ostream& os, const Histogram1D& h);

/// Entry p-1 is n^{-1} sum_j lambda_j^p for p = 1..max_p.
std::vector<cplx> empirical_moments(std::span<const cplx> eigenvalues, int max_p);
std::vector<cplx> empirical_moments(const SpectralSample& sample, int max_p);

/// sup_x |F_emp(x) - cdf(x)|; throws std::invalid_argument on an empty sample.
double ks_distance(std::span<const double> sample, const std::function<double(double)>& cdf);

struct Esd2D {
  std::vector<std::pair<double, double>> points;
  double ks_re = 0.0;  // marginal KS against N(0, 1/2)
  double ks_im = 0.0;
  Eigen::Matrix2d covariance = Eigen::Matrix2d::Zero();
  std::pair<double, double> mean{0.0, 0.0};
};

/// All eigenvalues enter the scatter and the marginal statistics.
Esd2D esd_complex(std::span<const cplx> eigenvalues);

/// Eigenvalues of `replicates` independent realizations, each scaled by
/// n^{-1/2} for random ensembles. Replicate r draws its input from the stream
/// (seed, ensemble kind, r).
struct PooledSpectrum {
  EnsembleSpec spec;
  std::size_t replicates = 0;
  std::vector<cplx> eigenvalues;                  // replicate-major
  std::vector<std::vector<cplx>> per_replicate;
};

PooledSpectrum pooled_spectrum(const EnsembleSpec& spec, std::size_t replicates, std::uint64_t seed,
                               EntryDistribution dist = EntryDistribution::StandardGaussian, unsigned threads = 1);

/// Limit law of the ensemble's ESD and the statistic compared against it.
struct EsdSummary {
  std::string statistic;  // "ks", "ks_marginal" or "m4"
  double value = 0.0;     // pooled KS distance, or |m4 - target|
  double per_replicate_mean = 0.0;
  std::vector<cplx> moments;  // pooled empirical moments 1..4
  double target_m4 = 0.0;
};

EsdSummary summarize_esd(const PooledSpectrum& pooled);

struct StudyRow {
  std::size_t n = 0;
  EsdSummary summary;
};

struct StudyResult {
  EnsembleSpec spec;
  std::vector<StudyRow> rows;
  bool decreasing = false;  // statistic non-increasing along the n grid
};

StudyResult convergence_study(EnsembleSpec spec, const std::vector<std::size_t>& n_grid, std::size_t replicates,
                              std::uint64_t seed, EntryDistribution dist = EntryDistribution::StandardGaussian,
                              unsigned threads = 1);

void write_csv(std::ostream& os, const StudyResult& study);
void write_moments_csv(std::ostream& os, std::span<const cplx> moments);

}  // namespace circrmt
