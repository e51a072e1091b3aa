#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <numbers>
#include <vector>

#include "circrmt/rng.hpp"
#include "circrmt/word.hpp"

namespace circrmt {

inline constexpr std::uint64_t kDefaultSeed = 20240917ULL;

enum class ProductPath {
  Structured,  // running product updated letter by letter through FFT matvecs
  Dense,       // reference: dense left-to-right matrix products
};

struct McOptions {
  std::size_t n = 256;
  std::size_t replicates = 100;
  std::uint64_t seed = kDefaultSeed;
  double theta = std::numbers::pi;  // used by C~ and D letters
  EntryDistribution distribution = EntryDistribution::StandardGaussian;
  unsigned threads = 1;
  ProductPath path = ProductPath::Structured;
  bool scale_random = true;  // multiply every random letter by n^{-1/2}
};

struct MomentEstimate {
  std::complex<double> mean;
  double std_error = 0.0;  // sample std of per-replicate values / sqrt(replicates)
  std::size_t replicates = 0;
  std::size_t n = 0;
  std::vector<std::complex<double>> per_replicate;
};

/// n^{-1} Tr(word) for replicate `replicate`: each distinct random letter kind
/// gets one fresh realization drawn from the stream (seed, kind, replicate);
/// adjoint letters reuse the same realization.
std::complex<double> replicate_trace(const Word& word, const McOptions& options, std::size_t replicate);

/// Monte Carlo estimate of phi_n(word) = n^{-1} E Tr(word). Replicates run on
/// `options.threads` workers and are reduced in replicate order, so the result
/// does not depend on the thread count.
MomentEstimate trace_moment_mc(const Word& word, const McOptions& options);

}  // namespace circrmt
