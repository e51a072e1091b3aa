#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <numbers>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "circrmt/partitions.hpp"
#include "circrmt/word.hpp"

namespace circrmt {

using cplx = std::complex<double>;

enum class LimitMethod { ClosedForm, MonteCarlo, Riemann };
std::string_view to_string(LimitMethod method);

struct LimitValue {
  cplx value{};
  LimitMethod method = LimitMethod::ClosedForm;
  double mc_error = 0.0;
  std::size_t n_terms = 0;     // admissible (monomial, partition) terms
  std::size_t n_crossing = 0;  // of which not evaluable in closed form
};

enum class CrossingMethod { MonteCarlo, Riemann };

struct LimitOptions {
  CrossingMethod crossing = CrossingMethod::MonteCarlo;
  std::size_t mc_points = 2'000'000;
  int riemann_grid = 40;  // midpoint grid per axis, at most 4 free variables
  std::uint64_t seed = 20240917ULL;
  unsigned threads = 1;
};

// ---- limit laws -------------------------------------------------------------

double complex_gaussian_mixed_moment(int k, int l);
double rayleigh_moment(int p);
double rayleigh_pdf(double x);
double rayleigh_cdf(double x);
double gaussian_moment(int p);
double gaussian_pdf(double x, double variance = 1.0);
double gaussian_cdf(double x, double variance = 1.0);
/// E[exp(i theta k U)], U uniform on [0, 1].
cplx arc_moment(double theta, int k);
/// (e^{iu} - 1) / (iu), with value 1 at u = 0.
cplx exp_integral(double u);

struct LimitLaw {
  enum class Kind { StandardComplexGaussian, StandardGaussian, SymmetrizedRayleigh, ArcOnCircle, BivariateGaussianHalf };
  Kind kind = Kind::StandardGaussian;
  double theta = std::numbers::pi;  // ArcOnCircle only

  /// E[X^p]; complex for the complex-valued kinds.
  cplx moment(int p) const;
  /// Density on the real line. ArcOnCircle uses the angle t of e^{it},
  /// BivariateGaussianHalf its N(0, 1/2) marginal; the complex Gaussian throws.
  double pdf(double x) const;
  double cdf(double x) const;
};

// ---- engine -----------------------------------------------------------------

/// Limit of phi_n(C^{e1} D^{k1} ... C^{e2m} D^{k2m}) with D = diag(e^{i theta j / n}),
/// summed over admissible pair partitions.
LimitValue limit_mixed_moment_CD(const EpsilonPattern& pattern, double theta, const LimitOptions& options = {});

/// Limit of phi_n(word) for words in C, C~, S, T, Ts and D (theta is the D and
/// C~ angle), or words made only of R, L and H.
LimitValue limit_word(const Word& word, double theta, const LimitOptions& options = {});

/// One expanded monomial with its admissible terms, for inspection.
struct ExpandedTerm {
  std::string monomial;
  double weight = 0.0;
  std::vector<double> gap_rates;  // phase rate multiplying index i_{r+2}/n after letter r+1
  LimitTerm term;
};
std::vector<ExpandedTerm> limit_word_terms(const Word& word, double theta, std::size_t max_terms = 10000);

/// p-th moment of the symmetric Toeplitz LSD, phi[((C + S + C* + S*)/2)^p].
LimitValue toeplitz_lsd_moment(int p, const LimitOptions& options = {});
/// p-th moment of the Hankel LSD, phi[((R + L)/sqrt 2)^p].
LimitValue hankel_lsd_moment(int p, const LimitOptions& options = {});

class ResourceLimitError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct SuiteRow {
  std::string name;
  std::string word;
  LimitValue engine;
  cplx reference;
};

std::vector<SuiteRow> remark43_suite(const LimitOptions& options = {});

/// Every symbol occurs equally often at odd and at even positions. Tokens are
/// whitespace separated; a string without whitespace is read per character.
bool is_symmetric_monomial(const std::vector<std::string>& symbols);
bool is_symmetric_monomial(std::string_view word);

}  // namespace circrmt
