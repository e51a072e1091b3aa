#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "circrmt/rng.hpp"

namespace circrmt {

using cplx = std::complex<double>;

/// Dense n x n complex matrix (column-major storage, (i, j) indexing).
using DenseMatrix = Eigen::MatrixXcd;

enum class EnsembleKind {
  Circulant,
  TildeCirculant,
  SkewCirculant,
  LeftSkewCirculant,
  ReverseCirculant,
  ToeplitzNonsym,
  ToeplitzSym,
  Hankel,
  DiagonalD,
  ExchangeJ,
};

std::string to_string(EnsembleKind kind);
EnsembleKind parse_ensemble(std::string_view name);
bool requires_theta(EnsembleKind kind);
bool is_random(EnsembleKind kind);

struct EnsembleSpec {
  EnsembleKind kind = EnsembleKind::Circulant;
  std::size_t n = 1;
  std::optional<double> theta;

  /// Throws std::invalid_argument unless n >= 1, theta is present exactly when
  /// the kind needs it, and |theta| <= pi.
  void validate() const;

  /// Length of the input sequence: n, 2n-1 for two-sided Toeplitz/Hankel, 0 for
  /// the deterministic D and J.
  std::size_t input_length() const;
};

// Two-sided Toeplitz input: storage position k holds tau_{k-(n-1)}, so a
// sequence of length 2n-1 runs tau_{-(n-1)}, ..., tau_0, ..., tau_{n-1}.

/// Entry (i, j) = c_{(j-i) mod n}.
DenseMatrix build_circulant(std::span<const double> c);
DenseMatrix build_circulant(std::span<const cplx> generator);

/// Circulant generated by (c_0, c_1 eta, ..., c_{n-1} eta^{n-1}), eta = exp(i theta / n).
DenseMatrix build_tilde_circulant(std::span<const double> c, double theta);
std::vector<cplx> tilde_generator(std::span<const double> c, double theta);

/// Entry (i, j) = s_{j-i} above the diagonal, -s_{n+j-i} below it.
DenseMatrix build_skew_circulant(std::span<const double> s);

/// Symmetric; entry (i, j) = l_{i+j} when i + j < n and -l_{i+j-n} otherwise.
DenseMatrix build_left_skew_circulant(std::span<const double> l);

/// C J; entry (i, j) = c_{(n-1-j-i) mod n}.
DenseMatrix build_reverse_circulant(std::span<const double> c);

/// Entry (i, j) = tau_{j-i}; throws unless the length is odd.
DenseMatrix build_toeplitz(std::span<const double> two_sided);

/// Entry (i, j) = x_{|i-j|}.
DenseMatrix build_symmetric_toeplitz(std::span<const double> x);

/// Entry (i, j) = h_{i+j}; throws unless the length is odd.
DenseMatrix build_hankel(std::span<const double> h);

/// diag(1, eta, ..., eta^{n-1}) with eta = exp(i theta / n).
DenseMatrix build_diagonal_D(double theta, std::size_t n);

DenseMatrix build_exchange_J(std::size_t n);

/// Dispatches on spec.kind; `values` must have spec.input_length() entries.
DenseMatrix build(const EnsembleSpec& spec, std::span<const double> values);

struct IdentityCheck {
  std::string name;
  double max_abs = 0.0;  // entrywise max |lhs - rhs|
  double scale = 0.0;    // entrywise max |rhs|
  double relative() const { return scale > 0.0 ? max_abs / scale : max_abs; }
};

/// Assembles both sides of every structural identity relating the ensembles
/// from shared random inputs: T = (C+S)/sqrt2, S = D C~ D* (theta = pi),
/// L = S J, H = T J / sqrt2, Ts = (T+T*)/sqrt2, R^2 = C C*, L^2 = S S*.
std::vector<IdentityCheck> check_decompositions(
    std::size_t n, std::uint64_t seed,
    EntryDistribution dist = EntryDistribution::StandardGaussian);

struct CommutationCheck {
  double skew_relative = 0.0;       // |S1 S2 - S2 S1|_F / (|S1|_F |S2|_F)
  double left_skew_relative = 0.0;  // |L1 L2 L3 - L3 L2 L1|_F / prod |Li|_F
};

CommutationCheck check_commutation(std::size_t n, std::uint64_t seed,
                                   EntryDistribution dist = EntryDistribution::StandardGaussian);

}  // namespace circrmt
