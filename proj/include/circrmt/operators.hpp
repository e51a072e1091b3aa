#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include "circrmt/ensembles.hpp"

namespace circrmt {

/// A matrix of the form J^a T(tau) J^b (T Toeplitz, J the exchange matrix) or a
/// diagonal. Every ensemble of the library is one of these; products with a
/// block of columns cost O(n log n) per column through a circulant embedding.
class StructuredOperator {
 public:
  enum class Kind { Toeplitz, Diagonal, Exchange };

  /// tau in the two-sided storage convention (length 2n-1, tau_0 at n-1).
  static StructuredOperator toeplitz(std::vector<cplx> tau, bool j_left = false, bool j_right = false);
  static StructuredOperator diagonal(std::vector<cplx> d);
  static StructuredOperator exchange(std::size_t n);

  static StructuredOperator circulant(std::span<const cplx> generator);
  static StructuredOperator circulant(std::span<const double> c);
  static StructuredOperator tilde_circulant(std::span<const double> c, double theta);
  static StructuredOperator skew_circulant(std::span<const double> s);
  static StructuredOperator left_skew_circulant(std::span<const double> l);
  static StructuredOperator reverse_circulant(std::span<const double> c);
  static StructuredOperator toeplitz(std::span<const double> two_sided);
  static StructuredOperator symmetric_toeplitz(std::span<const double> x);
  static StructuredOperator hankel(std::span<const double> h);
  /// D(theta)^power.
  static StructuredOperator diagonal_D(double theta, std::size_t n, int power = 1);

  Kind kind() const { return kind_; }
  std::size_t dim() const { return n_; }
  bool uses_fft() const { return kind_ == Kind::Toeplitz; }

  StructuredOperator adjoint() const;
  StructuredOperator scaled(double factor) const;

  DenseMatrix dense() const;

  /// m <- A m.
  void apply(DenseMatrix& m) const;
  std::vector<cplx> apply(std::span<const cplx> v) const;

 private:
  StructuredOperator() = default;
  void prepare();
  void apply_toeplitz_block(cplx* columns, std::size_t count, std::size_t stride) const;

  Kind kind_ = Kind::Diagonal;
  std::size_t n_ = 0;
  std::vector<cplx> tau_;   // Toeplitz symbol, two-sided storage
  std::vector<cplx> diag_;  // Diagonal entries
  bool j_left_ = false;
  bool j_right_ = false;
  std::size_t embed_ = 0;           // circulant embedding length
  std::vector<cplx> embed_symbol_;  // forward DFT of the embedded first column, divided by embed_
};

/// Toeplitz matrix-vector product through circulant embedding; equals the dense
/// product to rounding. Throws std::invalid_argument on length mismatch.
std::vector<cplx> fast_matvec_toeplitz(std::span<const double> two_sided, std::span<const cplx> v);

}  // namespace circrmt
