#include "circrmt/operators.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "circrmt/fft.hpp"

namespace circrmt {

namespace {

constexpr std::size_t kBlock = 32;

std::vector<cplx> circulant_symbol(std::span<const cplx> g) {
  const auto n = static_cast<std::ptrdiff_t>(g.size());
  std::vector<cplx> tau(2 * g.size() - 1);
  for (std::ptrdiff_t k = -(n - 1); k < n; ++k) tau[static_cast<std::size_t>(k + n - 1)] = g[static_cast<std::size_t>((k + n) % n)];
  return tau;
}

void reverse_rows(DenseMatrix& m) { m = m.colwise().reverse().eval(); }

}  // namespace

StructuredOperator StructuredOperator::toeplitz(std::vector<cplx> tau, bool j_left, bool j_right) {
  if (tau.empty() || tau.size() % 2 == 0)
    throw std::invalid_argument("StructuredOperator: Toeplitz symbol must have length 2n-1");
  StructuredOperator op;
  op.kind_ = Kind::Toeplitz;
  op.n_ = (tau.size() + 1) / 2;
  op.tau_ = std::move(tau);
  op.j_left_ = j_left;
  op.j_right_ = j_right;
  op.prepare();
  return op;
}

StructuredOperator StructuredOperator::diagonal(std::vector<cplx> d) {
  if (d.empty()) throw std::invalid_argument("StructuredOperator: empty diagonal");
  StructuredOperator op;
  op.kind_ = Kind::Diagonal;
  op.n_ = d.size();
  op.diag_ = std::move(d);
  return op;
}

StructuredOperator StructuredOperator::exchange(std::size_t n) {
  if (n == 0) throw std::invalid_argument("StructuredOperator: n must be positive");
  StructuredOperator op;
  op.kind_ = Kind::Exchange;
  op.n_ = n;
  return op;
}

StructuredOperator StructuredOperator::circulant(std::span<const cplx> generator) {
  if (generator.empty()) throw std::invalid_argument("StructuredOperator: empty generator");
  return toeplitz(circulant_symbol(generator));
}

StructuredOperator StructuredOperator::circulant(std::span<const double> c) {
  std::vector<cplx> g(c.begin(), c.end());
  return circulant(std::span<const cplx>(g));
}

StructuredOperator StructuredOperator::tilde_circulant(std::span<const double> c, double theta) {
  const auto g = tilde_generator(c, theta);
  return circulant(std::span<const cplx>(g));
}

StructuredOperator StructuredOperator::skew_circulant(std::span<const double> s) {
  if (s.empty()) throw std::invalid_argument("StructuredOperator: empty sequence");
  const auto n = static_cast<std::ptrdiff_t>(s.size());
  std::vector<cplx> tau(2 * s.size() - 1);
  for (std::ptrdiff_t k = -(n - 1); k < n; ++k)
    tau[static_cast<std::size_t>(k + n - 1)] = k >= 0 ? s[static_cast<std::size_t>(k)] : -s[static_cast<std::size_t>(n + k)];
  return toeplitz(std::move(tau));
}

StructuredOperator StructuredOperator::left_skew_circulant(std::span<const double> l) {
  std::vector<double> rev(l.rbegin(), l.rend());
  auto op = skew_circulant(rev);
  op.j_right_ = true;
  return op;
}

StructuredOperator StructuredOperator::reverse_circulant(std::span<const double> c) {
  auto op = circulant(c);
  op.j_right_ = true;
  return op;
}

StructuredOperator StructuredOperator::toeplitz(std::span<const double> two_sided) {
  return toeplitz(std::vector<cplx>(two_sided.begin(), two_sided.end()));
}

StructuredOperator StructuredOperator::symmetric_toeplitz(std::span<const double> x) {
  if (x.empty()) throw std::invalid_argument("StructuredOperator: empty sequence");
  const auto n = static_cast<std::ptrdiff_t>(x.size());
  std::vector<cplx> tau(2 * x.size() - 1);
  for (std::ptrdiff_t k = -(n - 1); k < n; ++k) tau[static_cast<std::size_t>(k + n - 1)] = x[static_cast<std::size_t>(std::abs(k))];
  return toeplitz(std::move(tau));
}

StructuredOperator StructuredOperator::hankel(std::span<const double> h) {
  if (h.empty() || h.size() % 2 == 0)
    throw std::invalid_argument("StructuredOperator: Hankel input must have length 2n-1");
  // H = T J with tau_m = h_{n-1-m}: reversing h gives the two-sided storage.
  std::vector<cplx> tau(h.rbegin(), h.rend());
  return toeplitz(std::move(tau), false, true);
}

StructuredOperator StructuredOperator::diagonal_D(double theta, std::size_t n, int power) {
  if (n == 0) throw std::invalid_argument("StructuredOperator: n must be positive");
  std::vector<cplx> d(n);
  for (std::size_t j = 0; j < n; ++j)
    d[j] = std::polar(1.0, theta * power * static_cast<double>(j) / static_cast<double>(n));
  return diagonal(std::move(d));
}

void StructuredOperator::prepare() {
  const auto n = n_;
  embed_ = next_pow2(2 * n - 1);
  // First column of the embedding circulant: g[k mod N] = tau_{-k}.
  embed_symbol_.assign(embed_, cplx{});
  for (std::size_t k = 0; k < n; ++k) embed_symbol_[k] = tau_[n - 1 - k];
  for (std::size_t k = 1; k < n; ++k) embed_symbol_[embed_ - k] = tau_[n - 1 + k];
  dft_inplace(embed_symbol_.data(), embed_, 1, -1);
  const double inv = 1.0 / static_cast<double>(embed_);
  for (auto& v : embed_symbol_) v *= inv;
}

StructuredOperator StructuredOperator::adjoint() const {
  switch (kind_) {
    case Kind::Exchange: return *this;
    case Kind::Diagonal: {
      std::vector<cplx> d(diag_.size());
      std::transform(diag_.begin(), diag_.end(), d.begin(), [](cplx v) { return std::conj(v); });
      return diagonal(std::move(d));
    }
    case Kind::Toeplitz: {
      // (J^a T J^b)* = J^b T* J^a with T*_k = conj(tau_{-k}).
      std::vector<cplx> t(tau_.size());
      for (std::size_t p = 0; p < tau_.size(); ++p) t[p] = std::conj(tau_[tau_.size() - 1 - p]);
      return toeplitz(std::move(t), j_right_, j_left_);
    }
  }
  throw std::logic_error("StructuredOperator::adjoint: bad kind");
}

StructuredOperator StructuredOperator::scaled(double factor) const {
  StructuredOperator op = *this;
  for (auto& v : op.tau_) v *= factor;
  for (auto& v : op.diag_) v *= factor;
  for (auto& v : op.embed_symbol_) v *= factor;
  if (kind_ == Kind::Exchange) {
    std::vector<cplx> tau(2 * n_ - 1);
    tau[n_ - 1] = factor;
    return toeplitz(std::move(tau), true, false);
  }
  return op;
}

DenseMatrix StructuredOperator::dense() const {
  const auto n = static_cast<Eigen::Index>(n_);
  DenseMatrix m = DenseMatrix::Zero(n, n);
  switch (kind_) {
    case Kind::Diagonal:
      for (Eigen::Index i = 0; i < n; ++i) m(i, i) = diag_[static_cast<std::size_t>(i)];
      return m;
    case Kind::Exchange:
      for (Eigen::Index i = 0; i < n; ++i) m(i, n - 1 - i) = 1.0;
      return m;
    case Kind::Toeplitz:
      for (Eigen::Index j = 0; j < n; ++j)
        for (Eigen::Index i = 0; i < n; ++i) {
          const auto row = j_left_ ? n - 1 - i : i;
          const auto col = j_right_ ? n - 1 - j : j;
          m(i, j) = tau_[static_cast<std::size_t>(col - row + n - 1)];
        }
      return m;
  }
  return m;
}

void StructuredOperator::apply_toeplitz_block(cplx* columns, std::size_t count,
                                              std::size_t stride) const {
  const std::size_t N = embed_;
  std::vector<cplx> buf(N * count);
  for (std::size_t c = 0; c < count; ++c)
    std::copy_n(columns + c * stride, n_, buf.begin() + static_cast<std::ptrdiff_t>(c * N));
  dft_inplace(buf.data(), N, count, -1);
  for (std::size_t c = 0; c < count; ++c)
    for (std::size_t k = 0; k < N; ++k) buf[c * N + k] *= embed_symbol_[k];
  dft_inplace(buf.data(), N, count, +1);
  for (std::size_t c = 0; c < count; ++c)
    std::copy_n(buf.begin() + static_cast<std::ptrdiff_t>(c * N), n_, columns + c * stride);
}

void StructuredOperator::apply(DenseMatrix& m) const {
  if (static_cast<std::size_t>(m.rows()) != n_)
    throw std::invalid_argument("StructuredOperator::apply: dimension mismatch");
  switch (kind_) {
    case Kind::Diagonal:
      for (Eigen::Index i = 0; i < m.rows(); ++i) m.row(i) *= diag_[static_cast<std::size_t>(i)];
      return;
    case Kind::Exchange: reverse_rows(m); return;
    case Kind::Toeplitz: {
      if (j_right_) reverse_rows(m);
      const auto cols = static_cast<std::size_t>(m.cols());
      for (std::size_t c0 = 0; c0 < cols; c0 += kBlock) {
        const auto count = std::min(kBlock, cols - c0);
        apply_toeplitz_block(m.data() + c0 * n_, count, n_);
      }
      if (j_left_) reverse_rows(m);
      return;
    }
  }
}

std::vector<cplx> StructuredOperator::apply(std::span<const cplx> v) const {
  if (v.size() != n_) throw std::invalid_argument("StructuredOperator::apply: length mismatch");
  DenseMatrix m(static_cast<Eigen::Index>(n_), 1);
  for (std::size_t i = 0; i < n_; ++i) m(static_cast<Eigen::Index>(i), 0) = v[i];
  apply(m);
  return {m.data(), m.data() + n_};
}

std::vector<cplx> fast_matvec_toeplitz(std::span<const double> two_sided, std::span<const cplx> v) {
  if (two_sided.empty() || two_sided.size() % 2 == 0)
    throw std::invalid_argument("fast_matvec_toeplitz: input must have length 2n-1");
  if (v.size() != (two_sided.size() + 1) / 2)
    throw std::invalid_argument("fast_matvec_toeplitz: vector length does not match dimension");
  return StructuredOperator::toeplitz(two_sided).apply(v);
}

}  // namespace circrmt
