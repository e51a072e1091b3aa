#include <algorithm>
#include <cmath>
#include <numbers>

#include <Eigen/Eigenvalues>

#include "circrmt/ensembles.hpp"
#include "circrmt/operators.hpp"
#include "circrmt/spectra.hpp"
#include "doctest.h"

using namespace circrmt;

namespace {

// O(n^2) DFT with the +1 sign.
std::vector<cplx> direct_dft(const std::vector<cplx>& x) {
  const std::size_t n = x.size();
  std::vector<cplx> out(n);
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t r = 0; r < n; ++r)
      out[j] += x[r] * std::polar(1.0, 2 * std::numbers::pi * static_cast<double>(r * j % n) / static_cast<double>(n));
  return out;
}

std::vector<cplx> sorted(std::vector<cplx> v) {
  std::sort(v.begin(), v.end(), [](cplx a, cplx b) {
    if (std::abs(a.real() - b.real()) > 1e-7) return a.real() < b.real();
    return a.imag() < b.imag();
  });
  return v;
}

std::vector<cplx> dense_eigs(const DenseMatrix& m) {
  Eigen::ComplexEigenSolver<DenseMatrix> es(m, false);
  const auto& ev = es.eigenvalues();
  return {ev.data(), ev.data() + ev.size()};
}

double max_dist(const std::vector<cplx>& a, const std::vector<cplx>& b) {
  REQUIRE(a.size() == b.size());
  double d = 0;
  for (std::size_t k = 0; k < a.size(); ++k) d = std::max(d, std::abs(a[k] - b[k]));
  return d;
}

std::vector<double> sorted_real(const std::vector<cplx>& v) {
  std::vector<double> out;
  for (const auto& z : v) out.push_back(z.real());
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

TEST_CASE("circulant eigenvalues") {
  std::vector<double> e0(6, 0.0);
  e0[0] = 1.0;
  for (const auto& z : eigs_circulant(e0).eigenvalues) CHECK(std::abs(z - 1.0) < 1e-15);

  const std::vector<double> shift{0, 1, 0, 0};
  const auto ev = eigs_circulant(shift).eigenvalues;
  const cplx expect[4] = {1.0, {0, 1}, -1.0, {0, -1}};
  for (int j = 0; j < 4; ++j) CHECK(std::abs(ev[j] - expect[j]) < 1e-15);

  for (std::size_t n : {5u, 16u, 31u, 64u}) {
    const auto c = sample_input(EntryDistribution::StandardGaussian, n, n).values;
    const auto fast = eigs_circulant(c).eigenvalues;
    CHECK(max_dist(fast, direct_dft({c.begin(), c.end()})) < 1e-10);
    CHECK(max_dist(sorted(fast), sorted(dense_eigs(build_circulant(c)))) < 1e-9);
  }
}

TEST_CASE("skew-circulant eigenvalues") {
  std::vector<double> e0(5, 0.0);
  e0[0] = 1.0;
  for (const auto& z : eigs_skew_circulant(e0).eigenvalues) CHECK(std::abs(z - 1.0) < 1e-15);

  const std::vector<double> ab{0.7, -1.3};
  const auto ev2 = sorted(eigs_skew_circulant(ab).eigenvalues);
  CHECK(max_dist(ev2, sorted({cplx(0.7, 1.3), cplx(0.7, -1.3)})) < 1e-14);

  for (std::size_t n : {3u, 8u, 17u, 64u}) {
    const auto s = sample_input(EntryDistribution::StandardGaussian, n, 40 + n).values;
    const auto ev = eigs_skew_circulant(s).eigenvalues;
    std::vector<cplx> formula(n);
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t r = 0; r < n; ++r) {
        const double a = std::numbers::pi * static_cast<double>((2 * j + 1) * r) / static_cast<double>(n);
        formula[j] += cplx(s[r] * std::cos(a), s[r] * std::sin(a));
      }
    CHECK(max_dist(ev, formula) < 1e-10);
    for (std::size_t j = 0; j < n; ++j) CHECK(std::abs(ev[n - 1 - j] - std::conj(ev[j])) < 1e-10);
    CHECK(max_dist(sorted(ev), sorted(dense_eigs(build_skew_circulant(s)))) < 1e-9);
  }
}

TEST_CASE("left skew-circulant: singular values and eigenvalue pairing") {
  std::vector<double> last(6, 0.0);
  last.back() = 1.0;
  for (double v : singular_spectrum_left_skew(last)) CHECK(std::abs(v - 1.0) < 1e-15);

  for (std::size_t n : {2u, 3u, 4u, 5u, 6u, 7u, 8u, 9u, 16u, 31u, 32u, 64u, 128u}) {
    const auto l = sample_input(EntryDistribution::StandardGaussian, n, 7 * n).values;
    const auto L = build_left_skew_circulant(l);
    auto sv = singular_spectrum_left_skew(l);
    std::vector<double> sq;
    for (double v : sv) sq.push_back(v * v);
    std::sort(sq.begin(), sq.end());
    const auto l2 = sorted_real(dense_symmetric_eigs(L * L).eigenvalues);
    for (std::size_t k = 0; k < n; ++k) CHECK(std::abs(sq[k] - l2[k]) < 1e-9 * (1 + l2.back()));

    const auto pairing = sorted_real(eigs_left_skew(l).eigenvalues);
    const auto dense = sorted_real(dense_symmetric_eigs(L).eigenvalues);
    for (std::size_t k = 0; k < n; ++k) CHECK(std::abs(pairing[k] - dense[k]) < 1e-9 * (1 + std::abs(dense.back())));
  }
}

TEST_CASE("reverse circulant eigenvalues") {
  for (std::size_t n : {1u, 2u, 3u, 8u, 15u, 16u}) {
    const auto c = sample_input(EntryDistribution::StandardGaussian, n, 3 * n).values;
    const auto R = build_reverse_circulant(c);
    const auto dense = sorted_real(dense_symmetric_eigs(R).eigenvalues);
    const auto fast = sorted_real(eigs_reverse_circulant(c).eigenvalues);
    for (std::size_t k = 0; k < n; ++k) CHECK(std::abs(dense[k] - fast[k]) < 1e-9);
    // R^2 = C C*: squared eigenvalues are the squared circulant moduli.
    std::vector<double> sq, mod;
    for (double v : dense) sq.push_back(v * v);
    for (const auto& z : eigs_circulant(c).eigenvalues) mod.push_back(std::norm(z));
    std::sort(sq.begin(), sq.end());
    std::sort(mod.begin(), mod.end());
    for (std::size_t k = 0; k < n; ++k) CHECK(std::abs(sq[k] - mod[k]) < 1e-9);
  }
}

TEST_CASE("dense symmetric eigensolver") {
  for (const auto& z : dense_symmetric_eigs(DenseMatrix::Identity(4, 4)).eigenvalues) CHECK(z == cplx(1.0));
  DenseMatrix d = DenseMatrix::Zero(3, 3);
  d(0, 0) = 3;
  d(1, 1) = 1;
  d(2, 2) = 2;
  const auto ev = sorted_real(dense_symmetric_eigs(d).eigenvalues);
  CHECK(ev == std::vector<double>{1.0, 2.0, 3.0});

  DenseMatrix ns = DenseMatrix::Zero(2, 2);
  ns(0, 1) = 1.0;
  CHECK_THROWS_AS(dense_symmetric_eigs(ns), std::invalid_argument);

  const auto x = sample_input(EntryDistribution::StandardGaussian, 48, 5).values;
  const DenseMatrix A = build_symmetric_toeplitz(x);
  const auto pairs = dense_symmetric_eigenpairs(A);
  const Eigen::MatrixXd Ar = A.real();
  for (Eigen::Index k = 0; k < pairs.values.size(); ++k)
    CHECK((Ar * pairs.vectors.col(k) - pairs.values(k) * pairs.vectors.col(k)).norm() <= 1e-8 * Ar.norm());
}

TEST_CASE("spectral samples of symmetric ensembles are real") {
  const EnsembleSpec spec{EnsembleKind::Hankel, 32, std::nullopt};
  const auto h = sample_input(EntryDistribution::StandardGaussian, spec.input_length(), 2).values;
  const auto s = spectrum(spec, h, 1.0 / std::sqrt(32.0));
  CHECK(s.size() == 32);
  for (const auto& z : s.eigenvalues) CHECK(std::abs(z.imag()) <= 1e-9);
  CHECK_NOTHROW(s.real_parts());
  const EnsembleSpec toep{EnsembleKind::ToeplitzNonsym, 4, std::nullopt};
  CHECK_THROWS_AS(spectrum(toep, std::vector<double>(7, 1.0)), std::invalid_argument);
}

TEST_CASE("FFT Toeplitz matvec") {
  const std::size_t n = 512;
  std::vector<double> e0(2 * n - 1, 0.0);
  e0[n - 1] = 1.0;
  const auto vin = sample_input(EntryDistribution::StandardGaussian, n, 1).values;
  const std::vector<cplx> v(vin.begin(), vin.end());
  const auto id = fast_matvec_toeplitz(e0, v);
  for (std::size_t k = 0; k < n; ++k) CHECK(std::abs(id[k] - v[k]) < 1e-12);

  const auto tau = sample_input(EntryDistribution::StandardGaussian, 2 * n - 1, 2).values;
  const auto fast = fast_matvec_toeplitz(tau, v);
  const Eigen::VectorXcd dense = build_toeplitz(tau) * Eigen::Map<const Eigen::VectorXcd>(v.data(), n);
  double num = 0;
  for (std::size_t k = 0; k < n; ++k) num += std::norm(fast[k] - dense(static_cast<Eigen::Index>(k)));
  CHECK(std::sqrt(num) / dense.norm() < 1e-10);
  CHECK_THROWS_AS(fast_matvec_toeplitz(tau, std::vector<cplx>(n + 1)), std::invalid_argument);
}

TEST_CASE("structured operators agree with their dense matrices") {
  const std::size_t n = 13;
  const auto a = sample_input(EntryDistribution::StandardGaussian, n, 21).values;
  const auto b = sample_input(EntryDistribution::StandardGaussian, 2 * n - 1, 22).values;
  const std::vector<std::pair<StructuredOperator, DenseMatrix>> cases = {
      {StructuredOperator::circulant(a), build_circulant(a)},
      {StructuredOperator::tilde_circulant(a, 1.1), build_tilde_circulant(a, 1.1)},
      {StructuredOperator::skew_circulant(a), build_skew_circulant(a)},
      {StructuredOperator::left_skew_circulant(a), build_left_skew_circulant(a)},
      {StructuredOperator::reverse_circulant(a), build_reverse_circulant(a)},
      {StructuredOperator::toeplitz(b), build_toeplitz(b)},
      {StructuredOperator::symmetric_toeplitz(a), build_symmetric_toeplitz(a)},
      {StructuredOperator::hankel(b), build_hankel(b)},
      {StructuredOperator::diagonal_D(-2.0, n, 3), build_diagonal_D(-2.0, n) * build_diagonal_D(-2.0, n) * build_diagonal_D(-2.0, n)},
      {StructuredOperator::exchange(n), build_exchange_J(n)},
  };
  const auto mv = sample_input(EntryDistribution::StandardGaussian, 2 * n * n, 23).values;
  DenseMatrix M(n, n);
  for (std::size_t k = 0; k < n * n; ++k) M(k % n, k / n) = cplx(mv[2 * k], mv[2 * k + 1]);
  for (const auto& [op, dense] : cases) {
    CHECK((op.dense() - dense).cwiseAbs().maxCoeff() < 1e-12);
    CHECK((op.adjoint().dense() - dense.adjoint()).cwiseAbs().maxCoeff() < 1e-12);
    DenseMatrix X = M;
    op.apply(X);
    CHECK((X - dense * M).cwiseAbs().maxCoeff() < 1e-11);
  }
}

TEST_CASE("Parseval check per realization") {
  const std::size_t n = 128;
  const auto c = sample_input(EntryDistribution::StandardGaussian, n, 77).values;
  const auto C = build_circulant(c);
  const double lhs = (C * C.adjoint()).trace().real() / n;
  double rhs = 0;
  for (const auto& z : eigs_circulant(c).eigenvalues) rhs += std::norm(z);
  rhs /= n;
  CHECK(std::abs(lhs - rhs) < 1e-10 * lhs);
}
