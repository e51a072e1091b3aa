#include <cmath>
#include <numbers>

#include "circrmt/ensembles.hpp"
#include "doctest.h"

using namespace circrmt;

namespace {

double max_abs(const DenseMatrix& a) { return a.cwiseAbs().maxCoeff(); }

}  // namespace

TEST_CASE("sample_input: support, determinism, variance") {
  const auto r = sample_input(EntryDistribution::Rademacher, 64, 5);
  for (double v : r.values) CHECK((v == 1.0 || v == -1.0));
  CHECK(sample_input(EntryDistribution::StandardGaussian, 100, 9).values ==
        sample_input(EntryDistribution::StandardGaussian, 100, 9).values);
  CHECK(sample_input(EntryDistribution::StandardGaussian, 100, 9).values !=
        sample_input(EntryDistribution::StandardGaussian, 100, 10).values);
  CHECK_THROWS_AS(sample_input(EntryDistribution::StandardGaussian, 0, 1), std::invalid_argument);

  for (auto dist : {EntryDistribution::StandardGaussian, EntryDistribution::Rademacher, EntryDistribution::UniformScaled}) {
    const auto v = sample_input(dist, 1'000'000, 123).values;
    double mean = 0, sq = 0;
    for (double x : v) mean += x;
    mean /= static_cast<double>(v.size());
    for (double x : v) sq += (x - mean) * (x - mean);
    CHECK(std::abs(mean) < 0.01);
    CHECK(std::abs(sq / static_cast<double>(v.size()) - 1.0) < 0.01);
  }
  for (double x : sample_input(EntryDistribution::UniformScaled, 1000, 2).values) CHECK(std::abs(x) <= std::sqrt(3.0));
}

TEST_CASE("circulant: index formula and row shifts") {
  const std::vector<double> c{1.5, -2.0, 0.25};
  const auto C = build_circulant(c);
  const double expect[3][3] = {{1.5, -2.0, 0.25}, {0.25, 1.5, -2.0}, {-2.0, 0.25, 1.5}};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) CHECK(C(i, j) == cplx(expect[i][j]));
  CHECK(build_circulant(std::vector<double>{4.0})(0, 0) == cplx(4.0));

  const auto v = sample_input(EntryDistribution::StandardGaussian, 9, 1).values;
  const auto B = build_circulant(v);
  for (int i = 1; i < 9; ++i)
    for (int j = 0; j < 9; ++j) CHECK(B(i, (j + 1) % 9) == B(i - 1, j));
}

TEST_CASE("tilde circulant") {
  const std::vector<double> c{1.0, 1.0};
  const auto g = tilde_generator(c, std::numbers::pi);
  CHECK(std::abs(g[0] - cplx(1, 0)) < 1e-15);
  CHECK(std::abs(g[1] - cplx(0, 1)) < 1e-15);
  const auto v = sample_input(EntryDistribution::StandardGaussian, 7, 3).values;
  CHECK(max_abs(build_tilde_circulant(v, 0.0) - build_circulant(v)) == 0.0);
  const auto Ct = build_tilde_circulant(v, 2.0);
  for (int i = 0; i < 7; ++i)
    for (int j = 0; j < 7; ++j) CHECK(std::abs(std::abs(Ct(i, j)) - std::abs(v[(j - i + 7) % 7])) < 1e-14);
  CHECK_THROWS_AS(build_tilde_circulant(v, 4.0), std::invalid_argument);
}

TEST_CASE("skew and left skew circulants") {
  const std::vector<double> s{2.0, 3.0};
  const auto S = build_skew_circulant(s);
  CHECK(S(0, 0) == cplx(2.0));
  CHECK(S(0, 1) == cplx(3.0));
  CHECK(S(1, 0) == cplx(-3.0));
  CHECK(S(1, 1) == cplx(2.0));

  const auto L2 = build_left_skew_circulant(s);
  CHECK(L2(0, 0) == cplx(2.0));
  CHECK(L2(0, 1) == cplx(3.0));
  CHECK(L2(1, 0) == cplx(3.0));
  CHECK(L2(1, 1) == cplx(-2.0));

  for (std::size_t n : {1u, 4u, 7u, 16u}) {
    const auto l = sample_input(EntryDistribution::StandardGaussian, n, 11 + n).values;
    const auto L = build_left_skew_circulant(l);
    CHECK(L == L.transpose());
    const std::vector<double> rev(l.rbegin(), l.rend());
    CHECK(L == build_skew_circulant(rev) * build_exchange_J(n));
    const auto Sk = build_skew_circulant(l);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        const double e = j >= i ? l[j - i] : -l[n + j - i];
        CHECK(Sk(i, j) == cplx(e));
      }
  }
}

TEST_CASE("reverse circulant, Toeplitz, Hankel, D, J") {
  const auto c = sample_input(EntryDistribution::StandardGaussian, 8, 4).values;
  const auto R = build_reverse_circulant(c);
  CHECK(R == R.transpose());
  CHECK(R == build_circulant(c) * build_exchange_J(8));

  const std::vector<double> t3{1.0, 2.0, 3.0};  // tau_{-1}, tau_0, tau_1
  const auto T = build_toeplitz(t3);
  CHECK(T(0, 0) == cplx(2.0));
  CHECK(T(0, 1) == cplx(3.0));
  CHECK(T(1, 0) == cplx(1.0));
  CHECK(T(1, 1) == cplx(2.0));
  CHECK_THROWS_AS(build_toeplitz(std::vector<double>{1.0, 2.0}), std::invalid_argument);

  const auto H = build_hankel(t3);
  CHECK(H(0, 0) == cplx(1.0));
  CHECK(H(0, 1) == cplx(2.0));
  CHECK(H(1, 0) == cplx(2.0));
  CHECK(H(1, 1) == cplx(3.0));
  CHECK_THROWS_AS(build_hankel(std::vector<double>{1.0, 2.0, 3.0, 4.0}), std::invalid_argument);
  const auto h = sample_input(EntryDistribution::StandardGaussian, 2 * 9 - 1, 7).values;
  const auto H9 = build_hankel(h);
  CHECK(H9 == H9.transpose());
  for (int i = 0; i < 9; ++i)
    for (int j = 0; j < 9; ++j) CHECK(H9(i, j) == cplx(h[i + j]));

  const auto x = sample_input(EntryDistribution::StandardGaussian, 5, 8).values;
  const auto Ts = build_symmetric_toeplitz(x);
  CHECK(Ts == Ts.transpose());
  for (int i = 0; i < 5; ++i)
    for (int j = 0; j < 5; ++j) CHECK(Ts(i, j) == cplx(x[std::abs(i - j)]));

  const auto D = build_diagonal_D(std::numbers::pi, 2);
  CHECK(std::abs(D(1, 1) - cplx(0, 1)) < 1e-15);
  CHECK(build_diagonal_D(0.0, 5) == DenseMatrix::Identity(5, 5));
  const auto D9 = build_diagonal_D(2.5, 9);
  CHECK(max_abs(D9 * D9.adjoint() - DenseMatrix::Identity(9, 9)) < 1e-15);

  const auto J = build_exchange_J(7);
  CHECK(J * J == DenseMatrix::Identity(7, 7));
  CHECK(J == J.transpose());
  CHECK(build_exchange_J(2)(0, 1) == cplx(1.0));
}

TEST_CASE("EnsembleSpec validation") {
  CHECK_THROWS_AS((EnsembleSpec{EnsembleKind::DiagonalD, 4, std::nullopt}.validate()), std::invalid_argument);
  CHECK_THROWS_AS((EnsembleSpec{EnsembleKind::Circulant, 4, 1.0}.validate()), std::invalid_argument);
  CHECK_THROWS_AS((EnsembleSpec{EnsembleKind::TildeCirculant, 4, 3.5}.validate()), std::invalid_argument);
  CHECK_THROWS_AS((EnsembleSpec{EnsembleKind::Circulant, 0, std::nullopt}.validate()), std::invalid_argument);
  CHECK(parse_ensemble(to_string(EnsembleKind::Hankel)) == EnsembleKind::Hankel);
}

TEST_CASE("structural identities hold to rounding error") {
  for (std::size_t n : {2u, 3u, 8u, 64u, 257u})
    for (const auto& id : check_decompositions(n, 99)) {
      INFO(id.name << " n=" << n);
      CHECK(id.relative() <= 1e-12);
    }
  CHECK_THROWS_AS(check_decompositions(1, 1), std::invalid_argument);
}

TEST_CASE("skew circulants commute, left skew circulants half-commute") {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto c = check_commutation(64, seed, seed % 2 ? EntryDistribution::Rademacher : EntryDistribution::StandardGaussian);
    CHECK(c.skew_relative <= 1e-10);
    CHECK(c.left_skew_relative <= 1e-10);
  }
}
