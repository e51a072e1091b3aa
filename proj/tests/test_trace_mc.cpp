#include <cmath>
#include <complex>
#include <numbers>

#include "circrmt/trace_mc.hpp"
#include "circrmt/word.hpp"
#include "doctest.h"

using namespace circrmt;
using cplx = std::complex<double>;

TEST_CASE("word grammar") {
  const Word w = parse_word("C C~* D^-2 S* Ts H J L R T D*^3");
  REQUIRE(w.size() == 11);
  CHECK(w.letters[1].kind == LetterKind::CTilde);
  CHECK(w.letters[1].adjoint);
  CHECK(w.letters[2].net_power() == -2);
  CHECK(w.letters[10].net_power() == -3);
  CHECK(parse_word(to_string(w)) == w);
  CHECK(parse_word("").empty());
  CHECK(adjoint(adjoint(w)) == w);
  CHECK(rotate(w, 11) == w);

  try {
    parse_word("C Q S");
    FAIL("expected a parse error");
  } catch (const WordParseError& e) {
    CHECK(e.token() == "Q");
  }
  CHECK_THROWS_AS(parse_word("C**"), WordParseError);
  CHECK_THROWS_AS(parse_word("C^2"), WordParseError);
}

TEST_CASE("empty word has moment one") {
  McOptions o;
  o.n = 16;
  o.replicates = 2;
  const auto e = trace_moment_mc(Word{}, o);
  CHECK(e.mean == cplx(1.0));
  CHECK(e.std_error == 0.0);
}

TEST_CASE("C C* has moment one") {
  McOptions o;
  o.n = 512;
  o.replicates = 100;
  const auto e = trace_moment_mc(parse_word("C C*"), o);
  CHECK(e.replicates == 100);
  CHECK(e.n == 512);
  CHECK(e.std_error > 0.0);
  CHECK(std::abs(e.mean - 1.0) <= 3 * e.std_error);
}

TEST_CASE("structured and dense products agree per replicate") {
  McOptions o;
  o.n = 33;
  o.theta = 1.3;
  for (const char* text : {"C", "C S C* S*", "T T T* T*", "C D C* D C~ D C~* D*", "Ts H Ts", "R L R L J", "L H* T D^-2 S", "D^3"}) {
    INFO(text);
    const Word w = parse_word(text);
    for (std::size_t r = 0; r < 3; ++r) {
      o.path = ProductPath::Structured;
      const cplx a = replicate_trace(w, o, r);
      o.path = ProductPath::Dense;
      const cplx b = replicate_trace(w, o, r);
      CHECK(std::abs(a - b) <= 1e-10 * (1 + std::abs(b)));
    }
  }
}

TEST_CASE("rotation and adjoint invariance") {
  McOptions o;
  o.n = 64;
  o.replicates = 20;
  const Word w = parse_word("C S C* D T*");
  const auto base = trace_moment_mc(w, o);
  for (std::size_t k = 1; k < w.size(); ++k) {
    const auto rot = trace_moment_mc(rotate(w, k), o);
    CHECK(std::abs(rot.mean - base.mean) <= 3 * (rot.std_error + base.std_error) + 1e-12);
  }
  const auto adj = trace_moment_mc(adjoint(w), o);
  CHECK(adj.mean == std::conj(base.mean));
  for (std::size_t r = 0; r < o.replicates; ++r) CHECK(adj.per_replicate[r] == std::conj(base.per_replicate[r]));
}

TEST_CASE("replicate streams are deterministic and thread independent") {
  McOptions o;
  o.n = 48;
  o.replicates = 9;
  const Word w = parse_word("T T* H");
  const auto a = trace_moment_mc(w, o);
  o.threads = 3;
  const auto b = trace_moment_mc(w, o);
  CHECK(a.per_replicate == b.per_replicate);
  CHECK(a.mean == b.mean);
  o.seed += 1;
  CHECK(trace_moment_mc(w, o).mean != a.mean);
}

TEST_CASE("standard error definition") {
  McOptions o;
  o.n = 32;
  o.replicates = 10;
  const auto e = trace_moment_mc(parse_word("S S*"), o);
  cplx mean{};
  for (const auto& v : e.per_replicate) mean += v;
  mean /= 10.0;
  double ss = 0;
  for (const auto& v : e.per_replicate) ss += std::norm(v - mean);
  CHECK(std::abs(e.std_error - std::sqrt(ss / 9.0) / std::sqrt(10.0)) < 1e-14);
}

TEST_CASE("invalid options") {
  McOptions o;
  o.replicates = 1;
  CHECK_THROWS_AS(trace_moment_mc(parse_word("C"), o), std::invalid_argument);
  o.replicates = 2;
  o.n = 0;
  CHECK_THROWS_AS(trace_moment_mc(parse_word("C"), o), std::invalid_argument);
}
