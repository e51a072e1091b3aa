#include <algorithm>
#include <numeric>

#include "circrmt/partitions.hpp"
#include "doctest.h"
#include "json.hpp"

using namespace circrmt;

namespace {

// Fixed-point-free involutions found by scanning all permutations.
std::size_t brute_force_count(int len) {
  std::vector<int> perm(len);
  std::iota(perm.begin(), perm.end(), 0);
  std::size_t count = 0;
  do {
    bool ok = true;
    for (int r = 0; r < len && ok; ++r) ok = perm[r] != r && perm[perm[r]] == r;
    count += ok;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return count;
}

}  // namespace

TEST_CASE("pair partition enumeration") {
  CHECK(enumerate_pair_partitions(2).size() == 1);
  const auto p4 = enumerate_pair_partitions(4);
  REQUIRE(p4.size() == 3);
  using P = std::vector<std::pair<int, int>>;
  CHECK(p4[0].pairs() == P{{1, 2}, {3, 4}});
  CHECK(p4[1].pairs() == P{{1, 3}, {2, 4}});
  CHECK(p4[2].pairs() == P{{1, 4}, {2, 3}});
  for (int len : {6, 8}) CHECK(enumerate_pair_partitions(len).size() == brute_force_count(len));
  std::size_t df = 1;
  for (int len = 2; len <= 12; len += 2) {
    df *= static_cast<std::size_t>(len - 1);
    const auto ps = enumerate_pair_partitions(len);
    CHECK(ps.size() == df);
    for (const auto& p : ps) CHECK(p.valid());
    auto sorted = ps;
    std::sort(sorted.begin(), sorted.end(), [](const auto& a, const auto& b) { return a.mate < b.mate; });
    CHECK(std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end());
  }
  CHECK_THROWS_AS(enumerate_pair_partitions(3), std::invalid_argument);
  CHECK_THROWS_AS(enumerate_pair_partitions(0), std::invalid_argument);
  CHECK_THROWS_AS(enumerate_pair_partitions(18), std::invalid_argument);
}

TEST_CASE("crossing classification matches Catalan numbers") {
  const auto p4 = enumerate_pair_partitions(4);
  CHECK_FALSE(is_crossing(p4[0]));
  CHECK(is_crossing(p4[1]));
  CHECK_FALSE(is_crossing(p4[2]));
  const std::size_t catalan[] = {1, 2, 5, 14, 42};
  for (int m = 1; m <= 5; ++m) {
    const auto ps = enumerate_pair_partitions(2 * m);
    CHECK(static_cast<std::size_t>(std::count_if(ps.begin(), ps.end(), [](const auto& p) { return !is_crossing(p); })) ==
          catalan[m - 1]);
  }
}

TEST_CASE("admissibility") {
  const auto p4 = enumerate_pair_partitions(4);
  const EpsilonPattern alt({false, true, false, true});
  CHECK(admissible(p4[0], alt));
  CHECK_FALSE(admissible(p4[1], alt));
  CHECK(admissible(p4[2], alt));
  const EpsilonPattern grouped({false, false, true, true});
  CHECK_FALSE(admissible(p4[0], grouped));
  CHECK(EpsilonPattern::parse("1 * 1 *").star == alt.star);
  CHECK(EpsilonPattern::parse("1*1*").star == alt.star);
  CHECK_FALSE(EpsilonPattern({false, false, true, false}).balanced());
  CHECK_FALSE(EpsilonPattern({false, true}, {}, {0, 1}).balanced());
  const EpsilonPattern ids({false, false, true, true}, {}, {0, 1, 1, 0});
  CHECK_FALSE(admissible(p4[1], ids));
  CHECK(admissible(p4[2], ids));
}

TEST_CASE("index system: crossing example") {
  const auto p = enumerate_pair_partitions(4)[1];
  const auto t = solve_index_system(p, EpsilonPattern({false, false, true, true}, {1, 2, 3, 4}));
  CHECK(t.crossing);
  CHECK(t.free_indices == std::vector<int>{1, 2, 3});
  CHECK(t.forms[0] == std::vector<int>{1, 0, 0});
  CHECK(t.forms[1] == std::vector<int>{0, 1, 0});
  CHECK(t.forms[2] == std::vector<int>{0, 0, 1});
  CHECK(t.forms[3] == std::vector<int>{1, -1, 1});  // i4 = i1 - i2 + i3
  // k_r multiplies index i_{r+1}: k1 at i2, k2 at i3, k3 at i4, k4 at i1.
  CHECK(t.coeffs == std::vector<int>{4 + 3, 1 - 3, 2 + 3});
  CHECK_THROWS_AS(solve_index_system(p, EpsilonPattern({false, true, false, true})), std::logic_error);
}

TEST_CASE("index system: invariants over all admissible terms") {
  for (int len = 2; len <= 10; len += 2) {
    const auto ps = enumerate_pair_partitions(len);
    std::vector<bool> star(len);
    for (int r = 0; r < len; ++r) star[r] = r % 2;
    for (unsigned shuffle = 0; shuffle < 3; ++shuffle) {
      std::vector<bool> s = star;
      std::rotate(s.begin(), s.begin() + shuffle % len, s.end());
      if (shuffle == 2) std::sort(s.begin(), s.end());
      const EpsilonPattern pattern(s);
      for (const auto& p : ps) {
        if (!admissible(p, pattern)) continue;
        const auto t = solve_index_system(p, pattern);
        CHECK(t.free_count() == static_cast<std::size_t>(len / 2 + 1));
        for (const auto& f : t.forms)
          for (int c : f) CHECK((c >= -1 && c <= 1));
        for (const auto& [a, b] : p.pairs())
          for (std::size_t j = 0; j < t.free_count(); ++j)
            CHECK(t.forms[a % len][j] - t.forms[a - 1][j] + t.forms[b % len][j] - t.forms[b - 1][j] == 0);
        for (std::size_t j = 0; j < t.free_count(); ++j) {
          std::vector<int> unit(t.free_count(), 0);
          unit[j] = 1;
          CHECK(t.forms[t.free_indices[j] - 1] == unit);
        }
        if (!t.crossing) CHECK(forms_trivial(t.forms));
      }
    }
  }
}

TEST_CASE("non-crossing coefficient vector regroups the diag powers") {
  const EpsilonPattern pattern({false, true, false, true, false, true}, {3, -1, 4, 1, -5, 9});
  for (const auto& p : enumerate_pair_partitions(6)) {
    if (!admissible(p, pattern) || is_crossing(p)) continue;
    const auto t = solve_index_system(p, pattern);
    CHECK(std::accumulate(t.coeffs.begin(), t.coeffs.end(), 0) == 3 - 1 + 4 + 1 - 5 + 9);
  }
}

TEST_CASE("limit terms serialize to JSON") {
  const auto p = enumerate_pair_partitions(4)[1];
  const nlohmann::json j = solve_index_system(p, EpsilonPattern({false, false, true, true}));
  CHECK(j["crossing"] == true);
  CHECK(j["partition"].size() == 2);
  CHECK(j["forms"][3] == nlohmann::json({1, -1, 1}));
  CHECK(j["free_indices"] == nlohmann::json({1, 2, 3}));
}
