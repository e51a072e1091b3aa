#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

namespace circrmt {

/// Fixed-point-free involution of {0, ..., 2m-1}; mate[r] is the partner of r.
struct PairPartition {
  std::vector<int> mate;

  std::size_t size() const { return mate.size(); }
  std::size_t pair_count() const { return mate.size() / 2; }
  /// Pairs (s, t) with s < t, 1-based, ordered by s.
  std::vector<std::pair<int, int>> pairs() const;
  bool valid() const;
  bool operator==(const PairPartition&) const = default;
};

/// All (2m-1)!! pair partitions of 2m points in lexicographic order of mates.
/// Throws std::invalid_argument unless two_m is even, positive and at most 16.
std::vector<PairPartition> enumerate_pair_partitions(int two_m);

bool is_crossing(const PairPartition& p);

/// Letter data of a monomial C^{e1} D^{k1} C^{e2} D^{k2} ... C^{e2m} D^{k2m}.
/// `ids` distinguishes independent circulants; pairs may only join equal ids.
struct EpsilonPattern {
  std::vector<bool> star;
  std::vector<int> diag_powers;
  std::vector<int> ids;

  EpsilonPattern() = default;
  EpsilonPattern(std::vector<bool> star_flags, std::vector<int> powers = {}, std::vector<int> matrix_ids = {});

  std::size_t size() const { return star.size(); }
  /// For every matrix id, as many plain as starred letters.
  bool balanced() const;
  /// Parses e.g. "1 * 1 *"; `1` and `*` may also be written without spaces.
  static EpsilonPattern parse(const std::string& text);
};

bool admissible(const PairPartition& p, const EpsilonPattern& pattern);

/// Solution of the index system i_{s+1} - i_s + i_{t+1} - i_t = 0 for all pairs.
/// forms[r] holds the integer coefficients of index i_{r+1} in the free
/// indices; free_indices are 1-based cycle positions.
struct IndexSolution {
  std::vector<int> free_indices;
  std::vector<std::vector<int>> forms;
};

IndexSolution solve_indices(const PairPartition& p);

struct LimitTerm {
  PairPartition partition;
  bool crossing = false;
  std::vector<int> free_indices;
  std::vector<std::vector<int>> forms;
  /// k^pi: diag power k_r folded against the form of the index it multiplies.
  std::vector<int> coeffs;

  std::size_t free_count() const { return free_indices.size(); }
};

/// Throws std::logic_error when p is not admissible for the pattern.
LimitTerm solve_index_system(const PairPartition& p, const EpsilonPattern& pattern);

/// True when every form is a single free variable.
bool forms_trivial(const std::vector<std::vector<int>>& forms);

void to_json(nlohmann::json& j, const PairPartition& p);
void to_json(nlohmann::json& j, const LimitTerm& t);

}  // namespace circrmt
