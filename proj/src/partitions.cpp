#include "circrmt/partitions.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <functional>
#include <map>
#include <stdexcept>

#include <Eigen/Dense>

namespace circrmt {

std::vector<std::pair<int, int>> PairPartition::pairs() const {
  std::vector<std::pair<int, int>> out;
  for (std::size_t r = 0; r < mate.size(); ++r)
    if (static_cast<int>(r) < mate[r]) out.emplace_back(static_cast<int>(r) + 1, mate[r] + 1);
  return out;
}

bool PairPartition::valid() const {
  const int len = static_cast<int>(mate.size());
  if (len % 2 != 0) return false;
  for (int r = 0; r < len; ++r) {
    const int q = mate[r];
    if (q < 0 || q >= len || q == r || mate[q] != r) return false;
  }
  return true;
}

std::vector<PairPartition> enumerate_pair_partitions(int two_m) {
  if (two_m <= 0 || two_m % 2 != 0) throw std::invalid_argument("enumerate_pair_partitions: size must be even and positive");
  if (two_m > 16) throw std::invalid_argument("enumerate_pair_partitions: size exceeds 16");
  std::vector<PairPartition> out;
  std::vector<int> mate(two_m, -1);
  std::function<void()> rec = [&] {
    const auto first = std::find(mate.begin(), mate.end(), -1);
    if (first == mate.end()) {
      out.push_back({mate});
      return;
    }
    const int a = static_cast<int>(first - mate.begin());
    for (int b = a + 1; b < two_m; ++b) {
      if (mate[b] != -1) continue;
      mate[a] = b;
      mate[b] = a;
      rec();
      mate[a] = mate[b] = -1;
    }
  };
  rec();
  return out;
}

bool is_crossing(const PairPartition& p) {
  const auto ps = p.pairs();
  for (const auto& [a, b] : ps)
    for (const auto& [c, d] : ps)
      if (a < c && c < b && b < d) return true;
  return false;
}

EpsilonPattern::EpsilonPattern(std::vector<bool> star_flags, std::vector<int> powers, std::vector<int> matrix_ids)
    : star(std::move(star_flags)), diag_powers(std::move(powers)), ids(std::move(matrix_ids)) {
  if (diag_powers.empty()) diag_powers.assign(star.size(), 0);
  if (ids.empty()) ids.assign(star.size(), 0);
  if (diag_powers.size() != star.size() || ids.size() != star.size())
    throw std::invalid_argument("EpsilonPattern: star flags, diag powers and ids must have equal length");
}

bool EpsilonPattern::balanced() const {
  std::map<int, int> net;
  for (std::size_t r = 0; r < star.size(); ++r) net[ids[r]] += star[r] ? -1 : 1;
  return std::all_of(net.begin(), net.end(), [](const auto& kv) { return kv.second == 0; });
}

EpsilonPattern EpsilonPattern::parse(const std::string& text) {
  std::vector<bool> flags;
  for (char ch : text) {
    if (std::isspace(static_cast<unsigned char>(ch)) || ch == ',') continue;
    if (ch == '1') flags.push_back(false);
    else if (ch == '*') flags.push_back(true);
    else throw std::invalid_argument(std::string("EpsilonPattern::parse: unexpected character '") + ch + "'");
  }
  return EpsilonPattern(std::move(flags));
}

bool admissible(const PairPartition& p, const EpsilonPattern& pattern) {
  if (p.size() != pattern.size()) throw std::invalid_argument("admissible: partition and pattern lengths differ");
  for (std::size_t r = 0; r < p.size(); ++r) {
    const auto q = static_cast<std::size_t>(p.mate[r]);
    if (pattern.star[r] == pattern.star[q] || pattern.ids[r] != pattern.ids[q]) return false;
  }
  return true;
}

namespace {

using IntMatrix = Eigen::Matrix<long long, Eigen::Dynamic, Eigen::Dynamic>;

// Rows i_1..i_2m in the parameters (y0, y_1..y_m): i_r = y0 + sum_{k<r} alpha_k with
// alpha_s = y_j and alpha_t = -y_j for the j-th pair (s, t) ordered by s.
IntMatrix cumulative_parametrisation(const PairPartition& p) {
  const int len = static_cast<int>(p.size());
  const int m = len / 2;
  std::vector<int> alpha_var(len, 0), alpha_sign(len, 0);
  int j = 0;
  for (const auto& [s, t] : p.pairs()) {
    ++j;
    alpha_var[s - 1] = j;
    alpha_sign[s - 1] = 1;
    alpha_var[t - 1] = j;
    alpha_sign[t - 1] = -1;
  }
  IntMatrix M = IntMatrix::Zero(len, m + 1);
  for (int r = 0; r < len; ++r) {
    M(r, 0) = 1;
    for (int k = 0; k < r; ++k) M(r, alpha_var[k]) += alpha_sign[k];
  }
  return M;
}

long long rounded_det(const IntMatrix& B) { return std::llround(B.cast<double>().determinant()); }

bool try_rows(const IntMatrix& M, const std::vector<int>& rows, IntMatrix& forms) {
  const auto k = static_cast<Eigen::Index>(rows.size());
  IntMatrix B(k, M.cols());
  for (Eigen::Index a = 0; a < k; ++a) B.row(a) = M.row(rows[a]);
  if (std::llabs(rounded_det(B)) != 1) return false;
  const Eigen::MatrixXd inv = B.cast<double>().inverse();
  const Eigen::MatrixXd f = M.cast<double>() * inv;
  forms = f.array().round().cast<long long>().matrix();
  if ((f - forms.cast<double>()).cwiseAbs().maxCoeff() > 1e-9) return false;
  return forms * B == M;
}

}  // namespace

IndexSolution solve_indices(const PairPartition& p) {
  if (!p.valid() || p.size() == 0) throw std::invalid_argument("solve_indices: invalid pair partition");
  const IntMatrix M = cumulative_parametrisation(p);
  const auto len = M.rows();
  const auto dim = M.cols();

  std::vector<int> rows;
  for (Eigen::Index r = 0; r < len && static_cast<Eigen::Index>(rows.size()) < dim; ++r) {
    IntMatrix trial(static_cast<Eigen::Index>(rows.size()) + 1, dim);
    for (std::size_t a = 0; a < rows.size(); ++a) trial.row(static_cast<Eigen::Index>(a)) = M.row(rows[a]);
    trial.row(trial.rows() - 1) = M.row(r);
    Eigen::FullPivLU<Eigen::MatrixXd> lu(trial.cast<double>());
    if (lu.rank() == trial.rows()) rows.push_back(static_cast<int>(r));
  }

  IntMatrix forms;
  if (!try_rows(M, rows, forms)) {
    std::vector<bool> pick(static_cast<std::size_t>(len), false);
    std::fill(pick.begin(), pick.begin() + dim, true);
    bool found = false;
    do {
      rows.clear();
      for (Eigen::Index r = 0; r < len; ++r)
        if (pick[static_cast<std::size_t>(r)]) rows.push_back(static_cast<int>(r));
      found = try_rows(M, rows, forms);
    } while (!found && std::prev_permutation(pick.begin(), pick.end()));
    if (!found) throw std::logic_error("solve_indices: no unimodular free-index set");
  }

  IndexSolution out;
  for (int r : rows) out.free_indices.push_back(r + 1);
  out.forms.assign(static_cast<std::size_t>(len), std::vector<int>(static_cast<std::size_t>(dim)));
  for (Eigen::Index r = 0; r < len; ++r)
    for (Eigen::Index c = 0; c < dim; ++c) out.forms[r][c] = static_cast<int>(forms(r, c));
  return out;
}

LimitTerm solve_index_system(const PairPartition& p, const EpsilonPattern& pattern) {
  if (!admissible(p, pattern)) throw std::logic_error("solve_index_system: partition is not admissible for the pattern");
  auto sol = solve_indices(p);
  LimitTerm t;
  t.partition = p;
  t.crossing = is_crossing(p);
  t.free_indices = std::move(sol.free_indices);
  t.forms = std::move(sol.forms);
  const std::size_t len = p.size();
  t.coeffs.assign(t.free_indices.size(), 0);
  for (std::size_t r = 0; r < len; ++r) {
    const auto& form = t.forms[(r + 1) % len];
    for (std::size_t j = 0; j < form.size(); ++j) t.coeffs[j] += pattern.diag_powers[r] * form[j];
  }
  return t;
}

bool forms_trivial(const std::vector<std::vector<int>>& forms) {
  return std::all_of(forms.begin(), forms.end(), [](const std::vector<int>& f) {
    int nonzero = 0;
    bool unit = true;
    for (int c : f) {
      if (c != 0) ++nonzero;
      if (c != 0 && c != 1) unit = false;
    }
    return nonzero == 1 && unit;
  });
}

void to_json(nlohmann::json& j, const PairPartition& p) { j = p.pairs(); }

void to_json(nlohmann::json& j, const LimitTerm& t) {
  j = nlohmann::json{{"partition", t.partition},   {"crossing", t.crossing}, {"free_indices", t.free_indices},
                     {"forms", t.forms},           {"coeffs", t.coeffs}};
}

}  // namespace circrmt
