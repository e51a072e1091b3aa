#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <string>
#include <string_view>
#include <vector>

namespace circrmt {

/// Law of the i.i.d. real matrix entries. Every variant has mean 0 and variance 1.
enum class EntryDistribution { StandardGaussian, Rademacher, UniformScaled };

std::string to_string(EntryDistribution dist);
EntryDistribution parse_distribution(std::string_view name);

struct InputSequence {
  std::vector<double> values;
  std::uint64_t seed = 0;
  EntryDistribution distribution = EntryDistribution::StandardGaussian;

  std::size_t size() const { return values.size(); }
};

// splitmix64 finalizer
constexpr std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Seed of the stream identified by (seed, tag, index). Streams for distinct
/// keys are statistically independent and do not depend on evaluation order.
constexpr std::uint64_t derive_stream(std::uint64_t seed, std::uint64_t tag,
                                      std::uint64_t index) {
  return mix64(mix64(mix64(seed) ^ tag) + index);
}

using Engine = std::mt19937_64;

inline Engine make_engine(std::uint64_t stream_seed) {
  std::seed_seq seq{static_cast<std::uint32_t>(stream_seed),
                    static_cast<std::uint32_t>(stream_seed >> 32)};
  return Engine(seq);
}

/// Fills `out` with i.i.d. draws from `dist`.
void fill_entries(EntryDistribution dist, Engine& engine, std::vector<double>& out);

/// Deterministic in (dist, len, seed). Throws std::invalid_argument for len == 0.
InputSequence sample_input(EntryDistribution dist, std::size_t len, std::uint64_t seed);

}  // namespace circrmt
