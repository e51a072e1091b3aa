#include "circrmt/rng.hpp"

#include <cmath>
#include <stdexcept>

namespace circrmt {

std::string to_string(EntryDistribution dist) {
  switch (dist) {
    case EntryDistribution::StandardGaussian: return "gaussian";
    case EntryDistribution::Rademacher: return "rademacher";
    case EntryDistribution::UniformScaled: return "uniform";
  }
  return "unknown";
}

EntryDistribution parse_distribution(std::string_view name) {
  if (name == "gaussian" || name == "normal") return EntryDistribution::StandardGaussian;
  if (name == "rademacher" || name == "sign") return EntryDistribution::Rademacher;
  if (name == "uniform") return EntryDistribution::UniformScaled;
  throw std::invalid_argument("unknown entry distribution '" + std::string(name) + "'");
}

void fill_entries(EntryDistribution dist, Engine& engine, std::vector<double>& out) {
  switch (dist) {
    case EntryDistribution::StandardGaussian: {
      std::normal_distribution<double> normal(0.0, 1.0);
      for (auto& v : out) v = normal(engine);
      break;
    }
    case EntryDistribution::Rademacher: {
      for (auto& v : out) v = (engine() >> 63) ? 1.0 : -1.0;
      break;
    }
    case EntryDistribution::UniformScaled: {
      const double a = std::sqrt(3.0);
      std::uniform_real_distribution<double> uniform(-a, a);
      for (auto& v : out) v = uniform(engine);
      break;
    }
  }
}

InputSequence sample_input(EntryDistribution dist, std::size_t len, std::uint64_t seed) {
  if (len == 0) throw std::invalid_argument("sample_input: length must be positive");
  InputSequence seq;
  seq.seed = seed;
  seq.distribution = dist;
  seq.values.resize(len);
  auto engine = make_engine(derive_stream(seed, 0x5eedULL, 0));
  fill_entries(dist, engine, seq.values);
  return seq;
}

}  // namespace circrmt
