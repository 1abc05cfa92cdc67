#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <vector>

#include "alignmatch/instance.hpp"

namespace alignmatch {

/// Seeded MT19937-64 stream with portable conversions. std:: distributions
/// differ between standard libraries, so draws are derived from the raw
/// 64-bit output directly:
///   uniform01()  = (x >> 11) * 2^-53
///   below(n)     = rejection sampling on x against the largest multiple of n
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }
  double uniform01();
  std::uint64_t below(std::uint64_t n);

  template <typename T>
  void shuffle(std::vector<T>& items) {
    for (std::size_t k = items.size(); k > 1; --k) {
      std::size_t pick = static_cast<std::size_t>(below(k));
      std::swap(items[k - 1], items[pick]);
    }
  }

 private:
  std::mt19937_64 engine_;
};

/// Random strict instance: utilities are a random permutation of
/// 1..n_students*n_schools. When `capacities` is empty each school draws a
/// capacity uniformly from 1..ceil(n_students/n_schools)+1.
Instance random_instance(std::size_t n_students, std::size_t n_schools,
                         std::vector<std::int64_t> capacities,
                         std::uint64_t seed);

}  // namespace alignmatch
