#include "alignmatch/random.hpp"

#include <numeric>

namespace alignmatch {

double Rng::uniform01() {
  return static_cast<double>(next() >> 11) * 0x1.0p-53;
}

std::uint64_t Rng::below(std::uint64_t n) {
  if (n == 0) throw Error(ErrorCode::InvalidArgument, "Rng::below(0)");
  const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
  std::uint64_t x;
  do {
    x = next();
  } while (x >= limit);
  return x % n;
}

Instance random_instance(std::size_t n_students, std::size_t n_schools,
                         std::vector<std::int64_t> capacities,
                         std::uint64_t seed) {
  if (n_students == 0 || n_schools == 0)
    throw Error(ErrorCode::DimensionMismatch,
                "need at least one student and one school");
  if (n_schools > n_students)
    throw Error(ErrorCode::TooManySchools,
                std::to_string(n_schools) + " schools but only " +
                    std::to_string(n_students) + " students");
  Rng rng(seed);
  if (capacities.empty()) {
    std::uint64_t span = (n_students + n_schools - 1) / n_schools + 1;
    for (std::size_t j = 0; j < n_schools; ++j)
      capacities.push_back(static_cast<std::int64_t>(1 + rng.below(span)));
  }
  std::vector<double> utilities(n_students * n_schools);
  std::iota(utilities.begin(), utilities.end(), 1.0);
  rng.shuffle(utilities);
  return Instance::from_row_major(n_students, n_schools, std::move(capacities),
                                  std::move(utilities), Strictness::Strict);
}

}  // namespace alignmatch
