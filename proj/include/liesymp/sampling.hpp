#pragma once

#include "liesymp/algebra.hpp"
#include "liesymp/group.hpp"

#include <cstdint>
#include <random>

namespace liesymp {

inline constexpr std::size_t kMaxWordSegments = 6;
inline constexpr double kWordCoefficientBound = 2.0;

/// Seeded sampler with a platform-independent mapping from mt19937_64 output
/// to doubles, so reports are reproducible across standard libraries.
class Sampler {
 public:
  explicit Sampler(std::uint64_t seed) : engine_(seed) {}

  double uniform(double lo, double hi);
  std::size_t index(std::size_t count);

  AlgebraVector algebra_vector(std::size_t n, double bound = 1.0);
  Covector covector(std::size_t n, double bound = 1.0);
  /// 1..kMaxWordSegments unit-duration segments with coefficients in
  /// [-kWordCoefficientBound, kWordCoefficientBound].
  GroupPath word(std::size_t n);

 private:
  std::mt19937_64 engine_;
};

}  // namespace liesymp
