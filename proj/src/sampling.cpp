#include "liesymp/sampling.hpp"

namespace liesymp {

double Sampler::uniform(double lo, double hi) {
  const double unit = static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  return lo + (hi - lo) * unit;
}

std::size_t Sampler::index(std::size_t count) { return count == 0 ? 0 : static_cast<std::size_t>(engine_() % count); }

AlgebraVector Sampler::algebra_vector(std::size_t n, double bound) {
  AlgebraVector v = AlgebraVector::zero(n);
  for (Eigen::Index i = 0; i < v.coeffs.size(); ++i) v.coeffs[i] = uniform(-bound, bound);
  return v;
}

Covector Sampler::covector(std::size_t n, double bound) {
  Covector v = Covector::zero(n);
  for (Eigen::Index i = 0; i < v.coeffs.size(); ++i) v.coeffs[i] = uniform(-bound, bound);
  return v;
}

GroupPath Sampler::word(std::size_t n) {
  GroupPath path;
  const std::size_t segments = 1 + index(kMaxWordSegments);
  for (std::size_t s = 0; s < segments; ++s)
    path.segments.push_back(PathSegment{algebra_vector(n, kWordCoefficientBound), 1.0});
  return path;
}

}  // namespace liesymp
