#include "rsl/numeric.hpp"

namespace rsl {

namespace {

constexpr std::size_t kLeaf = 128;

template <class Leaf>
double pairwise_impl(std::size_t begin, std::size_t end, const Leaf& leaf) {
  const std::size_t n = end - begin;
  if (n <= kLeaf) return leaf(begin, end);
  const std::size_t mid = begin + n / 2;
  return pairwise_impl(begin, mid, leaf) + pairwise_impl(mid, end, leaf);
}

}  // namespace

double pairwise_sum(std::span<const double> xs) {
  return pairwise_impl(0, xs.size(), [&](std::size_t b, std::size_t e) {
    double s = 0.0;
    for (std::size_t i = b; i < e; ++i) s += xs[i];
    return s;
  });
}

double pairwise_dot(std::span<const double> a, std::span<const double> b) {
  return pairwise_impl(0, a.size(), [&](std::size_t lo, std::size_t hi) {
    double s = 0.0;
    for (std::size_t i = lo; i < hi; ++i) s += a[i] * b[i];
    return s;
  });
}

double pairwise_dot3(std::span<const double> a, std::span<const double> b,
                     std::span<const double> c) {
  return pairwise_impl(0, a.size(), [&](std::size_t lo, std::size_t hi) {
    double s = 0.0;
    for (std::size_t i = lo; i < hi; ++i) s += a[i] * b[i] * c[i];
    return s;
  });
}

}  // namespace rsl
