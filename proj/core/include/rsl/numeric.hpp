#pragma once

#include <cstddef>
#include <span>

namespace rsl {

/// Pairwise sum with a fixed reduction tree; deterministic and O(log n) error.
double pairwise_sum(std::span<const double> xs);

/// Pairwise dot product of equal-length ranges.
double pairwise_dot(std::span<const double> a, std::span<const double> b);

/// Pairwise sum of a(i)*b(i)*c(i).
double pairwise_dot3(std::span<const double> a, std::span<const double> b,
                     std::span<const double> c);

}  // namespace rsl
