#pragma once

#include <cstdint>
#include <memory>
#include <mutex>
#include <vector>

#include "rsl/errors.hpp"

namespace rsl {

/// One point of {-1,+1}^m encoded as an m-bit mask; bit k set means X_k = +1.
using StateMask = std::uint32_t;

/// Hard representation cap: dense tables of 2^m values stay addressable and
/// affordable up to here. RSL_CAP may lower it per process, never raise it.
inline constexpr int kMaxCoordinates = 26;

/// Effective cap for this process (min of kMaxCoordinates and RSL_CAP).
int coordinate_cap();

/// The product measure on {-1,+1}^m with P(X_k = +1) = p_k, 0 < p_k < 1.
///
/// Also carries the per-coordinate data of the normalized basis
/// Y_k = (X_k - p_k + q_k) / (2 sqrt(p_k q_k)), whose realized values are
/// sqrt(q_k/p_k) at X_k = +1 and -sqrt(p_k/q_k) at X_k = -1.
class BiasedSpace {
 public:
  explicit BiasedSpace(std::vector<double> probs);

  int dim() const { return m_; }
  std::size_t state_count() const { return std::size_t{1} << m_; }

  double p(int k) const { return p_[static_cast<std::size_t>(k)]; }
  double q(int k) const { return 1.0 - p_[static_cast<std::size_t>(k)]; }
  double pq(int k) const { return pq_[static_cast<std::size_t>(k)]; }
  double sqrt_pq(int k) const { return sqrt_pq_[static_cast<std::size_t>(k)]; }
  /// Realized Y_k at X_k = +1, i.e. sqrt(q_k/p_k).
  double y_plus(int k) const { return y_plus_[static_cast<std::size_t>(k)]; }
  /// Realized Y_k at X_k = -1, i.e. -sqrt(p_k/q_k).
  double y_minus(int k) const { return y_minus_[static_cast<std::size_t>(k)]; }
  double y_value(int k, StateMask x) const {
    return (x >> k) & 1u ? y_plus(k) : y_minus(k);
  }

  /// pi(x), computed from the coordinate probabilities.
  double weight(StateMask x) const;

  /// Dense table of all 2^m state weights (built once on first use).
  const std::vector<double>& weights() const;

  bool same_as(const BiasedSpace& other) const;

  void check_index(int k) const;

 private:
  int m_;
  std::vector<double> p_;
  std::vector<double> pq_;
  std::vector<double> sqrt_pq_;
  std::vector<double> y_plus_;
  std::vector<double> y_minus_;
  mutable std::once_flag weights_once_;
  mutable std::vector<double> weights_;
};

using SpacePtr = std::shared_ptr<const BiasedSpace>;

/// Builds a space from coordinate success probabilities.
/// Throws CapExceeded when m exceeds the cap, BadProbability outside (0,1).
SpacePtr make_space(std::vector<double> probs);

/// Symmetric space: m fair coordinates.
SpacePtr make_symmetric_space(int m);

void require_same_space(const SpacePtr& a, const SpacePtr& b);

}  // namespace rsl
