#include "rsl/space.hpp"

#include <cmath>
#include <cstdlib>
#include <string>

namespace rsl {

int coordinate_cap() {
  int cap = kMaxCoordinates;
  if (const char* env = std::getenv("RSL_CAP")) {
    const int v = std::atoi(env);
    if (v >= 1 && v < cap) cap = v;
  }
  return cap;
}

BiasedSpace::BiasedSpace(std::vector<double> probs) : m_(static_cast<int>(probs.size())) {
  if (probs.empty()) throw BadProbability("space needs at least one coordinate");
  if (m_ > coordinate_cap()) {
    throw CapExceeded("coordinate count " + std::to_string(m_) + " exceeds cap " +
                      std::to_string(coordinate_cap()));
  }
  for (double pk : probs) {
    if (!(pk > 0.0) || !(pk < 1.0) || !std::isfinite(pk)) {
      throw BadProbability("coordinate probability must lie strictly in (0,1), got " +
                           std::to_string(pk));
    }
  }
  p_ = std::move(probs);
  pq_.resize(p_.size());
  sqrt_pq_.resize(p_.size());
  y_plus_.resize(p_.size());
  y_minus_.resize(p_.size());
  for (std::size_t k = 0; k < p_.size(); ++k) {
    const double pk = p_[k], qk = 1.0 - p_[k];
    pq_[k] = pk * qk;
    sqrt_pq_[k] = std::sqrt(pk * qk);
    y_plus_[k] = std::sqrt(qk / pk);
    y_minus_[k] = -std::sqrt(pk / qk);
  }
}

double BiasedSpace::weight(StateMask x) const {
  double w = 1.0;
  for (int k = 0; k < m_; ++k) {
    w *= (x >> k) & 1u ? p_[static_cast<std::size_t>(k)] : 1.0 - p_[static_cast<std::size_t>(k)];
  }
  return w;
}

const std::vector<double>& BiasedSpace::weights() const {
  std::call_once(weights_once_, [this] {
    weights_.assign(state_count(), 1.0);
    // Doubling construction: extend one coordinate at a time.
    std::size_t filled = 1;
    for (int k = 0; k < m_; ++k) {
      const double pk = p_[static_cast<std::size_t>(k)], qk = 1.0 - pk;
      for (std::size_t x = 0; x < filled; ++x) {
        weights_[filled + x] = weights_[x] * pk;
        weights_[x] *= qk;
      }
      filled <<= 1;
    }
  });
  return weights_;
}

bool BiasedSpace::same_as(const BiasedSpace& other) const {
  return m_ == other.m_ && p_ == other.p_;
}

void BiasedSpace::check_index(int k) const {
  if (k < 0 || k >= m_) {
    throw IndexOutOfRange("coordinate index " + std::to_string(k) + " outside [0," +
                          std::to_string(m_) + ")");
  }
}

SpacePtr make_space(std::vector<double> probs) {
  return std::make_shared<const BiasedSpace>(std::move(probs));
}

SpacePtr make_symmetric_space(int m) {
  return make_space(std::vector<double>(static_cast<std::size_t>(m), 0.5));
}

void require_same_space(const SpacePtr& a, const SpacePtr& b) {
  if (a.get() == b.get()) return;
  if (!a || !b || !a->same_as(*b)) throw SpaceMismatch("functionals live on different spaces");
}

}  // namespace rsl
