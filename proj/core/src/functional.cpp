#include "rsl/functional.hpp"

#include <cmath>
#include <string>

#include "rsl/numeric.hpp"

namespace rsl {

Functional::Functional(SpacePtr space, std::vector<double> values)
    : space_(std::move(space)), values_(std::move(values)) {
  if (!space_) throw SpaceMismatch("functional needs a space");
  if (values_.size() != space_->state_count()) {
    throw DimensionMismatch("value table has " + std::to_string(values_.size()) +
                            " entries, expected " + std::to_string(space_->state_count()));
  }
  for (double v : values_) {
    if (!std::isfinite(v)) throw DimensionMismatch("functional value table contains a non-finite entry");
  }
}

Functional Functional::constant(SpacePtr space, double c) {
  const std::size_t n = space->state_count();
  return Functional(std::move(space), std::vector<double>(n, c));
}

Functional Functional::basis(SpacePtr space, int k) {
  space->check_index(k);
  std::vector<double> vals(space->state_count());
  const double yp = space->y_plus(k), ym = space->y_minus(k);
  for (std::size_t x = 0; x < vals.size(); ++x) {
    vals[x] = (x >> k) & 1u ? yp : ym;
  }
  return Functional(std::move(space), std::move(vals));
}

Functional Functional::operator+(const Functional& rhs) const {
  require_same_space(space_, rhs.space_);
  std::vector<double> out(values_.size());
  for (std::size_t x = 0; x < out.size(); ++x) out[x] = values_[x] + rhs.values_[x];
  return Functional(space_, std::move(out));
}

Functional Functional::operator-(const Functional& rhs) const {
  require_same_space(space_, rhs.space_);
  std::vector<double> out(values_.size());
  for (std::size_t x = 0; x < out.size(); ++x) out[x] = values_[x] - rhs.values_[x];
  return Functional(space_, std::move(out));
}

Functional Functional::operator*(const Functional& rhs) const {
  require_same_space(space_, rhs.space_);
  std::vector<double> out(values_.size());
  for (std::size_t x = 0; x < out.size(); ++x) out[x] = values_[x] * rhs.values_[x];
  return Functional(space_, std::move(out));
}

Functional Functional::operator*(double c) const {
  return map([c](double v) { return v * c; });
}

Functional Functional::operator+(double c) const {
  return map([c](double v) { return v + c; });
}

double expectation(const Functional& f, int r) {
  const auto& w = f.space().weights();
  const auto vals = f.values();
  if (r == 1) return pairwise_dot(w, vals);
  std::vector<double> pow(vals.size());
  for (std::size_t x = 0; x < pow.size(); ++x) {
    double v = 1.0;
    for (int i = 0; i < r; ++i) v *= vals[x];
    pow[x] = v;
  }
  return pairwise_dot(w, pow);
}

double abs_moment(const Functional& f, double r) {
  const auto& w = f.space().weights();
  const auto vals = f.values();
  std::vector<double> pow(vals.size());
  for (std::size_t x = 0; x < pow.size(); ++x) pow[x] = std::pow(std::fabs(vals[x]), r);
  return pairwise_dot(w, pow);
}

double variance(const Functional& f) {
  const double mean = expectation(f, 1);
  const auto& w = f.space().weights();
  const auto vals = f.values();
  std::vector<double> sq(vals.size());
  for (std::size_t x = 0; x < sq.size(); ++x) {
    const double d = vals[x] - mean;
    sq[x] = d * d;
  }
  const double v = pairwise_dot(w, sq);
  return v < 0.0 ? 0.0 : v;
}

Functional gradient(const Functional& f, int k) {
  f.space().check_index(k);
  const double s = f.space().sqrt_pq(k);
  const StateMask bit = StateMask{1} << k;
  const auto vals = f.values();
  std::vector<double> out(vals.size());
  for (std::size_t x = 0; x < out.size(); ++x) {
    const std::size_t hi = x | bit, lo = x & ~static_cast<std::size_t>(bit);
    out[x] = s * (vals[hi] - vals[lo]);
  }
  return Functional(f.space_ptr(), std::move(out));
}

Functional iterated_gradient(const Functional& f, int k, int l) {
  f.space().check_index(k);
  f.space().check_index(l);
  if (k == l) return Functional::zero(f.space_ptr());
  return gradient(gradient(f, k), l);
}

Functional standardize(const Functional& f) {
  const double mean = expectation(f, 1);
  const double var = variance(f);
  if (!(var > 0.0)) throw ZeroVariance("cannot standardize a functional with zero variance");
  const double inv_sd = 1.0 / std::sqrt(var);
  return f.map([mean, inv_sd](double v) { return (v - mean) * inv_sd; });
}

}  // namespace rsl
