#pragma once

#include <span>
#include <vector>

#include "rsl/space.hpp"

namespace rsl {

/// A real functional of the m Rademacher coordinates, stored as the dense
/// table of its 2^m values. Immutable after construction.
class Functional {
 public:
  Functional(SpacePtr space, std::vector<double> values);

  static Functional constant(SpacePtr space, double c);
  static Functional zero(SpacePtr space) { return constant(std::move(space), 0.0); }
  /// The normalized coordinate Y_k.
  static Functional basis(SpacePtr space, int k);

  const BiasedSpace& space() const { return *space_; }
  const SpacePtr& space_ptr() const { return space_; }
  int dim() const { return space_->dim(); }
  std::size_t size() const { return values_.size(); }

  double operator()(StateMask x) const { return values_[x]; }
  std::span<const double> values() const { return values_; }

  template <class Fn>
  Functional map(Fn&& fn) const {
    std::vector<double> out(values_.size());
    for (std::size_t x = 0; x < values_.size(); ++x) out[x] = fn(values_[x]);
    return Functional(space_, std::move(out));
  }

  Functional operator+(const Functional& rhs) const;
  Functional operator-(const Functional& rhs) const;
  Functional operator*(const Functional& rhs) const;  // pointwise
  Functional operator*(double c) const;
  Functional operator+(double c) const;

 private:
  SpacePtr space_;
  std::vector<double> values_;
};

/// E[F^r] under the product measure (exact enumeration).
double expectation(const Functional& f, int r = 1);

/// E[|F|^r] for real r > 0.
double abs_moment(const Functional& f, double r);

/// E[F^2] - (E[F])^2, clamped at zero against roundoff.
double variance(const Functional& f);

/// Discrete gradient D_k F = sqrt(p_k q_k) (F_k^+ - F_k^-); constant in bit k.
Functional gradient(const Functional& f, int k);

/// D_l D_k F; identically zero when k == l.
Functional iterated_gradient(const Functional& f, int k, int l);

/// (F - E F) / sqrt(Var F). Throws ZeroVariance when Var F vanishes.
Functional standardize(const Functional& f);

inline Functional operator*(double c, const Functional& f) { return f * c; }

}  // namespace rsl
