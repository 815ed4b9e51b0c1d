#include "rsl/chaos.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <string>

namespace rsl {

namespace {

double factorial(int n) {
  double f = 1.0;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

}  // namespace

ChaosExpansion::ChaosExpansion(SpacePtr space, std::vector<double> coeffs)
    : space_(std::move(space)), coeffs_(std::move(coeffs)) {
  if (!space_ || coeffs_.size() != space_->state_count()) {
    throw DimensionMismatch("chaos coefficient table size mismatch");
  }
}

double ChaosExpansion::variance() const {
  double s = 0.0;
  for (std::size_t a = 1; a < coeffs_.size(); ++a) s += coeffs_[a] * coeffs_[a];
  return s;
}

double ChaosExpansion::level_mass(int level) const {
  double s = 0.0;
  for (std::size_t a = 0; a < coeffs_.size(); ++a) {
    if (std::popcount(static_cast<StateMask>(a)) == level) s += coeffs_[a] * coeffs_[a];
  }
  return s;
}

int ChaosExpansion::max_order() const {
  int order = 0;
  for (std::size_t a = 0; a < coeffs_.size(); ++a) {
    if (coeffs_[a] != 0.0) order = std::max(order, std::popcount(static_cast<StateMask>(a)));
  }
  return order;
}

ChaosExpansion to_chaos(const Functional& f) {
  // Per-coordinate butterfly: a pair (value at X_k=-1, value at X_k=+1) maps
  // to (q a + p b, sqrt(pq)(b - a)); after all m passes slot A holds E[F Y_A].
  std::vector<double> buf(f.values().begin(), f.values().end());
  const BiasedSpace& sp = f.space();
  for (int k = 0; k < sp.dim(); ++k) {
    const double pk = sp.p(k), qk = sp.q(k), s = sp.sqrt_pq(k);
    const std::size_t bit = std::size_t{1} << k;
    for (std::size_t base = 0; base < buf.size(); base += 2 * bit) {
      for (std::size_t off = 0; off < bit; ++off) {
        const std::size_t lo = base + off, hi = lo + bit;
        const double a = buf[lo], b = buf[hi];
        buf[lo] = qk * a + pk * b;
        buf[hi] = s * (b - a);
      }
    }
  }
  return ChaosExpansion(f.space_ptr(), std::move(buf));
}

Functional from_chaos(const ChaosExpansion& c) {
  std::vector<double> buf(c.coeffs().begin(), c.coeffs().end());
  const BiasedSpace& sp = c.space();
  for (int k = 0; k < sp.dim(); ++k) {
    const double yp = sp.y_plus(k), ym = sp.y_minus(k);
    const std::size_t bit = std::size_t{1} << k;
    for (std::size_t base = 0; base < buf.size(); base += 2 * bit) {
      for (std::size_t off = 0; off < bit; ++off) {
        const std::size_t lo = base + off, hi = lo + bit;
        const double c0 = buf[lo], c1 = buf[hi];
        buf[lo] = c0 + c1 * ym;
        buf[hi] = c0 + c1 * yp;
      }
    }
  }
  return Functional(c.space_ptr(), std::move(buf));
}

namespace {

Functional scale_levels(const Functional& f, double (*factor)(int, double), double t) {
  ChaosExpansion c = to_chaos(f);
  std::vector<double> out(c.coeffs().begin(), c.coeffs().end());
  for (std::size_t a = 0; a < out.size(); ++a) {
    out[a] *= factor(std::popcount(static_cast<StateMask>(a)), t);
  }
  return from_chaos(ChaosExpansion(f.space_ptr(), std::move(out)));
}

}  // namespace

Functional apply_L(const Functional& f) {
  return scale_levels(f, [](int n, double) { return static_cast<double>(-n); }, 0.0);
}

Functional apply_L_inv(const Functional& f) {
  return scale_levels(f, [](int n, double) { return n == 0 ? 0.0 : -1.0 / n; }, 0.0);
}

Functional neg_L_inv(const Functional& f) {
  return scale_levels(f, [](int n, double) { return n == 0 ? 0.0 : 1.0 / n; }, 0.0);
}

Functional apply_semigroup(const Functional& f, double t) {
  if (t < 0.0) throw NegativeTime("semigroup time must be nonnegative");
  return scale_levels(f, [](int n, double tt) { return std::exp(-n * tt); }, t);
}

Kernel::Kernel(int order) : order_(order) {
  if (order < 0) throw OrderExceedsDimension("kernel order must be nonnegative");
}

void Kernel::add(std::span<const int> idx, double value) {
  if (static_cast<int>(idx.size()) != order_) {
    throw DimensionMismatch("kernel entry arity does not match kernel order");
  }
  StateMask mask = 0;
  for (int i : idx) {
    if (i < 0 || i >= kMaxCoordinates) throw IndexOutOfRange("kernel index out of range");
    const StateMask bit = StateMask{1} << i;
    if (mask & bit) return;  // diagonal entry: annihilated by 1_Delta
    mask |= bit;
  }
  vals_[mask] += value / factorial(order_);
  if (vals_[mask] == 0.0) vals_.erase(mask);
}

void Kernel::set_symmetric(std::span<const int> sorted_idx, double value) {
  if (static_cast<int>(sorted_idx.size()) != order_) {
    throw DimensionMismatch("kernel entry arity does not match kernel order");
  }
  StateMask mask = 0;
  for (int i : sorted_idx) {
    if (i < 0 || i >= kMaxCoordinates) throw IndexOutOfRange("kernel index out of range");
    const StateMask bit = StateMask{1} << i;
    if (mask & bit) throw DimensionMismatch("set_symmetric needs distinct indices");
    mask |= bit;
  }
  if (value == 0.0) {
    vals_.erase(mask);
  } else {
    vals_[mask] = value;
  }
}

double Kernel::at(StateMask set) const {
  const auto it = vals_.find(set);
  return it == vals_.end() ? 0.0 : it->second;
}

int Kernel::max_index() const {
  int hi = -1;
  for (const auto& [mask, v] : vals_) {
    (void)v;
    if (mask != 0) hi = std::max(hi, 31 - std::countl_zero(mask));
  }
  return hi;
}

double Kernel::norm_sq() const {
  const double perms = factorial(order_);
  double s = 0.0;
  for (const auto& [mask, v] : vals_) {
    (void)mask;
    s += v * v;
  }
  return perms * s;
}

double Kernel::pow4_sum() const {
  const double perms = factorial(order_);
  double s = 0.0;
  for (const auto& [mask, v] : vals_) {
    (void)mask;
    s += v * v * v * v;
  }
  return perms * s;
}

double Kernel::row_norm_sq(int k) const {
  const StateMask bit = StateMask{1} << k;
  double s = 0.0;
  for (const auto& [mask, v] : vals_) {
    if (mask & bit) s += v * v;
  }
  return s;
}

Kernel Kernel::scaled(double c) const {
  Kernel out(order_);
  for (const auto& [mask, v] : vals_) out.vals_[mask] = c * v;
  return out;
}

double Contraction::norm_sq(bool off_diagonal_only) const {
  const double mult = factorial(left_) * factorial(right_);
  double s = 0.0;
  for (const auto& [key, v] : vals_) {
    if (off_diagonal_only && (key.first & key.second) != 0) continue;
    s += v * v;
  }
  return mult * s;
}

double Contraction::scalar() const {
  if (left_ != 0 || right_ != 0) {
    throw DimensionMismatch("scalar() requires an order-0 contraction");
  }
  const auto it = vals_.find({0, 0});
  return it == vals_.end() ? 0.0 : it->second;
}

Contraction contract11(const Kernel& a, const Kernel& b) {
  if (a.order() < 1 || b.order() < 1) {
    throw DimensionMismatch("star contraction needs kernels of order >= 1");
  }
  Contraction out(a.order() - 1, b.order() - 1);
  // Group the canonical entries by one chosen index: a(i, X) = value at the
  // set X + {i}. The contraction is then a sum of outer products of slices.
  std::map<int, std::vector<std::pair<StateMask, double>>> a_slices, b_slices;
  for (const auto& [mask, v] : a.entries()) {
    for (StateMask rest = mask; rest != 0;) {
      const int i = std::countr_zero(rest);
      rest &= rest - 1;
      a_slices[i].emplace_back(mask & ~(StateMask{1} << i), v);
    }
  }
  for (const auto& [mask, v] : b.entries()) {
    for (StateMask rest = mask; rest != 0;) {
      const int i = std::countr_zero(rest);
      rest &= rest - 1;
      b_slices[i].emplace_back(mask & ~(StateMask{1} << i), v);
    }
  }
  for (const auto& [i, av] : a_slices) {
    const auto bit = b_slices.find(i);
    if (bit == b_slices.end()) continue;
    for (const auto& [ax, aval] : av) {
      for (const auto& [bx, bval] : bit->second) {
        out.vals()[{ax, bx}] += aval * bval;
      }
    }
  }
  return out;
}

Functional multiple_integral(const SpacePtr& space, const Kernel& kernel) {
  const int p = kernel.order();
  if (p > space->dim()) {
    throw OrderExceedsDimension("chaos order " + std::to_string(p) + " exceeds dimension " +
                                std::to_string(space->dim()));
  }
  if (kernel.max_index() >= space->dim()) {
    throw IndexOutOfRange("kernel refers to a coordinate outside the space");
  }
  const double perms = factorial(p);
  std::vector<double> coeffs(space->state_count(), 0.0);
  for (const auto& [mask, v] : kernel.entries()) coeffs[mask] = perms * v;
  return from_chaos(ChaosExpansion(space, std::move(coeffs)));
}

double kernel_isometry_product(const Kernel& f, const Kernel& g) {
  if (f.order() != g.order()) return 0.0;
  const double perms = factorial(f.order());
  double s = 0.0;
  for (const auto& [mask, v] : f.entries()) s += v * g.at(mask);
  // E[J_p(f) J_p(g)] = p! <f,g> with <f,g> the full-tensor inner product,
  // which is p! times the sum over index sets.
  return perms * perms * s;
}

}  // namespace rsl
