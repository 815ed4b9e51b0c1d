#pragma once

#include <map>
#include <span>
#include <utility>
#include <vector>

#include "rsl/functional.hpp"

namespace rsl {

/// Coefficients of F in the orthonormal basis {Y_A = prod_{k in A} Y_k},
/// indexed by the subset mask A. The symmetric kernel of chaos level p is
/// recovered as f_p(i_1,...,i_p) = c_A / p! on the set A = {i_1,...,i_p}.
class ChaosExpansion {
 public:
  ChaosExpansion(SpacePtr space, std::vector<double> coeffs);

  const BiasedSpace& space() const { return *space_; }
  const SpacePtr& space_ptr() const { return space_; }
  int dim() const { return space_->dim(); }

  double coeff(StateMask a) const { return coeffs_[a]; }
  std::span<const double> coeffs() const { return coeffs_; }

  /// Sum of c_A^2 over nonempty A (equals Var F by orthonormality).
  double variance() const;

  /// Sum of c_A^2 over |A| = level.
  double level_mass(int level) const;

  int max_order() const;

 private:
  SpacePtr space_;
  std::vector<double> coeffs_;
};

/// Analysis: c_A = E[F Y_A] for every subset A, via the biased-Walsh
/// butterfly in O(m 2^m).
ChaosExpansion to_chaos(const Functional& f);

/// Synthesis: F(x) = sum_A c_A prod_{k in A} y_k(x).
Functional from_chaos(const ChaosExpansion& c);

/// Ornstein-Uhlenbeck generator: chaos level n is scaled by -n.
Functional apply_L(const Functional& f);

/// Pseudo-inverse of L: level n >= 1 scaled by -1/n, constant level dropped.
Functional apply_L_inv(const Functional& f);

/// -L^{-1} F, the combination every bound uses.
Functional neg_L_inv(const Functional& f);

/// Ornstein-Uhlenbeck semigroup P_t: level n scaled by exp(-n t). t >= 0.
Functional apply_semigroup(const Functional& f, double t);

/// A symmetric diagonal-free kernel of fixed order, stored canonically on
/// index sets: the full tensor takes the stored value on every ordering of a
/// set and vanishes on diagonals. Raw (non-symmetric) entries added through
/// add() are canonically symmetrized.
class Kernel {
 public:
  explicit Kernel(int order);

  int order() const { return order_; }

  /// Accumulates the raw tensor entry f(idx) = value; tuples with repeated
  /// indices are dropped (Delta restriction), others contribute
  /// value / order! to the canonical value of their index set.
  void add(std::span<const int> idx, double value);

  /// Sets the symmetric value on an index set directly.
  void set_symmetric(std::span<const int> sorted_idx, double value);

  double at(StateMask set) const;
  const std::map<StateMask, double>& entries() const { return vals_; }

  int max_index() const;

  /// Full-tensor Frobenius norm squared: order! * sum_A value_A^2.
  double norm_sq() const;

  /// Sum of value^4 over all full-tensor tuples: order! * sum_A value_A^4.
  double pow4_sum() const;

  /// sum over sets containing k of value_A^2 (for order 2 this is the row
  /// sum of squares sum_l g(l,k)^2).
  double row_norm_sq(int k) const;

  Kernel scaled(double c) const;

 private:
  int order_;
  std::map<StateMask, double> vals_;
};

/// Result of a one-index contraction: a tensor with a left block of
/// left_order indices and a right block of right_order indices, symmetric and
/// diagonal-free within each block (but not across blocks).
class Contraction {
 public:
  Contraction(int left_order, int right_order) : left_(left_order), right_(right_order) {}

  int left_order() const { return left_; }
  int right_order() const { return right_; }

  std::map<std::pair<StateMask, StateMask>, double>& vals() { return vals_; }
  const std::map<std::pair<StateMask, StateMask>, double>& vals() const { return vals_; }

  /// Frobenius norm squared over full tuples; with off_diagonal_only the
  /// entries whose blocks share an index are excluded (the 1_Delta
  /// restriction on the contracted kernel).
  double norm_sq(bool off_diagonal_only = false) const;

  /// Value for an order-0 x order-0 contraction (r = s = 1 case).
  double scalar() const;

 private:
  int left_;
  int right_;
  std::map<std::pair<StateMask, StateMask>, double> vals_;
};

/// Star contraction a *_1^1 b over one shared index. Orders r,s >= 1; the
/// result has blocks of order r-1 and s-1.
Contraction contract11(const Kernel& a, const Kernel& b);

/// J_p(f): the discrete multiple integral of the (canonicalized) kernel.
/// Chaos coefficients are c_A = p! f(A) for |A| = p, zero otherwise.
Functional multiple_integral(const SpacePtr& space, const Kernel& kernel);

/// Inner product p! <f,g> of same-order canonical kernels with the isometry
/// normalization, i.e. E[J_p(f) J_p(g)].
double kernel_isometry_product(const Kernel& f, const Kernel& g);

}  // namespace rsl
