#include "rsl/malliavin.hpp"

namespace rsl {

Functional divergence(std::span<const Functional> u) {
  if (u.empty()) throw DimensionMismatch("divergence needs at least one component");
  const SpacePtr space = u[0].space_ptr();
  if (static_cast<int>(u.size()) != space->dim()) {
    throw DimensionMismatch("divergence needs one component per coordinate");
  }
  for (const Functional& comp : u) require_same_space(space, comp.space_ptr());

  std::vector<double> out(space->state_count(), 0.0);
  for (int k = 0; k < space->dim(); ++k) {
    const ChaosExpansion ck = to_chaos(u[static_cast<std::size_t>(k)]);
    const StateMask bit = StateMask{1} << k;
    for (std::size_t a = 0; a < out.size(); ++a) {
      if ((a & bit) == 0) out[a | bit] += ck.coeff(static_cast<StateMask>(a));
    }
  }
  return from_chaos(ChaosExpansion(space, std::move(out)));
}

Functional gamma0(const Functional& f, const Functional& g) {
  require_same_space(f.space_ptr(), g.space_ptr());
  const BiasedSpace& sp = f.space();
  std::vector<double> out(sp.state_count(), 0.0);
  for (int k = 0; k < sp.dim(); ++k) {
    const Functional df = gradient(f, k);
    const Functional dg = gradient(g, k);
    const double yp2 = sp.y_plus(k) * sp.y_plus(k);
    const double ym2 = sp.y_minus(k) * sp.y_minus(k);
    for (std::size_t x = 0; x < out.size(); ++x) {
      const double y2 = (x >> k) & 1u ? yp2 : ym2;
      out[x] += 0.5 * df(static_cast<StateMask>(x)) * dg(static_cast<StateMask>(x)) * (1.0 + y2);
    }
  }
  return Functional(f.space_ptr(), std::move(out));
}

Functional malliavin_inner(const Functional& f) {
  const Functional h = neg_L_inv(f);
  const BiasedSpace& sp = f.space();
  std::vector<double> out(sp.state_count(), 0.0);
  for (int k = 0; k < sp.dim(); ++k) {
    const Functional df = gradient(f, k);
    const Functional dh = gradient(h, k);
    for (std::size_t x = 0; x < out.size(); ++x) {
      out[x] += df(static_cast<StateMask>(x)) * dh(static_cast<StateMask>(x));
    }
  }
  return Functional(f.space_ptr(), std::move(out));
}

std::vector<Functional> all_gradients(const Functional& f) {
  std::vector<Functional> out;
  out.reserve(static_cast<std::size_t>(f.dim()));
  for (int k = 0; k < f.dim(); ++k) out.push_back(gradient(f, k));
  return out;
}

}  // namespace rsl
