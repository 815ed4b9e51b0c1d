#pragma once

#include <span>

#include "rsl/chaos.hpp"
#include "rsl/functional.hpp"

namespace rsl {

/// Divergence (Skorokhod integral) of the process u = (u_0, ..., u_{m-1}).
/// In the subset basis the coefficient of delta(u) at B is
/// sum_{k in B} g_k(B \ {k}), where g_k are u_k's chaos coefficients;
/// components with k inside their own index set are annihilated by the
/// diagonal restriction. Satisfies E<DF,u> = E[F delta(u)] for every F.
Functional divergence(std::span<const Functional> u);

/// Carre-du-champ variant used by the Gamma_0 bound:
/// (1/2) sum_k (D_k F)(D_k G)(1 + Y_k^2), evaluated pointwise.
Functional gamma0(const Functional& f, const Functional& g);

/// The inner product <DF, -DL^{-1}F> as a functional; its expectation equals
/// Var(F).
Functional malliavin_inner(const Functional& f);

/// All m first gradients of F (index k = table k).
std::vector<Functional> all_gradients(const Functional& f);

}  // namespace rsl
