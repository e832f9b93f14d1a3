#pragma once

#include "circleflow/fourier_symbol.hpp"

namespace circleflow {

/// The two parameters selecting a member of the transport family
/// m_t + u m_x + b u_x m = 0 with m = Lambda_mu^a u.
template <class S>
struct EquationParams {
    S a{};
    S b{};
};

/**
 * Christoffel operator of the right-invariant connection induced by A:
 *
 *   B(u, v) = 1/2 A^{-1} [ 2 Au v' + 2 Av u' + u (Av)' + v (Au)' ].
 *
 * Evaluated by exact spectral convolution. Symmetric and bilinear in
 * (u, v) by construction; a product of single modes lands on the sum of
 * the mode indices, so B(e_j, e_k) is supported on mode j + k only.
 */
template <class S>
TrigPoly<S> christoffel(const FourierSymbol<S>& A, const TrigPoly<S>& u, const TrigPoly<S>& v) {
    A.require_domain(u, "christoffel");
    A.require_domain(v, "christoffel");
    TrigPoly<S> au = A.apply(u);
    TrigPoly<S> av = A.apply(v);
    S two = scalar_traits<S>::from_int(2);
    TrigPoly<S> bracket = two * (multiply(au, derivative(v)) + multiply(av, derivative(u))) +
                          multiply(u, derivative(av)) + multiply(v, derivative(au));
    // The bracket has zero mean for any even symbol (the cross terms
    // cancel pairwise), so restricting it to the zero-mean subspace
    // discards only floating-point residue in the k = 0 slot.
    if (A.domain() == Domain::ZeroMean) bracket = drop_mean(bracket);
    S half = scalar_traits<S>::from_int(1) / two;
    return half * A.apply_inverse(bracket);
}

/// du/dt of the family written in velocity form:
///
///   u_t = -(Lambda_mu^a)^{-1} [ b Lambda_mu^a u u' + u (Lambda_mu^a u)' ].
///
/// For b = 2 this equals -christoffel(Lambda_mu^a, u, u) exactly. The
/// mean projection (beta_0 = 1) makes the same expression valid on the
/// full space and on zero-mean data.
template <class S>
TrigPoly<S> family_rhs(const EquationParams<S>& params, const TrigPoly<S>& u) {
    FourierSymbol<S> lam = FourierSymbol<S>::lambda_mu(params.a);
    TrigPoly<S> m = lam.apply(u);
    TrigPoly<S> bracket = params.b * multiply(m, derivative(u)) + multiply(u, derivative(m));
    return -lam.apply_inverse(bracket);
}

/**
 * Residual of the compatibility identity that a candidate inertia
 * operator A must satisfy for the (a, b) member to be its geodesic
 * equation.
 *
 * Full-group form (A invertible on everything):
 *   A^{-1}[2 Au u' + u (Au)'] - (Lambda_mu^a)^{-1}[b Lambda_mu^a u u' + u (Lambda_mu^a u)'].
 *
 * Zero-mean form (premultiplied, no inverses needed):
 *   Lambda^a [2 Au u' + u (Au)'] - A [b Lambda^a u u' + u (Lambda^a u)'].
 *
 * Zero iff the identity holds for this u.
 */
template <class S>
TrigPoly<S> funda_residual(const FourierSymbol<S>& A, const EquationParams<S>& params,
                           const TrigPoly<S>& u) {
    A.require_domain(u, "funda_residual");
    S two = scalar_traits<S>::from_int(2);
    TrigPoly<S> au = A.apply(u);
    TrigPoly<S> lhs_bracket = two * multiply(au, derivative(u)) + multiply(u, derivative(au));

    if (A.domain() == Domain::FullGroup) {
        FourierSymbol<S> lam = FourierSymbol<S>::lambda_mu(params.a);
        TrigPoly<S> m = lam.apply(u);
        TrigPoly<S> rhs_bracket =
            params.b * multiply(m, derivative(u)) + multiply(u, derivative(m));
        return A.apply_inverse(lhs_bracket) - lam.apply_inverse(rhs_bracket);
    }

    FourierSymbol<S> lam = FourierSymbol<S>::fractional_laplacian(params.a);
    TrigPoly<S> m = lam.apply(u);
    TrigPoly<S> rhs_bracket = params.b * multiply(m, derivative(u)) + multiply(u, derivative(m));
    // Both brackets are zero-mean for even symbols; see christoffel.
    return lam.apply(drop_mean(lhs_bracket)) - A.apply(drop_mean(rhs_bracket));
}

}  // namespace circleflow
