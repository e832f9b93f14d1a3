#include <catch2/catch_amalgamated.hpp>

#include "circleflow/circleflow.hpp"
#include "oracles.hpp"

using namespace circleflow;
using RPoly = TrigPoly<Rational>;
using DPoly = TrigPoly<double>;
using RSym = FourierSymbol<Rational>;
using DSym = FourierSymbol<double>;

TEST_CASE("multiplier symbol values") {
    RSym lam0 = RSym::lambda_mu(Rational(0));
    CHECK(lam0.beta(0) == 1);
    CHECK(lam0.beta(5) == 1);
    CHECK(lam0.beta(-7) == 1);

    RSym lam1 = RSym::lambda_mu(Rational(1));
    CHECK(lam1.beta(3) == 3);
    RSym lam2 = RSym::lambda_mu(Rational(2));
    CHECK(lam2.beta(-2) == 4);
    CHECK(lam2.beta(0) == 1);

    DSym lam_half = DSym::lambda_mu(0.5);
    CHECK(lam_half.beta(4) == Catch::Approx(2.0));
}

TEST_CASE("applying a multiplier") {
    RSym lam2 = RSym::lambda_mu(Rational(2));
    CHECK(lam2.apply(RPoly::basis(1)) == RPoly::basis(1));
    CHECK(lam2.apply(RPoly::constant(Rational(1))) == RPoly::constant(Rational(1)));

    RSym lam1 = RSym::lambda_mu(Rational(1));
    RPoly p = RPoly::basis(2) + RPoly::basis(-2);
    CHECK(lam1.apply(p) == Rational(2) * p);
}

TEST_CASE("inverse multiplier") {
    RSym lam2 = RSym::lambda_mu(Rational(2));
    CHECK(lam2.apply_inverse(RPoly::basis(2)) == (Rational(1) / 4) * RPoly::basis(2));

    std::mt19937_64 rng(201);
    for (int i = 0; i < 10; ++i) {
        RPoly p = detail::random_rational_poly(rng, 8, false);
        CHECK(lam2.apply_inverse(lam2.apply(p)) == p);
    }
    RSym lam0 = RSym::lambda_mu(Rational(0));
    RPoly p = detail::random_rational_poly(rng, 8, false);
    CHECK(lam0.apply_inverse(p) == p);
}

TEST_CASE("zero-mean domain is enforced") {
    RSym lam = RSym::fractional_laplacian(Rational(1));
    CHECK_THROWS_AS(lam.apply(RPoly::constant(Rational(1))), DomainViolation);
    CHECK_THROWS_AS(lam.beta(0), DomainViolation);
    CHECK_NOTHROW(lam.apply(cosine<Rational>()));
}

TEST_CASE("multiplier symmetry for the pairing") {
    std::mt19937_64 rng(202);
    RSym lam3 = RSym::lambda_mu(Rational(3));
    for (int i = 0; i < 20; ++i) {
        RPoly p = detail::random_rational_poly(rng, 10, false);
        RPoly q = detail::random_rational_poly(rng, 10, false);
        CHECK(l2_inner(lam3.apply(p), q) == l2_inner(p, lam3.apply(q)));
    }
}

TEST_CASE("connection bilinear form on single modes") {
    // identity inertia operator, u = v = e_1: all four bracket terms land
    // on mode 2 with weights 2i + 2i + i + i, halved to 3i.
    RSym id = RSym::lambda_mu(Rational(0));
    RPoly e1 = RPoly::basis(1);
    RPoly b = christoffel(id, e1, e1);
    CHECK(b.degree() == 2);
    CHECK(b.coeff(2) == Cplx<Rational>(Rational(0), Rational(3)));
    CHECK(b.coeff(1).is_zero());
    CHECK(b.coeff(0).is_zero());

    // constants are flat directions
    RSym lam2 = RSym::lambda_mu(Rational(2));
    CHECK(christoffel(lam2, RPoly::constant(Rational(1)), RPoly::constant(Rational(1))).is_zero());
}

TEST_CASE("connection form against the mode-map oracle") {
    DSym lam2 = DSym::lambda_mu(2.0);
    DPoly c = cosine<double>();
    DPoly direct = christoffel(lam2, c, c);
    DPoly viamodes = oracle::christoffel_by_modes(lam2, c, c);
    CHECK(oracle::max_coeff_distance(direct, viamodes) <= 1e-14);
    // frozen value: B = (3/16) i (e_2 - e_{-2}) = -(3/8) sin 2x
    CHECK(direct.coeff(2).to_std().imag() == Catch::Approx(3.0 / 16.0));
    CHECK(direct.coeff(2).to_std().real() == Catch::Approx(0.0).margin(1e-15));

    std::mt19937_64 rng(203);
    for (int i = 0; i < 10; ++i) {
        DPoly u = detail::random_double_poly(rng, 8, false);
        DPoly v = detail::random_double_poly(rng, 8, false);
        DPoly lhs = christoffel(lam2, u, v);
        DPoly rhs = oracle::christoffel_by_modes(lam2, u, v);
        CHECK(oracle::max_coeff_distance(lhs, rhs) <= 1e-12);
    }
}

TEST_CASE("connection form is symmetric and bilinear") {
    std::mt19937_64 rng(204);
    RSym lam1 = RSym::lambda_mu(Rational(1));
    for (int i = 0; i < 15; ++i) {
        RPoly u = detail::random_rational_poly(rng, 6, false);
        RPoly v = detail::random_rational_poly(rng, 6, false);
        RPoly w = detail::random_rational_poly(rng, 6, false);
        CHECK(christoffel(lam1, u, v) == christoffel(lam1, v, u));
        CHECK(christoffel(lam1, u + w, v) ==
              christoffel(lam1, u, v) + christoffel(lam1, w, v));
    }
}

TEST_CASE("connection form is mode local") {
    RSym lam2 = RSym::lambda_mu(Rational(2));
    for (long j = -3; j <= 3; ++j) {
        for (long k = -3; k <= 3; ++k) {
            RPoly b = christoffel(lam2, RPoly::basis(j), RPoly::basis(k));
            for (long m = -b.degree(); m <= b.degree(); ++m)
                if (m != j + k) CHECK(b.coeff(m).is_zero());
        }
    }
}

TEST_CASE("family right-hand side on single modes") {
    RPoly e1 = RPoly::basis(1);
    // a = 0: m = u, so u_t = -(1+b) u u_x
    RPoly r = family_rhs(EquationParams<Rational>{Rational(0), Rational(2)}, e1);
    CHECK(r == scale(Cplx<Rational>(Rational(0), Rational(-3)), RPoly::basis(2)));

    for (int b = -2; b <= 3; ++b) {
        RPoly rb = family_rhs(EquationParams<Rational>{Rational(0), Rational(b)}, e1);
        CHECK(rb == scale(Cplx<Rational>(Rational(0), Rational(-(1 + b))), RPoly::basis(2)));
    }

    // constants are equilibria
    RPoly c = RPoly::constant(Rational(4));
    CHECK(family_rhs(EquationParams<Rational>{Rational(2), Rational(3)}, c).is_zero());
}

TEST_CASE("b = 2 turns the family into the geodesic equation") {
    std::mt19937_64 rng(205);
    for (long a = 0; a <= 3; ++a) {
        RSym lam = RSym::lambda_mu(Rational(a));
        for (int i = 0; i < 50; ++i) {
            RPoly u = detail::random_rational_poly(rng, 16, true);
            EquationParams<Rational> params{Rational(a), Rational(2)};
            CHECK((family_rhs(params, u) + christoffel(lam, u, u)).is_zero());
        }
    }
    // float mode, fractional exponents
    std::mt19937_64 rng2(206);
    for (double a : {0.5, 1.5}) {
        DSym lam = DSym::lambda_mu(a);
        for (int i = 0; i < 20; ++i) {
            DPoly u = detail::random_double_poly(rng2, 16, true);
            DPoly resid = family_rhs(EquationParams<double>{a, 2.0}, u) + christoffel(lam, u, u);
            CHECK(resid.linf_coeff() / std::max(1.0, u.linf_coeff()) <= 1e-12);
        }
    }
}

TEST_CASE("compatibility residual vanishes exactly for the consistent pair") {
    std::mt19937_64 rng(207);
    for (long a = 0; a <= 3; ++a) {
        EquationParams<Rational> params{Rational(a), Rational(2)};
        for (int i = 0; i < 10; ++i) {
            RPoly u = detail::random_rational_poly(rng, 12, false);
            CHECK(funda_residual(RSym::lambda_mu(Rational(a)), params, u).is_zero());
            RPoly v = detail::random_rational_poly(rng, 12, true);
            CHECK(funda_residual(RSym::fractional_laplacian(Rational(a)), params, v).is_zero());
        }
    }
}

TEST_CASE("compatibility residual flags an inconsistent pair") {
    // A = Lambda_mu^1 against b = 1 fails already on e_1 + e_{-1}
    RPoly u = RPoly::basis(1) + RPoly::basis(-1);
    EquationParams<Rational> params{Rational(1), Rational(1)};
    RPoly resid = funda_residual(RSym::lambda_mu(Rational(1)), params, u);
    CHECK_FALSE(resid.is_zero());
    // magnitude confirmed through the mode-map oracle route:
    // residual = B-form LHS - RHS where both sides act on u = 2cos
    DPoly ud = cosine<double>() + cosine<double>();  // 2 cos = e_1 + e_{-1}
    DSym lam1 = DSym::lambda_mu(1.0);
    DPoly lhs = lam1.apply_inverse(
        2.0 * multiply(lam1.apply(ud), derivative(ud)) +
        multiply(ud, derivative(lam1.apply(ud))));
    DPoly m = lam1.apply(ud);
    DPoly rhs = lam1.apply_inverse(1.0 * multiply(m, derivative(ud)) +
                                   multiply(ud, derivative(m)));
    DPoly expect = lhs - rhs;
    for (long k = -2; k <= 2; ++k)
        CHECK(std::abs(resid.coeff(k).to_std() - expect.coeff(k).to_std()) <= 1e-14);

    // constants satisfy the identity for any normalized full-group symbol
    RPoly c = RPoly::constant(Rational(3));
    CHECK(funda_residual(RSym::lambda_mu(Rational(2)), EquationParams<Rational>{Rational(2), Rational(1)}, c)
              .is_zero());
}

TEST_CASE("table-backed symbols work through the residual checker") {
    // beta_k = k on |k| <= 40, the first-order multiplier by another route
    std::map<long, Rational> vals;
    for (long k = 1; k <= 40; ++k) vals[k] = Rational(k);
    RSym table = RSym::from_values(Domain::ZeroMean, vals);
    std::mt19937_64 rng(208);
    RPoly u = detail::random_rational_poly(rng, 10, true);
    EquationParams<Rational> params{Rational(1), Rational(2)};
    CHECK(funda_residual(table, params, u).is_zero());

    CHECK_THROWS_AS(RSym::from_values(Domain::ZeroMean, {{1, Rational(0)}}),
                    std::invalid_argument);
    CHECK_THROWS_AS(RSym::from_values(Domain::ZeroMean, {{1, Rational(2)}, {-1, Rational(3)}}),
                    std::invalid_argument);
}

TEST_CASE("truncated geodesic right-hand side is energy-orthogonal, exactly") {
    // <Au, truncate(B(u,u), N)> = 0 for deg u <= N: the cancellation that
    // makes the b = 2 energy drift pure integrator error. Checked in exact
    // arithmetic so there is no tolerance to hide behind.
    std::mt19937_64 rng(209);
    for (long a = 0; a <= 3; ++a) {
        RSym lam = RSym::lambda_mu(Rational(a));
        for (int i = 0; i < 15; ++i) {
            RPoly u = detail::random_rational_poly(rng, 12, true);
            long n = u.degree();
            RPoly rhs = truncate(-christoffel(lam, u, u), n);
            CHECK(l2_inner(lam.apply(u), rhs).is_zero());
        }
    }
}

TEST_CASE("the recursion-forced candidate symbol fails the identity when b != 2") {
    // On the zero-mean side the coefficient constraints force the symbol
    // values beta_k one by one; building that unique candidate as a table
    // and feeding it back into the residual shows it still fails (the
    // mode-doubling constraint clashes at beta_4), so no diagonal operator
    // can work at these parameters.
    for (auto [a, b] : {std::pair<long, long>{1, 1}, {2, 3}, {0, 3}}) {
        std::vector<Rational> beta = beta_sequence(Rational(a), Rational(b), 16);
        std::map<long, Rational> vals;
        for (long k = 1; k <= 16; ++k) vals[k] = beta[static_cast<std::size_t>(k)];
        RSym candidate = RSym::from_values(Domain::ZeroMean, vals);
        EquationParams<Rational> params{Rational(a), Rational(b)};
        RPoly u = RPoly::basis(2) + RPoly::basis(-2);
        CHECK_FALSE(funda_residual(candidate, params, u).is_zero());
        // while the same probe passes for the consistent pair
        EquationParams<Rational> good{Rational(a), Rational(2)};
        RSym lam = RSym::fractional_laplacian(Rational(a));
        CHECK(funda_residual(lam, good, u).is_zero());
    }
}

TEST_CASE("symbol serialization shape") {
    json j = to_json(DSym::lambda_mu(2.0), 3);
    CHECK(j["domain"] == "full");
    CHECK(j["k"].size() == 7);
    CHECK(j["beta"][0] == 9.0);  // k = -3
    json z = to_json(DSym::fractional_laplacian(1.0), 2);
    CHECK(z["domain"] == "zero-mean");
    CHECK(z["k"].size() == 4);
}
