#pragma once

#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "circleflow/flow.hpp"
#include "circleflow/metricity.hpp"
#include "circleflow/operators.hpp"

namespace circleflow {

struct CheckResult {
    std::string name;
    bool pass = false;
    std::string detail;
};

namespace detail {

inline TrigPoly<Rational> random_rational_poly(std::mt19937_64& rng, long max_degree,
                                               bool zero_mean) {
    std::uniform_int_distribution<long> deg_dist(1, max_degree);
    std::uniform_int_distribution<int> num(-32, 32);
    long n = deg_dist(rng);
    std::vector<Cplx<Rational>> c(static_cast<std::size_t>(2 * n + 1));
    for (long k = zero_mean ? 1 : 0; k <= n; ++k) {
        Cplx<Rational> v(Rational(num(rng)) / 64, k == 0 ? Rational(0) : Rational(num(rng)) / 64);
        c[static_cast<std::size_t>(n + k)] = v;
        c[static_cast<std::size_t>(n - k)] = conj(v);
    }
    return TrigPoly<Rational>::from_coeffs(n, std::move(c));
}

inline TrigPoly<double> random_double_poly(std::mt19937_64& rng, long max_degree, bool zero_mean) {
    std::uniform_int_distribution<long> deg_dist(1, max_degree);
    std::uniform_real_distribution<double> unif(-1.0, 1.0);
    long n = deg_dist(rng);
    std::vector<Cplx<double>> c(static_cast<std::size_t>(2 * n + 1));
    for (long k = zero_mean ? 1 : 0; k <= n; ++k) {
        Cplx<double> v(unif(rng), k == 0 ? 0.0 : unif(rng));
        c[static_cast<std::size_t>(n + k)] = v;
        c[static_cast<std::size_t>(n - k)] = conj(v);
    }
    return TrigPoly<double>::from_coeffs(n, std::move(c));
}

inline double relative_residual(const TrigPoly<double>& residual, const TrigPoly<double>& scale) {
    return residual.linf_coeff() / std::max(scale.linf_coeff(), 1e-300);
}

}  // namespace detail

/// Compatibility-identity residuals, the obstruction cubic at b = 2, and
/// the solvability of its quadratic factor.
inline std::vector<CheckResult> verify_identities(std::uint64_t seed = 20240901,
                                                  int poly_count = 100) {
    std::vector<CheckResult> out;
    std::mt19937_64 rng(seed);

    for (long a = 0; a <= 3; ++a) {
        bool ok = true;
        std::string detail;
        for (int i = 0; i < poly_count && ok; ++i) {
            EquationParams<Rational> params{Rational(a), Rational(2)};
            TrigPoly<Rational> u = detail::random_rational_poly(rng, 16, false);
            auto lam_mu = FourierSymbol<Rational>::lambda_mu(Rational(a));
            if (!funda_residual(lam_mu, params, u).is_zero()) {
                ok = false;
                detail = "full-group residual nonzero at draw " + std::to_string(i);
            }
            TrigPoly<Rational> v = detail::random_rational_poly(rng, 16, true);
            auto lam = FourierSymbol<Rational>::fractional_laplacian(Rational(a));
            if (ok && !funda_residual(lam, params, v).is_zero()) {
                ok = false;
                detail = "zero-mean residual nonzero at draw " + std::to_string(i);
            }
        }
        out.push_back({"identity-residual-exact-a" + std::to_string(a), ok, detail});
    }

    for (double a : {0.5, 1.5}) {
        double worst = 0.0;
        for (int i = 0; i < poly_count; ++i) {
            EquationParams<double> params{a, 2.0};
            TrigPoly<double> u = detail::random_double_poly(rng, 16, false);
            auto lam_mu = FourierSymbol<double>::lambda_mu(a);
            worst = std::max(worst,
                             detail::relative_residual(funda_residual(lam_mu, params, u), u));
            TrigPoly<double> v = detail::random_double_poly(rng, 16, true);
            auto lam = FourierSymbol<double>::fractional_laplacian(a);
            worst = std::max(worst,
                             detail::relative_residual(funda_residual(lam, params, v), v));
        }
        out.push_back({"identity-residual-float-a" + fmt_double(a), worst <= 1e-12,
                       "max relative residual " + fmt_double(worst)});
    }

    {
        bool ok = true;
        for (long a = -5; a <= 5 && ok; ++a) ok = (p_eval(Rational(a), Rational(2)) == 0);
        for (double a = -5.0; a <= 5.0 && ok; a += 0.01) ok = (p_eval(a, 2.0) == 0.0);
        out.push_back({"obstruction-cubic-root-at-2", ok, ""});
    }

    {
        bool ok = true;
        double worst = 1e300;
        for (long i = 0; i <= 1000; ++i) {
            double a = -5.0 + 0.01 * static_cast<double>(i);
            CubicReport<double> r = q_poly(a);
            double disc = r.a2 * r.a2 - 4.0 * r.a3 * r.a1;
            worst = std::min(worst, disc);
            if (disc < 0.0) ok = false;
        }
        out.push_back({"quadratic-factor-always-solvable", ok,
                       "min discriminant " + fmt_double(worst)});
    }
    return out;
}

/// Symbol recursion checks: the b = 2 induction, the doubling relation,
/// and the exact inconsistency witness at (a, b) = (1, 1).
inline std::vector<CheckResult> verify_recursions() {
    std::vector<CheckResult> out;

    for (long a = 0; a <= 3; ++a) {
        bool ok = true;
        std::vector<Rational> beta = beta_sequence(Rational(a), Rational(2), 64);
        for (long k = 1; k <= 64 && ok; ++k)
            ok = (beta[static_cast<std::size_t>(k)] == rational_ipow(Rational(k), a));
        out.push_back({"induction-beta-k^a-a" + std::to_string(a), ok, ""});

        DoublingReport<Rational> rep = doubling_residuals(Rational(a), Rational(2), 32);
        bool zero = true;
        for (const auto& [k, res] : rep.residuals) zero = zero && (res == 0);
        out.push_back({"doubling-residuals-zero-a" + std::to_string(a), zero, ""});
    }

    {
        DoublingReport<Rational> rep = doubling_residuals(Rational(1), Rational(1), 2);
        bool ok = rep.beta4_recursion == Rational(53) / 6 && rep.beta4_doubling == 9 &&
                  rep.beta4_residual == Rational(-1) / 6;
        Verdict v = classify_fourier_type(RealParam(1.0), RealParam(1.0));
        bool carries = v.kind == VerdictKind::NonMetric;
        bool found = false;
        for (const WitnessFact& f : v.witness)
            if (f.label == "beta4-mismatch" && f.value == "-1/6") found = true;
        out.push_back({"inconsistency-witness-(1,1)", ok && carries && found,
                       "beta4 " + rep.beta4_recursion.str() + " vs " +
                           rep.beta4_doubling.str()});
    }
    return out;
}

/// Energy conservation dichotomy and transport-mean conservation, probed
/// with short runs.
inline std::vector<CheckResult> verify_conservation(std::uint64_t seed = 7) {
    std::vector<CheckResult> out;

    auto drift_for = [](double a, double b, double dt) {
        SimConfig cfg;
        cfg.params = {a, b};
        cfg.resolution = 128;
        cfg.dt = dt;
        cfg.horizon = 0.3;
        cfg.domain = Domain::ZeroMean;
        Trajectory traj = simulate(cfg, initial_cos());
        return conservation_report(traj).energy_rel_drift;
    };

    {
        double drift = drift_for(2.0, 2.0, 1e-3);
        double drift_half = drift_for(2.0, 2.0, 5e-4);
        OrderScaling s = order_scaling(drift, drift_half, 1e-13);
        bool order_ok = s.fourth_order_consistent;
        if (!order_ok && s.below_measurement_floor)
            order_ok = order_scaling(drift_for(2.0, 2.0, 1e-2), drift_for(2.0, 2.0, 5e-3))
                           .fourth_order_consistent;
        out.push_back({"geodesic-energy-conserved-(2,2)", drift <= 1e-8 && order_ok,
                       "drift " + fmt_double(drift) + ", halving ratio " + fmt_double(s.ratio)});
    }
    {
        double drift = drift_for(2.0, 3.0, 1e-3);
        double drift_half = drift_for(2.0, 3.0, 5e-4);
        OrderScaling s = order_scaling(drift, drift_half);
        out.push_back({"non-geodesic-energy-drifts-(2,3)",
                       drift >= 1e-3 && !s.fourth_order_consistent,
                       "drift " + fmt_double(drift) + ", halving ratio " + fmt_double(s.ratio)});
    }
    {
        std::mt19937_64 rng(seed);
        std::uniform_real_distribution<double> ua(0.0, 3.0), ub(-2.0, 3.0);
        double worst = 0.0;
        for (int i = 0; i < 10; ++i) {
            SimConfig cfg;
            cfg.params = {ua(rng), ub(rng)};
            cfg.resolution = 32;
            cfg.dt = 1e-3;
            cfg.horizon = 0.05;
            cfg.domain = Domain::FullGroup;
            Trajectory traj = simulate(cfg, initial_random(seed + i, 8, false, 0.5));
            worst = std::max(worst, conservation_report(traj).mean_m_abs_drift);
        }
        out.push_back({"transport-mean-conserved", worst <= 1e-10,
                       "max |mean_m| drift " + fmt_double(worst)});
    }
    return out;
}

inline std::vector<CheckResult> run_suite(const std::string& name, std::uint64_t seed) {
    if (name == "identities") return verify_identities(seed == 0 ? 20240901 : seed);
    if (name == "recursions") return verify_recursions();
    if (name == "conservation") return verify_conservation(seed == 0 ? 7 : seed);
    throw std::invalid_argument("unknown suite: " + name +
                                " (expected identities, recursions or conservation)");
}

}  // namespace circleflow
