#pragma once

#include <cmath>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "circleflow/operators.hpp"

namespace circleflow {

struct SimConfig {
    EquationParams<double> params{};
    long resolution = 128;   // spectral cutoff N
    double dt = 1e-3;
    double horizon = 0.3;
    Domain domain = Domain::ZeroMean;
    double blowup_slope_threshold = 1e6;  // on sup |u_x|
    double tail_ratio_threshold = 0.1;    // energy fraction in the top third of modes

    void validate() const {
        if (resolution < 8) throw std::invalid_argument("SimConfig: resolution must be >= 8");
        if (!(dt > 0)) throw std::invalid_argument("SimConfig: dt must be positive");
        if (!(horizon > 0)) throw std::invalid_argument("SimConfig: horizon must be positive");
        if (!(blowup_slope_threshold > 0) || !(tail_ratio_threshold > 0))
            throw std::invalid_argument("SimConfig: thresholds must be positive");
    }
};

struct DiagnosticsRecord {
    double t = 0.0;
    double mean_u = 0.0;
    double mean_m = 0.0;
    double energy = 0.0;  // <Au, u>
    double sup_ux = 0.0;
    double tail_ratio = 0.0;
};

struct TerminationInfo {
    enum class Kind { Completed, Blowup, Degenerate };
    Kind kind = Kind::Completed;
    double t = 0.0;
    std::string reason;  // Degenerate only
};

struct Trajectory {
    std::vector<double> times;
    std::vector<TrigPoly<double>> states;
    std::vector<DiagnosticsRecord> diagnostics;
    TerminationInfo termination;
};

/// Inertia operator used for the diagnostics of a run.
inline FourierSymbol<double> inertia_for(const SimConfig& cfg) {
    return cfg.domain == Domain::FullGroup
               ? FourierSymbol<double>::lambda_mu(cfg.params.a)
               : FourierSymbol<double>::fractional_laplacian(cfg.params.a);
}

/// max_j |p(x_j)| over a uniform grid, for real-valued p. Evaluated by a
/// Horner pass in w = e^{ix_j}; the leading w^{-N} twist has modulus one,
/// so it never enters the magnitude.
inline double sup_abs_on_grid(const TrigPoly<double>& p, long points) {
    const long n = p.degree();
    double sup = 0.0;
    for (long j = 0; j < points; ++j) {
        double x = 2.0 * std::numbers::pi * static_cast<double>(j) / static_cast<double>(points);
        std::complex<double> w = std::polar(1.0, x);
        std::complex<double> acc = 0.0;
        for (long k = n; k >= -n; --k) acc = acc * w + p.coeff(k).to_std();
        sup = std::max(sup, std::abs(acc));
    }
    return sup;
}

/// Instantaneous diagnostics of a state: means, metric energy <Au, u>,
/// sup |u_x| sampled on a uniform grid four times finer than the cutoff,
/// and the energy fraction sitting in the top third of retained modes.
inline DiagnosticsRecord diagnostics(const TrigPoly<double>& u, const FourierSymbol<double>& A,
                                     long resolution) {
    DiagnosticsRecord d;
    d.mean_u = mean(u);
    d.mean_m = A.domain() == Domain::FullGroup ? A.beta(0) * mean(u) : 0.0;
    TrigPoly<double> au = A.apply(u);
    d.energy = l2_inner(au, u).re;

    TrigPoly<double> ux = derivative(u);
    long grid = 4 * std::max(resolution, std::max(u.degree(), 1L));
    d.sup_ux = sup_abs_on_grid(ux, grid);

    long cut = (2 * resolution) / 3;
    double total = 0.0, tail = 0.0;
    for (long k = -u.degree(); k <= u.degree(); ++k) {
        if (k == 0 && A.domain() == Domain::ZeroMean) continue;
        double e = A.beta(k) * std::norm(u.coeff(k).to_std());
        total += e;
        if (std::labs(k) > cut) tail += e;
    }
    d.tail_ratio = total > 0.0 ? tail / total : 0.0;
    return d;
}

namespace detail {

inline TrigPoly<double> truncated_rhs(const TrigPoly<double>& u,
                                      const EquationParams<double>& params, long n,
                                      Domain domain) {
    TrigPoly<double> r = truncate(family_rhs(params, u), n);
    // Restriction to the zero-mean subspace: the k = 0 slot of the
    // right-hand side vanishes identically there, so this only clears
    // floating-point residue.
    if (domain == Domain::ZeroMean) r = drop_mean(r);
    return r;
}

}  // namespace detail

/// One classical 4-stage explicit Runge-Kutta step on the spectral
/// coefficients. Each right-hand side is evaluated by exact convolution
/// and then truncated to the cutoff. Throws NonFiniteState if a
/// coefficient stops being finite.
inline TrigPoly<double> step_rk4(const TrigPoly<double>& u, const EquationParams<double>& params,
                                 double dt, long n, Domain domain = Domain::FullGroup) {
    auto f = [&](const TrigPoly<double>& v) { return detail::truncated_rhs(v, params, n, domain); };
    TrigPoly<double> k1 = f(u);
    TrigPoly<double> k2 = f(u + (dt / 2.0) * k1);
    TrigPoly<double> k3 = f(u + (dt / 2.0) * k2);
    TrigPoly<double> k4 = f(u + dt * k3);
    TrigPoly<double> out =
        u + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    if (!out.all_finite()) throw NonFiniteState();
    return out;
}

/// Integrate to the horizon or until a stopping criterion fires. Blowup
/// and spectral under-resolution stop the run and are recorded in the
/// termination field; they are findings, not errors.
inline Trajectory simulate(const SimConfig& cfg, const TrigPoly<double>& u0) {
    cfg.validate();
    if (cfg.domain == Domain::ZeroMean && mean(u0) != 0.0)
        throw DomainViolation("simulate: zero-mean run requires mean-free initial data");

    FourierSymbol<double> A = inertia_for(cfg);
    Trajectory traj;
    TrigPoly<double> u = truncate(u0, cfg.resolution);

    auto record = [&](double t, const TrigPoly<double>& state, const DiagnosticsRecord& d) {
        traj.times.push_back(t);
        traj.states.push_back(state);
        traj.diagnostics.push_back(d);
    };

    auto check = [&](double t, const DiagnosticsRecord& d) -> bool {
        if (d.sup_ux > cfg.blowup_slope_threshold) {
            traj.termination = {TerminationInfo::Kind::Blowup, t, ""};
            return false;
        }
        if (d.tail_ratio > cfg.tail_ratio_threshold) {
            traj.termination = {TerminationInfo::Kind::Degenerate, t, "spectral-underresolved"};
            return false;
        }
        return true;
    };

    DiagnosticsRecord d0 = diagnostics(u, A, cfg.resolution);
    d0.t = 0.0;
    record(0.0, u, d0);
    if (!check(0.0, d0)) return traj;

    long steps = static_cast<long>(std::ceil(cfg.horizon / cfg.dt - 1e-12));
    for (long i = 1; i <= steps; ++i) {
        double t = static_cast<double>(i) * cfg.dt;
        try {
            u = step_rk4(u, cfg.params, cfg.dt, cfg.resolution, cfg.domain);
        } catch (const NonFiniteState&) {
            traj.termination = {TerminationInfo::Kind::Degenerate, t, "non-finite"};
            return traj;
        }
        DiagnosticsRecord d = diagnostics(u, A, cfg.resolution);
        d.t = t;
        record(t, u, d);
        if (!check(t, d)) return traj;
    }
    traj.termination = {TerminationInfo::Kind::Completed, traj.times.back(), ""};
    return traj;
}

/// Drift summary over one trajectory.
struct ConservationReport {
    double energy_abs_drift = 0.0;
    double energy_rel_drift = 0.0;
    double mean_m_abs_drift = 0.0;
    double mean_m_rel_drift = 0.0;
};

inline ConservationReport conservation_report(const Trajectory& traj) {
    ConservationReport rep;
    if (traj.diagnostics.empty()) return rep;
    const double e0 = traj.diagnostics.front().energy;
    const double m0 = traj.diagnostics.front().mean_m;
    for (const DiagnosticsRecord& d : traj.diagnostics) {
        rep.energy_abs_drift = std::max(rep.energy_abs_drift, std::abs(d.energy - e0));
        rep.mean_m_abs_drift = std::max(rep.mean_m_abs_drift, std::abs(d.mean_m - m0));
    }
    rep.energy_rel_drift = rep.energy_abs_drift / std::max(std::abs(e0), 1e-300);
    rep.mean_m_rel_drift = rep.mean_m_abs_drift / std::max(std::abs(m0), 1e-300);
    return rep;
}

/// Does halving the step shrink the drift the way a 4th-order scheme
/// should (16x in exact arithmetic; >= 8x allows slack)? When both
/// measurements sit below `floor` the drift is accumulated roundoff, not
/// truncation error, and no order can be read off at this step size.
struct OrderScaling {
    double ratio = 0.0;
    bool fourth_order_consistent = false;
    bool below_measurement_floor = false;
};

inline OrderScaling order_scaling(double drift_dt, double drift_half_dt, double floor = 0.0) {
    OrderScaling s;
    s.ratio = drift_half_dt > 0.0 ? drift_dt / drift_half_dt
                                  : (drift_dt > 0.0 ? 1e300 : 1.0);
    s.fourth_order_consistent = s.ratio >= 8.0;
    s.below_measurement_floor = drift_dt <= floor && drift_half_dt <= floor;
    return s;
}

// ---------------------------------------------------------------------------
// Initial data library
// ---------------------------------------------------------------------------

inline TrigPoly<double> initial_cos() { return cosine<double>(1); }
inline TrigPoly<double> initial_sin() { return sine<double>(1); }

inline TrigPoly<double> initial_cos_plus_half_cos2() {
    return cosine<double>(1) + 0.5 * cosine<double>(2);
}

/// Seeded band-limited random data with smoothly decaying modes.
inline TrigPoly<double> initial_random(std::uint64_t seed, long max_mode, bool zero_mean,
                                       double amplitude = 1.0) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unif(-1.0, 1.0);
    std::vector<Cplx<double>> c(static_cast<std::size_t>(2 * max_mode + 1));
    for (long k = zero_mean ? 1 : 0; k <= max_mode; ++k) {
        double decay = amplitude / (1.0 + static_cast<double>(k) * static_cast<double>(k));
        Cplx<double> v(unif(rng) * decay, k == 0 ? 0.0 : unif(rng) * decay);
        c[static_cast<std::size_t>(max_mode + k)] = v;
        c[static_cast<std::size_t>(max_mode - k)] = conj(v);
    }
    return TrigPoly<double>::from_coeffs(max_mode, std::move(c));
}

inline TrigPoly<double> initial_data(const std::string& name, std::uint64_t seed, long max_mode) {
    if (name == "cos") return initial_cos();
    if (name == "sin") return initial_sin();
    if (name == "cos+halfcos2") return initial_cos_plus_half_cos2();
    if (name == "random") return initial_random(seed, std::min(max_mode, 16L), true);
    if (name == "random-mean") return initial_random(seed, std::min(max_mode, 16L), false);
    if (name == "zero") return TrigPoly<double>::zero();
    throw std::invalid_argument("unknown initial data name: " + name);
}

}  // namespace circleflow
