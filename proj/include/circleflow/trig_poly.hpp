#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <utility>
#include <vector>

#include "circleflow/complex.hpp"
#include "circleflow/scalar.hpp"

namespace circleflow {

/**
 * Finite Fourier series sum_{k=-N..N} c_k e^{ikx} on the 2pi-periodic
 * circle. This is the function space every operator in the library is
 * evaluated on.
 *
 * Invariants:
 *  - coefficients outside [-N, N] are implicitly zero and the stored
 *    degree is minimal (leading coefficient nonzero unless the zero
 *    polynomial);
 *  - the real-valuedness flag implies exact conjugate symmetry
 *    c_{-k} = conj(c_k) with c_0 real. Operations that can preserve the
 *    symmetry do so exactly, also in floating point (the negative modes
 *    of a product of real inputs are mirrored, not re-summed).
 *
 * Values are immutable after construction; every operation below is pure.
 */
template <class S>
class TrigPoly {
  public:
    using Coef = Cplx<S>;

    TrigPoly() : degree_(0), c_(1), real_(true) {}

    static TrigPoly zero() { return TrigPoly(); }

    static TrigPoly constant(const S& v) {
        TrigPoly p;
        p.c_[0] = Coef(v);
        return p;
    }

    /// The basis exponential e_k(x) = e^{ikx}.
    static TrigPoly basis(long k) {
        TrigPoly p;
        long n = std::labs(k);
        p.degree_ = n;
        p.c_.assign(2 * n + 1, Coef{});
        p.c_[static_cast<std::size_t>(k + n)] = Coef(scalar_traits<S>::from_int(1));
        p.real_ = (k == 0);
        return p;
    }

    /// Coefficients as a dense array indexed k = -degree..degree.
    /// Trims to minimal degree and detects conjugate symmetry.
    static TrigPoly from_coeffs(long degree, std::vector<Coef> coeffs) {
        TrigPoly p;
        p.degree_ = degree;
        p.c_ = std::move(coeffs);
        p.trim();
        p.real_ = p.detect_real();
        return p;
    }

    long degree() const { return degree_; }
    bool is_real() const { return real_; }

    bool is_zero() const {
        for (const auto& c : c_)
            if (!c.is_zero()) return false;
        return true;
    }

    Coef coeff(long k) const {
        if (k < -degree_ || k > degree_) return Coef{};
        return c_[static_cast<std::size_t>(k + degree_)];
    }

    /// Largest coefficient magnitude, as a double (test/diagnostic norm).
    double linf_coeff() const {
        double m = 0.0;
        for (const auto& c : c_) m = std::max(m, c.abs_approx());
        return m;
    }

    bool all_finite() const {
        for (const auto& c : c_) {
            auto z = c.to_std();
            if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
        }
        return true;
    }

    /// Pointwise value at x (used only for grid diagnostics).
    std::complex<double> eval(double x) const {
        std::complex<double> acc = 0.0;
        for (long k = -degree_; k <= degree_; ++k) {
            acc += coeff(k).to_std() * std::polar(1.0, static_cast<double>(k) * x);
        }
        return acc;
    }

    friend TrigPoly operator+(const TrigPoly& p, const TrigPoly& q) {
        long n = std::max(p.degree_, q.degree_);
        std::vector<Coef> out(static_cast<std::size_t>(2 * n + 1));
        for (long k = -n; k <= n; ++k) out[static_cast<std::size_t>(k + n)] = p.coeff(k) + q.coeff(k);
        TrigPoly r;
        r.degree_ = n;
        r.c_ = std::move(out);
        r.trim();
        r.real_ = p.real_ && q.real_;
        return r;
    }

    friend TrigPoly operator-(const TrigPoly& p, const TrigPoly& q) { return p + (-q); }

    friend TrigPoly operator-(const TrigPoly& p) {
        TrigPoly r = p;
        for (auto& c : r.c_) c = -c;
        return r;
    }

    friend TrigPoly operator*(const S& s, const TrigPoly& p) {
        TrigPoly r = p;
        for (auto& c : r.c_) c = s * c;
        r.trim();
        return r;
    }

    /// Scale by a complex number; the result is flagged real only when it
    /// provably stays real.
    friend TrigPoly scale(const Cplx<S>& z, const TrigPoly& p) {
        TrigPoly r = p;
        for (auto& c : r.c_) c = z * c;
        r.real_ = p.real_ && scalar_traits<S>::is_zero(z.im);
        r.trim();
        return r;
    }

    /// d/dx: c_k -> ik c_k. Exactly conjugate-symmetric for real input.
    friend TrigPoly derivative(const TrigPoly& p) {
        TrigPoly r = p;
        for (long k = -p.degree_; k <= p.degree_; ++k)
            r.c_[static_cast<std::size_t>(k + p.degree_)] = p.coeff(k).times_ik(k);
        r.trim();
        return r;
    }

    /// Exact coefficient convolution; the result degree is deg p + deg q
    /// with no truncation. When both inputs are real-valued the negative
    /// modes are produced by conjugate mirroring so that the symmetry is
    /// exact in floating point as well.
    friend TrigPoly multiply(const TrigPoly& p, const TrigPoly& q) {
        long n = p.degree_ + q.degree_;
        std::vector<Coef> out(static_cast<std::size_t>(2 * n + 1));
        const bool mirror = p.real_ && q.real_;
        for (long k = mirror ? 0 : -n; k <= n; ++k) {
            Coef acc{};
            long lo = std::max(-p.degree_, k - q.degree_);
            long hi = std::min(p.degree_, k + q.degree_);
            for (long i = lo; i <= hi; ++i) acc += p.coeff(i) * q.coeff(k - i);
            out[static_cast<std::size_t>(k + n)] = acc;
        }
        if (mirror) {
            out[static_cast<std::size_t>(n)].im = S(0);
            for (long k = 1; k <= n; ++k)
                out[static_cast<std::size_t>(-k + n)] = conj(out[static_cast<std::size_t>(k + n)]);
        }
        TrigPoly r;
        r.degree_ = n;
        r.c_ = std::move(out);
        r.trim();
        r.real_ = mirror;
        return r;
    }

    /// Normalized mean (1/2pi) int u dx = c_0. Intended for real-valued
    /// input; returns the real part of c_0.
    friend S mean(const TrigPoly& p) { return p.coeff(0).re; }

    /// Normalized Hermitian pairing sum_k p_k conj(q_k), so <e_k, e_k> = 1.
    friend Cplx<S> l2_inner(const TrigPoly& p, const TrigPoly& q) {
        Cplx<S> acc{};
        long n = std::min(p.degree_, q.degree_);
        for (long k = -n; k <= n; ++k) acc += p.coeff(k) * conj(q.coeff(k));
        return acc;
    }

    /// Zero all modes with |k| > n.
    friend TrigPoly truncate(const TrigPoly& p, long n) {
        if (n >= p.degree_) return p;
        long m = std::max(n, 0L);
        std::vector<Coef> out(static_cast<std::size_t>(2 * m + 1));
        for (long k = -m; k <= m; ++k) out[static_cast<std::size_t>(k + m)] = p.coeff(k);
        TrigPoly r;
        r.degree_ = m;
        r.c_ = std::move(out);
        r.trim();
        r.real_ = p.real_;
        return r;
    }

    /// Replace the k = 0 coefficient with exact zero (projection onto the
    /// zero-mean subspace).
    friend TrigPoly drop_mean(const TrigPoly& p) {
        TrigPoly r = p;
        r.c_[static_cast<std::size_t>(r.degree_)] = Coef{};
        r.trim();
        return r;
    }

    friend bool operator==(const TrigPoly& p, const TrigPoly& q) {
        long n = std::max(p.degree_, q.degree_);
        for (long k = -n; k <= n; ++k)
            if (!(p.coeff(k) == q.coeff(k))) return false;
        return true;
    }

  private:
    void trim() {
        while (degree_ > 0 && c_.front().is_zero() && c_.back().is_zero()) {
            c_.erase(c_.begin());
            c_.pop_back();
            --degree_;
        }
    }

    bool detect_real() const {
        for (long k = 0; k <= degree_; ++k)
            if (!(coeff(-k) == conj(coeff(k)))) return false;
        return true;
    }

    long degree_;
    std::vector<Coef> c_;
    bool real_;
};

/// cos(n x) and sin(n x) as exact real trig polynomials (coefficients
/// 1/2 and +-1/(2i); exact in both scalar modes).
template <class S>
TrigPoly<S> cosine(long n = 1) {
    S half = scalar_traits<S>::from_int(1) / scalar_traits<S>::from_int(2);
    std::vector<Cplx<S>> c(static_cast<std::size_t>(2 * n + 1));
    c.front() = Cplx<S>(half);
    c.back() = Cplx<S>(half);
    return TrigPoly<S>::from_coeffs(n, std::move(c));
}

template <class S>
TrigPoly<S> sine(long n = 1) {
    S half = scalar_traits<S>::from_int(1) / scalar_traits<S>::from_int(2);
    std::vector<Cplx<S>> c(static_cast<std::size_t>(2 * n + 1));
    c.front() = Cplx<S>(S(0), half);
    c.back() = Cplx<S>(S(0), -half);
    return TrigPoly<S>::from_coeffs(n, std::move(c));
}

}  // namespace circleflow
