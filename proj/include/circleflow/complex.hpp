#pragma once

#include <complex>

#include "circleflow/scalar.hpp"

namespace circleflow {

/// Minimal complex number over a pluggable real scalar. std::complex is
/// only specified for the builtin floating types, so the exact-rational
/// coefficient path needs its own pair type; the double path uses it too
/// so that all spectral code is written once.
template <class S>
struct Cplx {
    S re{};
    S im{};

    Cplx() = default;
    Cplx(S r) : re(std::move(r)) {}
    Cplx(S r, S i) : re(std::move(r)), im(std::move(i)) {}

    bool is_zero() const {
        return scalar_traits<S>::is_zero(re) && scalar_traits<S>::is_zero(im);
    }

    friend Cplx operator+(const Cplx& a, const Cplx& b) { return {a.re + b.re, a.im + b.im}; }
    friend Cplx operator-(const Cplx& a, const Cplx& b) { return {a.re - b.re, a.im - b.im}; }
    friend Cplx operator-(const Cplx& a) { return {-a.re, -a.im}; }
    friend Cplx operator*(const Cplx& a, const Cplx& b) {
        return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
    }
    friend Cplx operator*(const S& s, const Cplx& a) { return {s * a.re, s * a.im}; }
    friend Cplx operator*(const Cplx& a, const S& s) { return s * a; }
    friend bool operator==(const Cplx& a, const Cplx& b) { return a.re == b.re && a.im == b.im; }

    Cplx& operator+=(const Cplx& b) {
        re = re + b.re;
        im = im + b.im;
        return *this;
    }

    friend Cplx conj(const Cplx& a) { return {a.re, -a.im}; }

    /// Multiplication by i*k, the derivative action on mode k.
    Cplx times_ik(long long k) const {
        S ks = scalar_traits<S>::from_int(k);
        return {-(ks * im), ks * re};
    }

    std::complex<double> to_std() const {
        return {scalar_traits<S>::to_double(re), scalar_traits<S>::to_double(im)};
    }

    double abs_approx() const { return std::abs(to_std()); }
};

}  // namespace circleflow
