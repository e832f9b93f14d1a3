#pragma once

#include <functional>
#include <map>
#include <memory>
#include <string>
#include <utility>

#include "circleflow/errors.hpp"
#include "circleflow/trig_poly.hpp"

namespace circleflow {

/// Which function space an inertia operator acts on: all smooth functions
/// (the k = 0 mode carries the mean projection) or the zero-mean subspace
/// (no k = 0 mode at all).
enum class Domain { FullGroup, ZeroMean };

inline const char* domain_name(Domain d) {
    return d == Domain::FullGroup ? "full" : "zero-mean";
}

/**
 * A diagonal (Fourier multiplication) inertia operator: a real, even,
 * nowhere-zero symbol k -> beta_k. Real-valued functions are preserved and
 * the operator is symmetric for the L2 pairing because beta is real and
 * even; invertibility is the nowhere-zero requirement.
 */
template <class S>
class FourierSymbol {
  public:
    FourierSymbol(Domain domain, std::function<S(long)> beta, std::string label)
        : domain_(domain), beta_(std::move(beta)), label_(std::move(label)) {}

    /// |k|^a on nonzero modes plus the mean projection (beta_0 = 1); the
    /// identity when a = 0.
    static FourierSymbol lambda_mu(const S& a) {
        return FourierSymbol(
            Domain::FullGroup,
            [a](long k) -> S {
                if (k == 0) return scalar_traits<S>::from_int(1);
                return scalar_traits<S>::pow_base(std::labs(k), a);
            },
            "lambda_mu^a");
    }

    /// |k|^a on the zero-mean subspace.
    static FourierSymbol fractional_laplacian(const S& a) {
        return FourierSymbol(
            Domain::ZeroMean,
            [a](long k) -> S { return scalar_traits<S>::pow_base(std::labs(k), a); },
            "laplacian^(a/2)");
    }

    /// Explicit symbol values, completed by evenness. Zero values and
    /// entries that break the beta_k = beta_{-k} symmetry are rejected.
    static FourierSymbol from_values(Domain domain, const std::map<long, S>& values,
                                     std::string label = "table") {
        auto table = std::make_shared<std::map<long, S>>();
        for (const auto& [k, v] : values) {
            if (scalar_traits<S>::is_zero(v))
                throw std::invalid_argument("FourierSymbol: zero symbol value at k = " +
                                            std::to_string(k));
            auto [it, inserted] = table->try_emplace(std::labs(k), v);
            if (!inserted && !(it->second == v))
                throw std::invalid_argument("FourierSymbol: asymmetric values at k = +-" +
                                            std::to_string(std::labs(k)));
        }
        return FourierSymbol(
            domain,
            [table](long k) -> S {
                auto it = table->find(std::labs(k));
                if (it == table->end())
                    throw std::out_of_range("FourierSymbol table: no value at k = " +
                                            std::to_string(k));
                return it->second;
            },
            std::move(label));
    }

    S beta(long k) const {
        if (k == 0 && domain_ == Domain::ZeroMean)
            throw DomainViolation("zero-mean symbol has no k = 0 value");
        return beta_(k);
    }

    /// Au: c_k -> beta_k c_k.
    TrigPoly<S> apply(const TrigPoly<S>& p) const {
        require_domain(p, "apply");
        return map_modes(p, false);
    }

    /// A^{-1}u: c_k -> c_k / beta_k.
    TrigPoly<S> apply_inverse(const TrigPoly<S>& p) const {
        require_domain(p, "apply_inverse");
        return map_modes(p, true);
    }

    void require_domain(const TrigPoly<S>& p, const char* op) const {
        if (domain_ == Domain::ZeroMean && !p.coeff(0).is_zero())
            throw DomainViolation(std::string(op) + ": zero-mean operator applied to data with "
                                                    "nonzero mean");
    }

    Domain domain() const { return domain_; }
    const std::string& label() const { return label_; }

  private:
    TrigPoly<S> map_modes(const TrigPoly<S>& p, bool inverse) const {
        long n = p.degree();
        std::vector<Cplx<S>> out(static_cast<std::size_t>(2 * n + 1));
        for (long k = -n; k <= n; ++k) {
            Cplx<S> c = p.coeff(k);
            if (c.is_zero()) continue;
            S b = beta(k);
            out[static_cast<std::size_t>(k + n)] = inverse ? Cplx<S>(c.re / b, c.im / b) : b * c;
        }
        return TrigPoly<S>::from_coeffs(n, std::move(out));
    }

    Domain domain_;
    std::function<S(long)> beta_;
    std::string label_;
};

}  // namespace circleflow
