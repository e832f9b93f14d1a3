#pragma once

#include <stdexcept>
#include <string>

namespace circleflow {

/// A zero-mean operator was applied to data with a nonzero mean, or the
/// k = 0 symbol value was requested on the zero-mean domain.
struct DomainViolation : std::runtime_error {
    explicit DomainViolation(const std::string& what) : std::runtime_error(what) {}
};

/// The three-term symbol recursion hit a vanishing denominator at step k.
/// For k = 2 and k = 3 this is exactly membership of b in the exclusion
/// set E_a; larger k can degenerate for other b and is reported, never
/// silently skipped.
struct DegenerateDenominator : std::runtime_error {
    long k;
    explicit DegenerateDenominator(long k_)
        : std::runtime_error("symbol recursion denominator vanishes at k = " +
                             std::to_string(k_)),
          k(k_) {}
};

/// b = -1 makes the mode-doubling relation collapse (it forces the whole
/// symbol to vanish, which no invertible operator allows).
struct BMinusOneDegeneracy : std::runtime_error {
    BMinusOneDegeneracy()
        : std::runtime_error("b = -1: doubling relation degenerates (forces a zero symbol)") {}
};

/// A state coefficient became non-finite during time stepping.
struct NonFiniteState : std::runtime_error {
    NonFiniteState() : std::runtime_error("non-finite coefficient in state") {}
};

/// Catalog lookup with an unrecognized equation name.
struct UnknownName : std::runtime_error {
    explicit UnknownName(const std::string& name)
        : std::runtime_error("unknown equation name: " + name) {}
};

}  // namespace circleflow
