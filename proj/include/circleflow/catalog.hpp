#pragma once

#include <array>
#include <cctype>
#include <optional>
#include <string>
#include <vector>

#include "circleflow/metricity.hpp"

namespace circleflow {

/// A named member of the family, with the convention (zero-mean or
/// full-group evolution) under which it is usually posed.
struct CatalogEntry {
    std::string name;    // resolved, e.g. "gclm(2)"
    std::string family;  // e.g. "gclm"
    RealParam a;
    RealParam b;
    Domain convention = Domain::ZeroMean;
    std::string note;
};

struct CatalogResult {
    CatalogEntry entry;
    Verdict verdict;  // from the classifier matching the convention
};

/// Static listing metadata for the nine named equations.
struct CatalogRow {
    const char* family;
    const char* a_desc;
    const char* b_desc;
    Domain convention;
    const char* note;
    bool parameterized;
};

inline const std::array<CatalogRow, 9>& catalog_rows() {
    static const std::array<CatalogRow, 9> rows = {{
        {"burgers", "0", "2", Domain::ZeroMean, "inviscid Burgers equation (m = u)", false},
        {"hunter-saxton", "2", "2", Domain::ZeroMean,
         "Hunter-Saxton equation (nematic liquid crystal waves)", false},
        {"muHS", "2", "2", Domain::FullGroup,
         "mean-coupled Hunter-Saxton variant (between Camassa-Holm and Hunter-Saxton)", false},
        {"muDP", "2", "3", Domain::FullGroup,
         "mean-coupled generalization of the Degasperis-Procesi equation", false},
        {"de-gregorio", "1", "-1", Domain::ZeroMean, "De Gregorio vorticity model", false},
        {"quasi-geostrophic", "1", "1", Domain::ZeroMean,
         "one-dimensional quasi-geostrophic model", false},
        {"gclm", "1", "-1/alpha", Domain::ZeroMean,
         "generalized Constantin-Lax-Majda vorticity model with parameter alpha", true},
        {"axisymmetric-euler", "2", "(d-3)/(d-1)", Domain::ZeroMean,
         "axisymmetric Euler flow in d space dimensions (d >= 2)", true},
        {"proudman-johnson", "2", "-alpha", Domain::ZeroMean,
         "generalized Proudman-Johnson equation with parameter alpha", true},
    }};
    return rows;
}

namespace detail {

inline std::string lower(std::string s) {
    for (char& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    return s;
}

// "name(arg)" or "name(key=arg)" -> {name, arg}; plain "name" -> {name, nullopt}.
inline std::pair<std::string, std::optional<std::string>> split_name(const std::string& raw) {
    auto open = raw.find('(');
    if (open == std::string::npos) return {raw, std::nullopt};
    auto close = raw.rfind(')');
    if (close == std::string::npos || close < open)
        throw UnknownName(raw);
    std::string arg = raw.substr(open + 1, close - open - 1);
    if (auto eq = arg.find('='); eq != std::string::npos) arg = arg.substr(eq + 1);
    return {raw.substr(0, open), arg};
}

}  // namespace detail

/// Look up a named equation; parameterized families take the parameter in
/// parentheses: gclm(0.5), axisymmetric-euler(d=4), proudman-johnson(1).
inline CatalogResult catalog(const std::string& raw_name, const ClassifyOptions& opts = {}) {
    auto [name, arg] = detail::split_name(raw_name);
    std::string key = detail::lower(name);

    CatalogEntry e;
    if (key == "burgers") {
        e = {"burgers", "burgers", RealParam(0.0), RealParam(2.0), Domain::ZeroMean, ""};
    } else if (key == "hunter-saxton") {
        e = {"hunter-saxton", "hunter-saxton", RealParam(2.0), RealParam(2.0), Domain::ZeroMean,
             ""};
    } else if (key == "muhs") {
        e = {"muHS", "muHS", RealParam(2.0), RealParam(2.0), Domain::FullGroup, ""};
    } else if (key == "mudp") {
        e = {"muDP", "muDP", RealParam(2.0), RealParam(3.0), Domain::FullGroup, ""};
    } else if (key == "de-gregorio") {
        e = {"de-gregorio", "de-gregorio", RealParam(1.0), RealParam(-1.0), Domain::ZeroMean, ""};
    } else if (key == "quasi-geostrophic") {
        e = {"quasi-geostrophic", "quasi-geostrophic", RealParam(1.0), RealParam(1.0),
             Domain::ZeroMean, ""};
    } else if (key == "gclm") {
        if (!arg) throw UnknownName(raw_name + " (gclm needs a parameter, e.g. gclm(0.5))");
        RealParam alpha = RealParam::parse(*arg);
        if (alpha.exact == 0) throw std::invalid_argument("gclm: alpha must be nonzero");
        e = {"gclm(" + *arg + ")", "gclm", RealParam(1.0),
             RealParam(Rational(-1) / alpha.exact), Domain::ZeroMean, ""};
    } else if (key == "axisymmetric-euler") {
        if (!arg)
            throw UnknownName(raw_name +
                              " (axisymmetric-euler needs a dimension, e.g. axisymmetric-euler(d=3))");
        RealParam d = RealParam::parse(*arg);
        if (!d.integral() || d.exact < 2)
            throw std::invalid_argument("axisymmetric-euler: d must be an integer >= 2");
        e = {"axisymmetric-euler(d=" + d.exact.str() + ")", "axisymmetric-euler", RealParam(2.0),
             RealParam((d.exact - 3) / (d.exact - 1)), Domain::ZeroMean, ""};
    } else if (key == "proudman-johnson") {
        if (!arg)
            throw UnknownName(raw_name +
                              " (proudman-johnson needs a parameter, e.g. proudman-johnson(1))");
        RealParam alpha = RealParam::parse(*arg);
        e = {"proudman-johnson(" + *arg + ")", "proudman-johnson", RealParam(2.0),
             RealParam(Rational(-alpha.exact)), Domain::ZeroMean, ""};
    } else {
        throw UnknownName(raw_name);
    }

    for (const CatalogRow& row : catalog_rows())
        if (detail::lower(row.family) == detail::lower(e.family)) e.note = row.note;

    CatalogResult res;
    res.entry = e;
    res.verdict = (e.convention == Domain::ZeroMean) ? classify_fourier_type(e.a, e.b, opts)
                                                     : classify_full_group(e.a, e.b, opts);
    return res;
}

}  // namespace circleflow
