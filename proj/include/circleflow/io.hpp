#pragma once

#include <fstream>
#include <ostream>
#include <string>

#include <json.hpp>

#include "circleflow/catalog.hpp"
#include "circleflow/flow.hpp"

namespace circleflow {

using nlohmann::json;

/// {"degree": N, "re": [...], "im": [...]} with arrays indexed k = -N..N.
template <class S>
json to_json(const TrigPoly<S>& p) {
    json re = json::array(), im = json::array();
    for (long k = -p.degree(); k <= p.degree(); ++k) {
        auto c = p.coeff(k).to_std();
        re.push_back(c.real());
        im.push_back(c.imag());
    }
    return json{{"degree", p.degree()}, {"re", re}, {"im", im}};
}

template <class S>
TrigPoly<S> trig_poly_from_json(const json& j) {
    long n = j.at("degree").get<long>();
    const auto& re = j.at("re");
    const auto& im = j.at("im");
    if (re.size() != static_cast<std::size_t>(2 * n + 1) || im.size() != re.size())
        throw std::invalid_argument("trig_poly_from_json: bad array length");
    std::vector<Cplx<S>> c(re.size());
    for (std::size_t i = 0; i < re.size(); ++i)
        c[i] = Cplx<S>(S(re[i].get<double>()), S(im[i].get<double>()));
    return TrigPoly<S>::from_coeffs(n, std::move(c));
}

/// {"domain": "full"|"zero-mean", "k": [...], "beta": [...]}, materialized
/// for |k| <= max_mode.
template <class S>
json to_json(const FourierSymbol<S>& A, long max_mode) {
    json ks = json::array(), betas = json::array();
    for (long k = -max_mode; k <= max_mode; ++k) {
        if (k == 0 && A.domain() == Domain::ZeroMean) continue;
        ks.push_back(k);
        betas.push_back(scalar_traits<S>::to_double(A.beta(k)));
    }
    return json{{"domain", domain_name(A.domain())}, {"k", ks}, {"beta", betas}};
}

inline json to_json(const Verdict& v) {
    json w = json::array();
    for (const WitnessFact& f : v.witness) w.push_back(json{{"label", f.label}, {"value", f.value}});
    json j{{"a", v.a},       {"b", v.b},          {"verdict", verdict_name(v.kind)},
           {"witness", w},   {"exact", v.exact},  {"route", v.route}};
    if (v.exact) {
        j["a_exact"] = v.a_str;
        j["b_exact"] = v.b_str;
    }
    if (v.kind == VerdictKind::Undetermined) {
        j["reason"] = v.reason;
        if (v.excluded_member) j["excluded_set_member"] = *v.excluded_member;
    }
    if (v.symbol) {
        FourierSymbol<double> sym =
            v.symbol->domain == Domain::FullGroup
                ? FourierSymbol<double>::lambda_mu(v.symbol->a)
                : FourierSymbol<double>::fractional_laplacian(v.symbol->a);
        j["symbol"] = to_json(sym, 8);
    }
    return j;
}

inline json to_json(const CatalogResult& r) {
    return json{{"name", r.entry.name},
                {"family", r.entry.family},
                {"a", r.entry.a.value},
                {"b", r.entry.b.value},
                {"a_exact", r.entry.a.str_exact()},
                {"b_exact", r.entry.b.str_exact()},
                {"convention", domain_name(r.entry.convention)},
                {"note", r.entry.note},
                {"verdict", to_json(r.verdict)}};
}

inline const char* termination_name(TerminationInfo::Kind k) {
    switch (k) {
        case TerminationInfo::Kind::Completed: return "completed";
        case TerminationInfo::Kind::Blowup: return "blowup";
        default: return "degenerate";
    }
}

/// One JSON object per line: {"t":..., "energy":..., "mean_m":...,
/// "sup_ux":..., "tail":...}; a final line carries the termination record.
inline void write_diagnostics_jsonl(std::ostream& os, const Trajectory& traj) {
    for (const DiagnosticsRecord& d : traj.diagnostics) {
        json j{{"t", d.t},
               {"energy", d.energy},
               {"mean_m", d.mean_m},
               {"sup_ux", d.sup_ux},
               {"tail", d.tail_ratio}};
        os << j.dump() << '\n';
    }
    json term{{"termination", termination_name(traj.termination.kind)},
              {"t", traj.termination.t}};
    if (!traj.termination.reason.empty()) term["reason"] = traj.termination.reason;
    os << term.dump() << '\n';
}

inline void write_diagnostics_csv(std::ostream& os, const Trajectory& traj) {
    os << "t,mean_u,mean_m,energy,sup_ux,tail_ratio\n";
    for (const DiagnosticsRecord& d : traj.diagnostics) {
        os << fmt_double(d.t) << ',' << fmt_double(d.mean_u) << ',' << fmt_double(d.mean_m) << ','
           << fmt_double(d.energy) << ',' << fmt_double(d.sup_ux) << ','
           << fmt_double(d.tail_ratio) << '\n';
    }
}

/// Full-state dumps every `every` steps: {"t":..., "state": {...}}.
inline void write_states_jsonl(std::ostream& os, const Trajectory& traj, long every) {
    if (every <= 0) return;
    for (std::size_t i = 0; i < traj.states.size(); i += static_cast<std::size_t>(every)) {
        json j{{"t", traj.times[i]}, {"state", to_json(traj.states[i])}};
        os << j.dump() << '\n';
    }
}

inline void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    out << content;
    if (!out.good()) throw std::runtime_error("write failed: " + path);
}

}  // namespace circleflow
