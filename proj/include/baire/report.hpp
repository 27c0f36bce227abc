#ifndef BAIRE_REPORT_HPP
#define BAIRE_REPORT_HPP

/**
 * @file report.hpp
 *
 * JSON encoding of results. Rationals are "p/q" strings and enclosures are
 * {"lo", "hi"} objects, so parsing an emitted report gives back the exact
 * values.
 */

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "baire/analysis.hpp"
#include "baire/numerics.hpp"
#include "baire/recurrences.hpp"
#include "baire/spaces.hpp"

namespace baire {

using Json = nlohmann::ordered_json;

/// The materialized finite values of a solution, in index order.
struct SolutionTable {
    std::vector<std::pair<std::uint64_t, Enclosure>> rows;
    std::size_t iterations = 0;
    DistanceValue residual;

    bool operator==(const SolutionTable&) const = default;
};

inline SolutionTable tabulate(const Solution& sol, const Precision& prec = {}) {
    SolutionTable t;
    t.iterations = sol.iterations;
    t.residual = sol.residual;
    t.rows.emplace_back(1, sol.at(1).enclose(prec.bits));
    for (const auto n : evaluated_indices(sol.schema, sol.horizon)) {
        const Letter v = sol.at(n);
        if (!v.is_infinite()) t.rows.emplace_back(n, v.enclose(prec.bits));
    }
    return t;
}

/// A single distance evaluation, with its series split when one applies.
struct DistanceReport {
    std::string distance;
    DistanceValue value;
    std::optional<SeriesValue> series;

    bool operator==(const DistanceReport&) const = default;
};

// ---------------------------------------------------------------------------
// Encoders

inline Json rational_json(const Rational& q) { return to_string(q); }

inline Rational rational_from(const Json& j) {
    Rational q;
    if (q.set_str(j.get<std::string>(), 10) != 0) {
        throw std::invalid_argument("malformed rational '" + j.get<std::string>() + "'");
    }
    q.canonicalize();
    return q;
}

inline Json to_json(const Enclosure& e) { return Json{{"lo", to_string(e.lo())}, {"hi", to_string(e.hi())}}; }

inline Enclosure enclosure_from(const Json& j) { return {rational_from(j.at("lo")), rational_from(j.at("hi"))}; }

inline Json to_json(const DistanceValue& d) {
    return Json{{"value", to_json(d.value)}, {"horizon_bound", d.horizon_bound}};
}

inline DistanceValue distance_from(const Json& j) {
    return {enclosure_from(j.at("value")), j.at("horizon_bound").get<bool>()};
}

inline Json to_json(const SeriesValue& s) {
    return Json{{"partial_sum", rational_json(s.partial_sum)},
                {"tail_bound", rational_json(s.tail_bound)},
                {"terms", s.terms}};
}

inline SeriesValue series_from(const Json& j) {
    return {rational_from(j.at("partial_sum")), rational_from(j.at("tail_bound")), j.at("terms").get<std::uint64_t>()};
}

inline Json to_json(const SolutionTable& t) {
    Json rows = Json::array();
    for (const auto& [n, v] : t.rows) rows.push_back(Json{{"n", n}, {"value", to_json(v)}});
    return Json{{"values", rows}, {"iterations", t.iterations}, {"residual", to_json(t.residual)}};
}

inline SolutionTable solution_table_from(const Json& j) {
    SolutionTable t;
    for (const auto& r : j.at("values")) {
        t.rows.emplace_back(r.at("n").get<std::uint64_t>(), enclosure_from(r.at("value")));
    }
    t.iterations = j.at("iterations").get<std::size_t>();
    t.residual = distance_from(j.at("residual"));
    return t;
}

inline IndexStatus index_status_from(const std::string& s) {
    if (s == "holds") return IndexStatus::Holds;
    if (s == "violated") return IndexStatus::Violated;
    if (s == "unknown") return IndexStatus::Unknown;
    throw std::invalid_argument("unknown index status '" + s + "'");
}

inline Json to_json(const ImproverReport& r) {
    Json per = Json::array();
    for (const auto& [n, o] : r.per_index) {
        per.push_back(Json{{"n", n}, {"status", to_string(o.status)}, {"lhs", to_json(o.lhs)}, {"rhs", to_json(o.rhs)}});
    }
    return Json{{"verdict", r.improver ? "improver" : "not improver"},
                {"n_min", r.n_min},
                {"horizon", r.horizon},
                {"per_index", per}};
}

inline ImproverReport improver_from(const Json& j) {
    ImproverReport r;
    r.improver = j.at("verdict").get<std::string>() == "improver";
    r.n_min = j.at("n_min").get<std::uint64_t>();
    r.horizon = j.at("horizon").get<std::uint64_t>();
    for (const auto& e : j.at("per_index")) {
        r.per_index.emplace(e.at("n").get<std::uint64_t>(),
                            IndexOutcome{index_status_from(e.at("status").get<std::string>()),
                                         enclosure_from(e.at("lhs")), enclosure_from(e.at("rhs"))});
    }
    return r;
}

inline Agreement agreement_from(const std::string& s) {
    for (const auto a : {Agreement::NoClaim, Agreement::Matches, Agreement::Sufficient, Agreement::Differs}) {
        if (to_string(a) == s) return a;
    }
    throw std::invalid_argument("unknown agreement '" + s + "'");
}

inline Json to_json(const ThresholdReport& r) {
    Json per = Json::array();
    for (const auto& [n, e] : r.per_index) {
        per.push_back(Json{{"n", n},
                           {"threshold", to_json(e.threshold)},
                           {"feasible", e.feasible},
                           {"in_range", e.in_range},
                           {"base_transition", e.base_transition}});
    }
    Json out{{"sup_threshold", to_json(r.sup_threshold)},
             {"feasible", r.feasible},
             {"n_min", r.n_min},
             {"horizon", r.horizon},
             {"claim", r.claim ? rational_json(*r.claim) : Json(nullptr)},
             {"agreement", to_string(r.agreement)},
             {"witness", r.witness ? Json(*r.witness) : Json(nullptr)},
             {"per_index", per}};
    return out;
}

inline ThresholdReport threshold_from(const Json& j) {
    ThresholdReport r;
    r.sup_threshold = enclosure_from(j.at("sup_threshold"));
    r.feasible = j.at("feasible").get<bool>();
    r.n_min = j.at("n_min").get<std::uint64_t>();
    r.horizon = j.at("horizon").get<std::uint64_t>();
    if (!j.at("claim").is_null()) r.claim = rational_from(j.at("claim"));
    r.agreement = agreement_from(j.at("agreement").get<std::string>());
    if (!j.at("witness").is_null()) r.witness = j.at("witness").get<std::uint64_t>();
    for (const auto& e : j.at("per_index")) {
        r.per_index.emplace(e.at("n").get<std::uint64_t>(),
                            ThresholdEntry{enclosure_from(e.at("threshold")), e.at("feasible").get<bool>(),
                                           e.at("in_range").get<bool>(), e.at("base_transition").get<bool>()});
    }
    return r;
}

inline Json to_json(const std::optional<BigOCertificate>& c) {
    if (!c) {
        return Json{{"certified", false}};
    }
    return Json{{"certified", true},
                {"witness_c", rational_json(c->witness_c)},
                {"witness_n0", c->witness_n0},
                {"checked_horizon", c->checked_horizon},
                {"method", to_string(c->method)}};
}

inline std::optional<BigOCertificate> certificate_from(const Json& j) {
    if (!j.at("certified").get<bool>()) {
        return std::nullopt;
    }
    const std::string m = j.at("method").get<std::string>();
    if (m != to_string(CertificateMethod::SubprefixDomination) && m != to_string(CertificateMethod::ExplicitWitness)) {
        throw std::invalid_argument("unknown certificate method '" + m + "'");
    }
    return BigOCertificate{rational_from(j.at("witness_c")), j.at("witness_n0").get<std::uint64_t>(),
                           j.at("checked_horizon").get<std::uint64_t>(),
                           m == to_string(CertificateMethod::SubprefixDomination) ? CertificateMethod::SubprefixDomination
                                                                                  : CertificateMethod::ExplicitWitness};
}

inline AxiomSystem axiom_system_from(const std::string& s) {
    for (const auto a : {AxiomSystem::QuasiMetric, AxiomSystem::PartialMetric, AxiomSystem::PartialQuasiMetric}) {
        if (to_string(a) == s) return a;
    }
    throw std::invalid_argument("unknown axiom system '" + s + "'");
}

inline Json to_json(const AxiomReport& r) {
    const auto idx = [](std::size_t i) { return i == AxiomViolation::none ? Json(nullptr) : Json(i); };
    Json v = Json::array();
    for (const auto& x : r.violations) {
        v.push_back(Json{{"axiom", x.axiom}, {"witness", Json::array({idx(x.i), idx(x.j), idx(x.k)})}});
    }
    return Json{{"system", to_string(r.system)},
                {"samples", r.samples},
                {"verdict", r.pass() ? "pass" : "fail"},
                {"violations", v}};
}

inline AxiomReport axiom_report_from(const Json& j) {
    const auto idx = [](const Json& x) { return x.is_null() ? AxiomViolation::none : x.get<std::size_t>(); };
    AxiomReport r;
    r.system = axiom_system_from(j.at("system").get<std::string>());
    r.samples = j.at("samples").get<std::size_t>();
    for (const auto& v : j.at("violations")) {
        const auto& w = v.at("witness");
        r.violations.push_back({v.at("axiom").get<std::string>(), idx(w.at(0)), idx(w.at(1)), idx(w.at(2))});
    }
    return r;
}

inline Json to_json(const DistanceReport& d) {
    return Json{{"distance", d.distance},
                {"value", to_json(d.value)},
                {"series", d.series ? to_json(*d.series) : Json(nullptr)}};
}

inline DistanceReport distance_report_from(const Json& j) {
    DistanceReport d{j.at("distance").get<std::string>(), distance_from(j.at("value")), std::nullopt};
    if (!j.at("series").is_null()) d.series = series_from(j.at("series"));
    return d;
}

inline Json to_json(const ObstructionReport& r) {
    return Json{{"series_terms", r.series_terms},
                {"horizon", r.horizon},
                {"pair", to_json(r.pair)},
                {"pair_without_first", rational_json(r.pair_without_first)},
                {"pair_image", to_json(r.pair_image)},
                {"fixed_point_self", to_json(r.fixed_point_self)},
                {"first_term", rational_json(r.first_term)},
                {"self_distance_positive", r.self_distance_positive},
                {"baire_self", to_json(r.baire_self)}};
}

inline ObstructionReport obstruction_from(const Json& j) {
    ObstructionReport r;
    r.series_terms = j.at("series_terms").get<std::uint64_t>();
    r.horizon = j.at("horizon").get<std::uint64_t>();
    r.pair = series_from(j.at("pair"));
    r.pair_without_first = rational_from(j.at("pair_without_first"));
    r.pair_image = series_from(j.at("pair_image"));
    r.fixed_point_self = series_from(j.at("fixed_point_self"));
    r.first_term = rational_from(j.at("first_term"));
    r.self_distance_positive = j.at("self_distance_positive").get<bool>();
    r.baire_self = distance_from(j.at("baire_self"));
    return r;
}

inline Json to_json(const Schema& s) {
    if (const auto* dc = std::get_if<DivideConquerRec>(&s)) {
        return Json{{"type", "dc"}, {"a", dc->a}, {"b", dc->b}, {"c", dc->c.str()}, {"h", dc->h.str()}};
    }
    const auto& lin = std::get<LinearRec>(s);
    return Json{{"type", "linear"}, {"c", lin.c.str()}, {"h", lin.h.str()}};
}

inline Schema schema_from(const Json& j) {
    const std::string type = j.at("type").get<std::string>();
    const Rational c = rational_from(j.at("c"));
    HExpr h = HExpr::parse(j.at("h").get<std::string>());
    if (type == "dc") {
        return make_divide_conquer(j.at("a").get<std::uint64_t>(), j.at("b").get<std::uint64_t>(), c, std::move(h));
    }
    if (type == "linear") {
        return make_linear(c, std::move(h));
    }
    throw std::invalid_argument("unknown schema type '" + type + "'");
}

}  // namespace baire

#endif
