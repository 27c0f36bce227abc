#ifndef BAIRE_CLI_HPP
#define BAIRE_CLI_HPP

/**
 * @file cli.hpp
 *
 * Command dispatch behind the `bairec` tool: schema files and presets,
 * the command runners and their table / JSON output.
 *
 * Exit codes: 0 success, 1 negative verdict, 2 input error, 3 precision
 * exhaustion.
 */

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <fstream>
#include <iomanip>
#include <map>
#include <optional>
#include <ostream>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "baire/analysis.hpp"
#include "baire/hexpr.hpp"
#include "baire/numerics.hpp"
#include "baire/recurrences.hpp"
#include "baire/report.hpp"
#include "baire/sampling.hpp"
#include "baire/spaces.hpp"
#include "baire/words.hpp"

namespace baire {

enum ExitCode : int { kOk = 0, kNegative = 1, kInputError = 2, kPrecisionExhausted = 3 };

/// Malformed schema text; line and column are 1-based.
class SchemaError : public std::invalid_argument {
public:
    SchemaError(const std::string& what, std::size_t line, std::size_t column)
        : std::invalid_argument("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + what),
          line_(line),
          column_(column) {}

    std::size_t line() const { return line_; }
    std::size_t column() const { return column_; }

private:
    std::size_t line_;
    std::size_t column_;
};

struct LoadedSchema {
    Schema schema;
    std::optional<std::uint64_t> horizon;
};

/**
 * Parses `key = value` lines (type, a, b, c, h, horizon). '#' starts a
 * comment; blank lines are ignored. `;` also separates entries so that a
 * schema fits on one command line.
 */
inline LoadedSchema parse_schema_text(const std::string& text) {
    struct Entry {
        std::string value;
        std::size_t line;
        std::size_t column;
    };
    std::map<std::string, Entry> entries;

    std::size_t line_no = 0;
    std::istringstream in(text);
    std::string raw;
    while (std::getline(in, raw)) {
        ++line_no;
        std::size_t start = 0;
        // Split on ';' but remember the column of each piece.
        while (start <= raw.size()) {
            std::size_t end = raw.find(';', start);
            if (end == std::string::npos) end = raw.size();
            std::string piece = raw.substr(start, end - start);
            const std::size_t hash = piece.find('#');
            if (hash != std::string::npos) {
                piece.resize(hash);
                end = raw.size();
            }
            const std::size_t first = piece.find_first_not_of(" \t\r");
            if (first != std::string::npos) {
                const std::size_t eq = piece.find('=');
                if (eq == std::string::npos) {
                    throw SchemaError("expected 'key = value'", line_no, start + first + 1);
                }
                std::string key = piece.substr(first, eq - first);
                key.erase(key.find_last_not_of(" \t") + 1);
                const std::size_t vstart = piece.find_first_not_of(" \t", eq + 1);
                if (vstart == std::string::npos) {
                    throw SchemaError("missing value for '" + key + "'", line_no, start + eq + 2);
                }
                std::string value = piece.substr(vstart);
                value.erase(value.find_last_not_of(" \t\r") + 1);
                static const char* known[] = {"type", "a", "b", "c", "h", "horizon"};
                if (std::find(std::begin(known), std::end(known), key) == std::end(known)) {
                    throw SchemaError("unknown key '" + key + "'", line_no, start + first + 1);
                }
                if (entries.count(key) != 0) {
                    throw SchemaError("duplicate key '" + key + "'", line_no, start + first + 1);
                }
                entries.emplace(key, Entry{value, line_no, start + vstart + 1});
            }
            start = end + 1;
        }
    }

    const auto need = [&](const std::string& key) -> const Entry& {
        const auto it = entries.find(key);
        if (it == entries.end()) {
            throw SchemaError("missing key '" + key + "'", line_no == 0 ? 1 : line_no, 1);
        }
        return it->second;
    };
    const auto integer = [](const Entry& e, const char* key) {
        const bool digits = !e.value.empty() && std::all_of(e.value.begin(), e.value.end(),
                                                             [](unsigned char ch) { return std::isdigit(ch); });
        if (!digits || e.value.size() > 18) {
            throw SchemaError(std::string(key) + " must be a positive integer", e.line, e.column);
        }
        return static_cast<std::uint64_t>(std::stoull(e.value));
    };

    const Entry& type = need("type");
    const Entry& ce = need("c");
    Rational c;
    try {
        c = parse_rational(ce.value);
    } catch (const std::invalid_argument&) {
        throw SchemaError("bad rational '" + ce.value + "'", ce.line, ce.column);
    }
    if (sgn(c) <= 0) {
        throw SchemaError("c must be positive", ce.line, ce.column);
    }
    const Entry& he = need("h");
    HExpr h;
    try {
        h = HExpr::parse(he.value);
    } catch (const SyntaxError& e) {
        throw SchemaError(e.what(), he.line, he.column + e.position());
    }

    LoadedSchema out{make_linear(c, h), std::nullopt};
    if (type.value == "dc") {
        const Entry& a = need("a");
        const Entry& b = need("b");
        const std::uint64_t av = integer(a, "a");
        const std::uint64_t bv = integer(b, "b");
        if (av < 2) throw SchemaError("a must be an integer > 1", a.line, a.column);
        if (bv < 2) throw SchemaError("b must be an integer > 1", b.line, b.column);
        out.schema = make_divide_conquer(av, bv, c, h);
    } else if (type.value == "linear") {
        for (const char* k : {"a", "b"}) {
            if (entries.count(k) != 0) {
                const Entry& e = entries.at(k);
                throw SchemaError(std::string("'") + k + "' does not apply to linear schemas", e.line, e.column);
            }
        }
    } else {
        throw SchemaError("type must be 'dc' or 'linear'", type.line, type.column);
    }
    if (const auto it = entries.find("horizon"); it != entries.end()) {
        const std::uint64_t hz = integer(it->second, "horizon");
        if (hz < 2) throw SchemaError("horizon must be at least 2", it->second.line, it->second.column);
        out.horizon = hz;
    }
    return out;
}

inline LoadedSchema load_schema(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw std::invalid_argument("cannot open schema file '" + path + "'");
    }
    std::ostringstream text;
    text << in.rdbuf();
    return parse_schema_text(text.str());
}

// ---------------------------------------------------------------------------
// Presets

struct Preset {
    std::string name;
    Schema schema;
    HExpr shape;
    Rational claimed_k;  // the constant stated for the closed-form bound
};

inline const std::vector<std::string>& preset_names() {
    static const std::vector<std::string> names = {"mergesort-worst", "mergesort-average", "quicksort-best",
                                                   "quicksort-worst", "largetwo"};
    return names;
}

inline Preset make_preset(const std::string& name, const Rational& c, const Rational& d = 1,
                          const Rational& j = 1) {
    const HExpr nlogn = HExpr::parse("n*log2(n)");
    if (name == "mergesort-worst") {
        return {name, make_divide_conquer(2, 2, c, HExpr::parse("n-1")), nlogn, Rational(1)};
    }
    if (name == "mergesort-average") {
        return {name, make_divide_conquer(2, 2, c, HExpr::parse("n/2")), nlogn, Rational(1, 2)};
    }
    if (name == "quicksort-best") {
        if (sgn(d) <= 0) throw std::invalid_argument("d must be positive");
        return {name, make_divide_conquer(2, 2, c, HExpr::parse(to_string(d) + "*n")), nlogn, d};
    }
    if (name == "quicksort-worst") {
        if (sgn(j) <= 0) throw std::invalid_argument("j must be positive");
        const Rational k = std::max(Rational(c / 4 + j / 2), Rational(3 * j / 5));
        return {name, make_linear(c, HExpr::parse(to_string(j) + "*n")), HExpr::parse("n^2"), k};
    }
    if (name == "largetwo") {
        if (sgn(d) <= 0) throw std::invalid_argument("d must be positive");
        const Rational k = std::max(Rational((2 * c + 3) / (2 + 2 * d)), Rational(1));
        return {name, make_linear(c, HExpr::parse("2-1/n")), HExpr::parse("2*(n-1)-log2(n)+" + to_string(d)), k};
    }
    throw std::invalid_argument("unknown preset '" + name + "'");
}

// ---------------------------------------------------------------------------
// Word literals

/// "inf" or a positive rational.
inline ExtPos parse_extpos(const std::string& text) {
    if (text == "inf" || text == "oo") {
        return ExtPos::infinity();
    }
    const Rational q = parse_rational(text);
    if (sgn(q) <= 0) {
        throw std::invalid_argument("letters must be positive, got '" + text + "'");
    }
    return ExtPos(q);
}

/// A finite word written as "1,2,inf" or "(1, 2, inf)".
inline Word parse_word(const std::string& text) {
    std::string t = text;
    std::replace(t.begin(), t.end(), ',', ' ');
    std::replace(t.begin(), t.end(), '(', ' ');
    std::replace(t.begin(), t.end(), ')', ' ');
    std::istringstream in(t);
    std::vector<Letter> letters;
    std::string tok;
    while (in >> tok) letters.emplace_back(parse_extpos(tok));
    if (letters.empty()) {
        throw std::invalid_argument("empty word '" + text + "'");
    }
    return Word::finite(std::move(letters));
}

// ---------------------------------------------------------------------------
// Run

enum class OutputFormat { Table, Json };

struct RunConfig {
    std::string command;
    // Schema input: one of preset, schema file, inline schema text.
    std::optional<std::string> preset;
    std::optional<std::string> schema_file;
    std::optional<std::string> schema_inline;
    Rational c = 1;
    Rational d = 1;
    Rational j = 1;
    std::optional<std::uint64_t> horizon;
    std::optional<std::uint64_t> n_min;
    unsigned precision_bits = 128;
    OutputFormat output_format = OutputFormat::Table;
    std::uint64_t seed = 0;
    std::size_t samples = 30;
    std::string system = "pqm";
    std::string distance = "baire-q";
    std::optional<std::string> shape;
    std::optional<Rational> k;
    std::optional<std::string> x;
    std::optional<std::string> y;
};

inline const std::vector<std::string>& command_names() {
    static const std::vector<std::string> names = {"solve",    "analyze",      "threshold",   "certify",
                                                   "distance", "check-axioms", "obstruction", "demo"};
    return names;
}

namespace detail {

/// Short decimal rendering for tables; exact rationals stay exact.
inline std::string show(const Enclosure& e) {
    if (e.exact()) {
        return to_string(e.lo());
    }
    mpf_class mid(0, 256);
    mid = Rational((e.lo() + e.hi()) / 2);
    std::ostringstream os;
    os << "~" << std::setprecision(15) << mid;
    return os.str();
}

inline std::string show(const DistanceValue& d) {
    return d.horizon_bound ? "<= " + to_string(d.value.hi()) : show(d.value);
}

inline std::string pad(std::string s, std::size_t w) {
    if (s.size() < w) s.append(w - s.size(), ' ');
    return s;
}

struct Resolved {
    std::optional<Schema> schema;
    std::optional<HExpr> shape;
    std::optional<Rational> claimed_k;
    Horizon horizon;
    std::uint64_t n_min = 2;
    std::string horizon_unit;
};

inline std::uint64_t default_horizon(const Schema& s) {
    return is_divide_conquer(s) ? Horizon::default_grid_levels : Horizon::default_dense;
}

inline Resolved resolve(const RunConfig& cfg) {
    const int sources = cfg.preset.has_value() + cfg.schema_file.has_value() + cfg.schema_inline.has_value();
    if (sources > 1) {
        throw std::invalid_argument("give at most one of --preset, --schema, --inline");
    }
    Resolved r;
    std::optional<std::uint64_t> file_horizon;
    if (cfg.preset) {
        Preset p = make_preset(*cfg.preset, cfg.c, cfg.d, cfg.j);
        r.schema = p.schema;
        r.shape = p.shape;
        r.claimed_k = p.claimed_k;
    } else if (cfg.schema_file || cfg.schema_inline) {
        LoadedSchema l = cfg.schema_file ? load_schema(*cfg.schema_file) : parse_schema_text(*cfg.schema_inline);
        r.schema = l.schema;
        file_horizon = l.horizon;
    }
    if (cfg.shape) r.shape = HExpr::parse(*cfg.shape);
    if (cfg.k) r.claimed_k = *cfg.k;
    if (r.schema) {
        r.horizon = Horizon(cfg.horizon ? *cfg.horizon : file_horizon ? *file_horizon : default_horizon(*r.schema));
        r.n_min = cfg.n_min ? *cfg.n_min : default_n_min(*r.schema);
        r.horizon_unit = is_divide_conquer(*r.schema) ? "grid levels" : "indices";
        validate(*r.schema, r.horizon, Precision{cfg.precision_bits});
    } else if (cfg.horizon) {
        r.horizon = Horizon(*cfg.horizon);
        r.horizon_unit = "indices";
    }
    return r;
}

inline const Schema& need_schema(const Resolved& r) {
    if (!r.schema) {
        throw std::invalid_argument("this command needs a schema (--preset, --schema or --inline)");
    }
    return *r.schema;
}

inline const HExpr& need_shape(const Resolved& r) {
    if (!r.shape) {
        throw std::invalid_argument("this command needs a bound shape (--shape or a preset)");
    }
    return *r.shape;
}

inline std::string schema_line(const Schema& s) {
    if (const auto* dc = std::get_if<DivideConquerRec>(&s)) {
        return "T(n) = " + std::to_string(dc->a) + " T(n/" + std::to_string(dc->b) + ") + " + dc->h.str() +
               " on n = " + std::to_string(dc->b) + "^k, T(1) = " + dc->c.str();
    }
    const auto& lin = std::get<LinearRec>(s);
    return "T(n) = T(n-1) + " + lin.h.str() + ", T(1) = " + lin.c.str();
}

struct Outcome {
    Json result;
    std::string table;
    std::string verdict;
    int code = kOk;
};

inline AxiomSystem system_from_flag(const std::string& s) {
    if (s == "qm") return AxiomSystem::QuasiMetric;
    if (s == "pm") return AxiomSystem::PartialMetric;
    if (s == "pqm") return AxiomSystem::PartialQuasiMetric;
    throw std::invalid_argument("unknown axiom system '" + s + "' (qm, pm, pqm)");
}

inline const std::vector<std::string>& distance_names() {
    static const std::vector<std::string> names = {"baire-p",     "baire-q",      "d-baire-p",   "d-baire-q",
                                                   "u-minus-one", "d-complexity", "p-complexity"};
    return names;
}

inline WordDistance word_distance(const std::string& name, std::uint64_t series_terms, const Precision& prec) {
    if (name == "baire-p") return [prec](const Word& x, const Word& y) { return baire_pm(x, y, prec); };
    if (name == "baire-q") return [prec](const Word& x, const Word& y) { return baire_pqm(x, y, prec); };
    if (name == "d-baire-p") return d_baire_pm(prec);
    if (name == "d-baire-q") return d_baire_pqm(prec);
    if (name == "d-complexity") return d_complexity_truncated(series_terms);
    if (name == "p-complexity") return p_complexity_truncated(series_terms);
    throw std::invalid_argument("unknown word distance '" + name + "'");
}

// -- commands ---------------------------------------------------------------

inline Outcome cmd_solve(const Resolved& r, const Precision& prec) {
    const Solution sol = fixpoint_solve(need_schema(r), r.horizon, prec);
    const SolutionTable t = tabulate(sol, prec);
    Outcome o;
    o.result = to_json(t);
    std::ostringstream os;
    os << pad("n", 22) << "T(n)\n";
    for (const auto& [n, v] : t.rows) os << pad(std::to_string(n), 22) << show(v) << "\n";
    os << "iterations: " << t.iterations << "   residual q_B: " << show(t.residual) << "\n";
    o.table = os.str();
    o.verdict = "solved through horizon " + std::to_string(r.horizon.n_max) + " " + r.horizon_unit;
    return o;
}

inline Outcome cmd_analyze(const Resolved& r, const Precision& prec) {
    const Schema& s = need_schema(r);
    if (!r.claimed_k) {
        throw std::invalid_argument("analyze needs a constant (--k or a preset)");
    }
    const CandidateBound g = bound_for(s, need_shape(r), *r.claimed_k);
    const ImproverReport rep = is_improver(s, g, r.n_min, r.horizon, prec);
    Outcome o;
    o.result = to_json(rep);
    std::ostringstream os;
    os << "candidate g(n) = " << g.str() << ", g(1) = " << g.base_value.str() << "\n";
    os << pad("n", 22) << pad("F(g)(n)", 26) << pad("g(n)", 26) << "status\n";
    for (const auto& [n, e] : rep.per_index) {
        os << pad(std::to_string(n), 22) << pad(show(e.lhs), 26) << pad(show(e.rhs), 26) << to_string(e.status)
           << "\n";
    }
    o.table = os.str();
    const std::string range = " for n_min = " + std::to_string(r.n_min) + " through horizon " +
                              std::to_string(r.horizon.n_max) + " " + r.horizon_unit;
    if (rep.improver) {
        o.verdict = "improver" + range;
    } else {
        o.verdict = "not improver" + range + ", first failure at n = " + std::to_string(*rep.first_failure());
        o.code = kNegative;
    }
    return o;
}

inline Outcome cmd_threshold(const Resolved& r, const Precision& prec) {
    const Schema& s = need_schema(r);
    const ThresholdReport rep = solve_threshold(s, need_shape(r), base_cost(s), r.n_min, r.horizon, prec, r.claimed_k);
    Outcome o;
    o.result = to_json(rep);
    std::ostringstream os;
    os << pad("n", 22) << pad("threshold", 28) << "note\n";
    for (const auto& [n, e] : rep.per_index) {
        std::string note;
        if (!e.feasible) note += "infeasible ";
        if (e.base_transition) note += "base transition ";
        if (!e.in_range) note += "below n_min";
        os << pad(std::to_string(n), 22) << pad(e.feasible ? show(e.threshold) : "-", 28) << note << "\n";
    }
    os << "sup threshold (n >= " << r.n_min << "): " << (rep.feasible ? show(rep.sup_threshold) : "infeasible")
       << "\n";
    if (rep.claim) {
        os << "claimed constant: " << to_string(*rep.claim) << "   agreement: " << to_string(rep.agreement);
        if (rep.witness) os << " (witness n = " << *rep.witness << ")";
        os << "\n";
    }
    o.table = os.str();
    const std::string range =
        " for n_min = " + std::to_string(r.n_min) + " through horizon " + std::to_string(r.horizon.n_max) + " " +
        r.horizon_unit;
    if (!rep.feasible) {
        o.verdict = "infeasible" + range;
        o.code = kNegative;
    } else if (rep.agreement == Agreement::Differs) {
        o.verdict = "claimed constant differs at n = " + std::to_string(*rep.witness) + range;
        o.code = kNegative;
    } else {
        o.verdict = "sup threshold " + show(rep.sup_threshold) + range;
    }
    return o;
}

inline Outcome cmd_certify(const RunConfig& cfg, const Resolved& r, const Precision& prec) {
    const Schema& s = need_schema(r);
    const HExpr& shape = need_shape(r);
    Rational k;
    if (cfg.k) {
        k = *cfg.k;
    } else {
        // Smallest constant making g an improver at every evaluated index.
        const ThresholdReport t = solve_threshold(s, shape, base_cost(s), 1, r.horizon, prec);
        if (!t.feasible) {
            throw std::invalid_argument("no constant makes the shape an improver; pass --k");
        }
        k = t.sup_threshold.hi();
    }
    const CandidateBound g = bound_for(s, shape, k);
    const Solution sol = fixpoint_solve(s, r.horizon, prec);
    const auto cert = certify_big_o(sol, g, prec);
    Outcome o;
    o.result = to_json(cert);
    o.result["bound"] = g.str();
    std::ostringstream os;
    os << "bound g(n) = " << g.str() << ", g(1) = " << g.base_value.str() << "\n";
    if (cert) {
        os << "witness c' = " << to_string(cert->witness_c) << ", n0 = " << cert->witness_n0
           << ", method: " << to_string(cert->method) << "\n";
    }
    o.table = os.str();
    const std::string range = " through index " + std::to_string(sol.word.materialized());
    if (cert) {
        o.verdict = "certified T in O(g)" + range;
    } else {
        o.verdict = "no certificate on the witness ladder" + range;
        o.code = kNegative;
    }
    return o;
}

inline Outcome cmd_distance(const RunConfig& cfg, const Precision& prec) {
    if (!cfg.x || !cfg.y) {
        throw std::invalid_argument("distance needs --x and --y");
    }
    DistanceReport rep;
    rep.distance = cfg.distance;
    if (cfg.distance == "u-minus-one") {
        rep.value = u_minus_one(parse_extpos(*cfg.x), parse_extpos(*cfg.y));
    } else {
        const Word x = parse_word(*cfg.x);
        const Word y = parse_word(*cfg.y);
        const std::uint64_t N = cfg.horizon ? *cfg.horizon : std::min(x.materialized(), y.materialized());
        if (cfg.distance == "d-complexity") {
            rep.series = d_complexity(x, y, N);
            rep.value = rep.series->distance();
        } else if (cfg.distance == "p-complexity") {
            rep.series = p_complexity(x, y, N);
            rep.value = rep.series->distance();
        } else {
            rep.value = word_distance(cfg.distance, N, prec)(x, y);
        }
    }
    Outcome o;
    o.result = to_json(rep);
    std::ostringstream os;
    os << cfg.distance << "(" << *cfg.x << ", " << *cfg.y << ") = " << to_string(rep.value) << "\n";
    if (rep.series) {
        os << "partial sum " << to_string(rep.series->partial_sum) << " over " << rep.series->terms
           << " terms, tail <= " << to_string(rep.series->tail_bound) << "\n";
    }
    o.table = os.str();
    o.verdict = "computed";
    return o;
}

inline Outcome cmd_check_axioms(const RunConfig& cfg, const Precision& prec) {
    const AxiomSystem system = system_from_flag(cfg.system);
    constexpr std::uint64_t kSeriesTerms = 6;
    AxiomReport rep;
    if (cfg.distance == "u-minus-one") {
        SampleRng rng(cfg.seed);
        std::vector<ExtPos> sample;
        for (std::size_t i = 0; i < cfg.samples; ++i) {
            sample.push_back(rng.coin(6) ? ExtPos::infinity() : ExtPos(rng.positive()));
        }
        rep = check_axioms<ExtPos>(
            system, [](const ExtPos& a, const ExtPos& b) { return u_minus_one(a, b); }, std::span<const ExtPos>(sample),
            [](const ExtPos& a, const ExtPos& b) { return a == b; });
    } else {
        std::vector<Word> sample;
        if (cfg.distance == "d-complexity" || cfg.distance == "p-complexity") {
            SampleRng rng(cfg.seed);
            for (std::size_t i = 0; i < cfg.samples; ++i) sample.push_back(random_exact_word(rng, kSeriesTerms));
        } else {
            sample = random_finite_words(cfg.seed, cfg.samples);
        }
        rep = check_axioms(system, word_distance(cfg.distance, kSeriesTerms, prec), std::span<const Word>(sample), prec);
    }
    Outcome o;
    o.result = to_json(rep);
    o.result["distance"] = cfg.distance;
    o.result["seed"] = cfg.seed;
    std::ostringstream os;
    os << to_string(system) << " axioms for " << cfg.distance << " on " << rep.samples << " samples (seed "
       << cfg.seed << ")\n";
    const std::size_t shown = std::min<std::size_t>(rep.violations.size(), 20);
    for (std::size_t i = 0; i < shown; ++i) {
        const auto& v = rep.violations[i];
        os << "  violation " << v.axiom << " at (" << v.i << ", " << v.j;
        if (v.k != AxiomViolation::none) os << ", " << v.k;
        os << ")\n";
    }
    if (rep.violations.size() > shown) os << "  ... " << rep.violations.size() - shown << " more\n";
    o.table = os.str();
    if (rep.pass()) {
        o.verdict = "pass: zero violations";
    } else {
        o.verdict = "fail: " + std::to_string(rep.violations.size()) + " violations";
        o.code = kNegative;
    }
    return o;
}

inline Outcome cmd_obstruction(const Resolved& r, const Precision& prec) {
    const ObstructionReport rep = matthews_obstruction(need_schema(r), r.horizon, prec);
    Outcome o;
    o.result = to_json(rep);
    std::ostringstream os;
    os << "pair f = 2c, g = 2(c+1) on the grid, " << rep.series_terms << " series terms\n";
    os << "  p_C(f, g)                 = " << show(Enclosure(rep.pair.partial_sum)) << "\n";
    os << "  p_C(f, g) without n = 1   = " << show(Enclosure(rep.pair_without_first)) << "\n";
    os << "  p_C(Phi f, Phi g)         = " << show(Enclosure(rep.pair_image.partial_sum)) << "\n";
    os << "fixed point v\n";
    os << "  p_C(v, v) partial sum     = " << show(Enclosure(rep.fixed_point_self.partial_sum)) << " >= "
       << to_string(rep.first_term) << "\n";
    os << "  q_B(v, v)                 " << show(rep.baire_self) << "\n";
    o.table = os.str();
    if (rep.self_distance_positive && rep.baire_self.horizon_bound) {
        o.verdict = "p_C(v, v) > 0 while q_B(v, v) <= 2^-" + std::to_string(r.horizon.n_max);
    } else {
        o.verdict = "obstruction not exhibited";
        o.code = kNegative;
    }
    return o;
}

inline Outcome cmd_demo(const RunConfig& cfg, const Precision& prec) {
    Outcome o;
    o.result = Json::array();
    std::ostringstream os;
    for (const auto& name : preset_names()) {
        const Preset p = make_preset(name, cfg.c, cfg.d, cfg.j);
        const Horizon hz(cfg.horizon ? *cfg.horizon : default_horizon(p.schema));
        const std::uint64_t n_min = cfg.n_min ? *cfg.n_min : default_n_min(p.schema);
        const Solution sol = fixpoint_solve(p.schema, hz, prec);
        const ThresholdReport t = solve_threshold(p.schema, p.shape, base_cost(p.schema), n_min, hz, prec, p.claimed_k);
        const auto idx = evaluated_indices(p.schema, hz);
        os << name << ": " << schema_line(p.schema) << "\n";
        os << "  T:";
        for (std::size_t i = 0; i < std::min<std::size_t>(idx.size(), 4); ++i) {
            os << " T(" << idx[i] << ")=" << show(sol.at(idx[i]).enclose(prec.bits));
        }
        os << "\n  shape " << p.shape.str() << ": sup threshold " << show(t.sup_threshold) << ", claimed "
           << to_string(p.claimed_k) << ", " << to_string(t.agreement);
        if (t.witness) os << " at n = " << *t.witness;
        os << "\n";
        o.result.push_back(Json{{"preset", name},
                                {"schema", to_json(p.schema)},
                                {"horizon", hz.n_max},
                                {"n_min", n_min},
                                {"iterations", sol.iterations},
                                {"threshold", to_json(t)}});
    }
    o.table = os.str();
    o.verdict = "demo complete";
    return o;
}

}  // namespace detail

/// Runs one command, writing the report to `out` and diagnostics to `err`.
inline int run(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    try {
        if (cfg.precision_bits < 53) {
            throw std::invalid_argument("precision must be at least 53 bits");
        }
        const Precision prec{cfg.precision_bits, std::max(cfg.precision_bits, Precision{}.cap_bits)};
        detail::Resolved r;
        if (cfg.command != "demo") r = detail::resolve(cfg);

        detail::Outcome o;
        if (cfg.command == "solve") {
            o = detail::cmd_solve(r, prec);
        } else if (cfg.command == "analyze") {
            o = detail::cmd_analyze(r, prec);
        } else if (cfg.command == "threshold") {
            o = detail::cmd_threshold(r, prec);
        } else if (cfg.command == "certify") {
            o = detail::cmd_certify(cfg, r, prec);
        } else if (cfg.command == "distance") {
            o = detail::cmd_distance(cfg, prec);
        } else if (cfg.command == "check-axioms") {
            o = detail::cmd_check_axioms(cfg, prec);
        } else if (cfg.command == "obstruction") {
            o = detail::cmd_obstruction(r, prec);
        } else if (cfg.command == "demo") {
            o = detail::cmd_demo(cfg, prec);
        } else {
            throw std::invalid_argument("unknown command '" + cfg.command + "'");
        }

        const bool has_schema = r.schema.has_value() && cfg.command != "demo";
        if (cfg.output_format == OutputFormat::Json) {
            Json j{{"command", cfg.command},
                   {"schema", has_schema ? to_json(*r.schema) : Json(nullptr)},
                   {"horizon", has_schema ? Json(r.horizon.n_max) : Json(nullptr)},
                   {"horizon_unit", has_schema ? Json(r.horizon_unit) : Json(nullptr)},
                   {"n_min", has_schema ? Json(r.n_min) : Json(nullptr)},
                   {"precision_bits", cfg.precision_bits},
                   {"result", o.result},
                   {"verdict", o.verdict},
                   {"exit_code", o.code}};
            out << j.dump(2) << "\n";
        } else {
            out << "command: " << cfg.command << "\n";
            if (has_schema) {
                out << "schema: " << detail::schema_line(*r.schema) << "\n";
                out << "horizon: " << r.horizon.n_max << " " << r.horizon_unit << "   n_min: " << r.n_min
                    << "   precision: " << cfg.precision_bits << " bits\n";
            }
            out << o.table;
            out << "verdict: " << o.verdict << "\n";
        }
        return o.code;
    } catch (const PrecisionError& e) {
        err << "precision exhausted: " << e.what() << "\n";
        return kPrecisionExhausted;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kInputError;
    }
}

}  // namespace baire

#endif
