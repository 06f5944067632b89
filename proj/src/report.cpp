#include "cechctx/report.hpp"

#include <algorithm>
#include <sstream>

#include "cechctx/analysis.hpp"
#include "cechctx/errors.hpp"
#include "cechctx/extendability.hpp"

namespace cechctx {

using nlohmann::json;

namespace {

std::string ring_title(const std::string& ring) { return ring == "z" ? "Z" : "Z/2"; }

std::string verdict_text(const std::string& verdict) {
    auto v = parse_verdict(verdict);
    return v ? std::string(describe(*v)) : verdict;
}

// Support sections of context i, ordered by their declared-order tuples.
std::vector<Section> declared_sorted(const LoadedModel& m, ContextIndex i) {
    auto secs = m.support.support(i);
    const auto& order = m.declared_order[i];
    auto key = [&](const Section& s) {
        std::vector<Outcome> k;
        for (auto id : order) k.push_back(s.at(id));
        return k;
    };
    std::sort(secs.begin(), secs.end(), [&](const Section& a, const Section& b) { return key(a) < key(b); });
    return secs;
}

std::string global_tuple(const Scenario& sc, const Section& g) { return sc.format_tuple(g); }

}  // namespace

ObstructionEntry make_obstruction_entry(const LoadedModel& m, const ObstructionResult& res, bool extendable,
                                        bool with_evidence) {
    ObstructionEntry e;
    e.context = res.base_context;
    e.section = m.tuple_of(res.base_context, res.base_section);
    e.vanishes = res.vanishes;
    e.extendable = extendable;
    e.variables = res.system.variables.size();
    e.reduced_variables = res.system.reduced_variables;
    e.equations = res.system.matrix.rows();
    if (with_evidence && res.vanishes) {
        std::vector<std::map<std::string, std::string>> family;
        for (ContextIndex j = 0; j < res.witness.size(); ++j) {
            std::map<std::string, std::string> terms;
            for (const auto& [u, c] : res.witness[j].terms()) terms.emplace(m.tuple_of(j, u), c.get_str());
            family.push_back(std::move(terms));
        }
        e.witness = std::move(family);
    }
    if (with_evidence && res.certificate) {
        std::vector<std::string> mult;
        for (const auto& q : res.certificate->multipliers) mult.push_back(q.get_str());
        e.certificate = std::move(mult);
        e.certificate_reason = res.certificate->reason;
    }
    return e;
}

Report build_report(const LoadedModel& m, const ReportOptions& options) {
    const auto& sc = m.scenario;
    Report r;
    r.name = m.document.name;
    r.measurements = m.document.measurements;
    r.outcomes = m.document.outcomes;
    r.contexts = m.document.contexts;
    r.input_kind = m.empirical ? "distribution" : "support";
    r.warnings = sc.warnings();
    r.no_signalling = true;
    for (ContextIndex i = 0; i < sc.num_contexts(); ++i) {
        std::vector<std::string> tuples;
        for (const auto& s : declared_sorted(m, i)) tuples.push_back(m.tuple_of(i, s));
        r.support.push_back(std::move(tuples));
    }

    auto classification = classify(m.support);
    r.verdict = std::string(to_string(classification.verdict));
    for (const auto& g : classification.global_sections) r.global_sections.push_back(global_tuple(sc, g));

    auto gcd = gcd_condition(sc);
    r.degrees = gcd.degrees;
    r.gcd = gcd.gcd;
    r.cover_size = gcd.cover_size;
    r.gcd_holds = gcd.holds;
    r.connected = is_connected(sc);
    try {
        r.ks_support = is_ks_support(m.support);
    } catch (const DomainError&) {
        r.ks_support = false;
    }
    if (r.ks_support && r.connected) r.ks_gcd_implication = ks_vanishing_implies_gcd_check(m.support);

    for (auto ring : options.rings) {
        auto results = all_obstructions(m.support, ring);
        auto fp = false_positives(m.support, classification, results, ring);
        RingReport rr;
        rr.ring = std::string(to_string(ring));
        for (ContextIndex i = 0; i < sc.num_contexts(); ++i) {
            for (const auto& s : declared_sorted(m, i)) {
                const auto& res = *std::find_if(results.begin(), results.end(), [&](const ObstructionResult& x) {
                    return x.base_context == i && x.base_section == s;
                });
                const auto& flag = *std::find_if(classification.witnesses.begin(), classification.witnesses.end(),
                                                 [&](const ExtendabilityFlag& f) { return f.context == i && f.section == s; });
                auto e = make_obstruction_entry(m, res, flag.extendable, options.witnesses);
                rr.vanishing += e.vanishes ? 1 : 0;
                rr.obstructions.push_back(std::move(e));
            }
        }
        for (const auto& f : fp.entries) rr.false_positives.push_back({f.context, m.tuple_of(f.context, f.section)});
        rr.strong_contextuality_false_positive = fp.strong_contextuality_false_positive;
        r.rings.push_back(std::move(rr));
    }
    return r;
}

// ---------------------------------------------------------------------------
// JSON

namespace {

template <typename T>
void put_optional(json& j, const char* key, const std::optional<T>& v) {
    if (v) j[key] = *v;
}

template <typename T>
void get_optional(const json& j, const char* key, std::optional<T>& v) {
    if (j.contains(key)) {
        v = j.at(key).get<T>();
    } else {
        v.reset();
    }
}

}  // namespace

void to_json(json& j, const ObstructionEntry& e) {
    j = json{{"context", e.context},       {"section", e.section},     {"vanishes", e.vanishes},
             {"extendable", e.extendable}, {"variables", e.variables}, {"reduced_variables", e.reduced_variables},
             {"equations", e.equations}};
    put_optional(j, "witness", e.witness);
    put_optional(j, "certificate", e.certificate);
    put_optional(j, "certificate_reason", e.certificate_reason);
}

void from_json(const json& j, ObstructionEntry& e) {
    j.at("context").get_to(e.context);
    j.at("section").get_to(e.section);
    j.at("vanishes").get_to(e.vanishes);
    j.at("extendable").get_to(e.extendable);
    j.at("variables").get_to(e.variables);
    j.at("reduced_variables").get_to(e.reduced_variables);
    j.at("equations").get_to(e.equations);
    get_optional(j, "witness", e.witness);
    get_optional(j, "certificate", e.certificate);
    get_optional(j, "certificate_reason", e.certificate_reason);
}

void to_json(json& j, const SectionRef& s) { j = json{{"context", s.context}, {"section", s.section}}; }

void from_json(const json& j, SectionRef& s) {
    j.at("context").get_to(s.context);
    j.at("section").get_to(s.section);
}

void to_json(json& j, const RingReport& r) {
    j = json{{"ring", r.ring},
             {"obstructions", r.obstructions},
             {"vanishing", r.vanishing},
             {"false_positives", r.false_positives},
             {"strong_contextuality_false_positive", r.strong_contextuality_false_positive}};
}

void from_json(const json& j, RingReport& r) {
    j.at("ring").get_to(r.ring);
    j.at("obstructions").get_to(r.obstructions);
    j.at("vanishing").get_to(r.vanishing);
    j.at("false_positives").get_to(r.false_positives);
    j.at("strong_contextuality_false_positive").get_to(r.strong_contextuality_false_positive);
}

void to_json(json& j, const Report& r) {
    j = json{{"name", r.name},
             {"scenario", {{"measurements", r.measurements}, {"outcomes", r.outcomes}, {"contexts", r.contexts}}},
             {"input_kind", r.input_kind},
             {"warnings", r.warnings},
             {"no_signalling", r.no_signalling},
             {"support", r.support},
             {"classification", {{"verdict", r.verdict}, {"global_sections", r.global_sections}}},
             {"gcd", {{"degrees", r.degrees}, {"gcd", r.gcd}, {"cover_size", r.cover_size}, {"holds", r.gcd_holds}}},
             {"connected", r.connected},
             {"ks_support", r.ks_support},
             {"rings", r.rings}};
    put_optional(j, "ks_gcd_implication", r.ks_gcd_implication);
}

void from_json(const json& j, Report& r) {
    j.at("name").get_to(r.name);
    const auto& sc = j.at("scenario");
    sc.at("measurements").get_to(r.measurements);
    sc.at("outcomes").get_to(r.outcomes);
    sc.at("contexts").get_to(r.contexts);
    j.at("input_kind").get_to(r.input_kind);
    j.at("warnings").get_to(r.warnings);
    j.at("no_signalling").get_to(r.no_signalling);
    j.at("support").get_to(r.support);
    j.at("classification").at("verdict").get_to(r.verdict);
    j.at("classification").at("global_sections").get_to(r.global_sections);
    const auto& g = j.at("gcd");
    g.at("degrees").get_to(r.degrees);
    g.at("gcd").get_to(r.gcd);
    g.at("cover_size").get_to(r.cover_size);
    g.at("holds").get_to(r.gcd_holds);
    j.at("connected").get_to(r.connected);
    j.at("ks_support").get_to(r.ks_support);
    get_optional(j, "ks_gcd_implication", r.ks_gcd_implication);
    j.at("rings").get_to(r.rings);
}

// ---------------------------------------------------------------------------
// Human-readable rendering

namespace {

std::string context_label(const std::vector<std::vector<std::string>>& contexts, std::size_t i) {
    std::string out = "(";
    for (std::size_t k = 0; k < contexts.at(i).size(); ++k) out += (k ? "," : "") + contexts[i][k];
    return out + ")";
}

bool short_outcomes(const Report& r) {
    return std::all_of(r.outcomes.begin(), r.outcomes.end(), [](const std::string& o) { return o.size() == 1; });
}

std::string column_label(const Report& r, const std::string& tuple) {
    if (short_outcomes(r)) {
        std::string out;
        for (const auto& p : split_tuple(tuple)) out += p;
        return out;
    }
    return "(" + tuple + ")";
}

std::vector<std::string> all_tuples(const Report& r, std::size_t arity) {
    std::vector<std::string> out{""};
    for (std::size_t k = 0; k < arity; ++k) {
        std::vector<std::string> next;
        for (const auto& prefix : out) {
            for (const auto& o : r.outcomes) next.push_back(prefix.empty() && k == 0 ? o : prefix + "," + o);
        }
        out = std::move(next);
    }
    return out;
}

std::string pad(const std::string& s, std::size_t width) {
    return s.size() >= width ? s : s + std::string(width - s.size(), ' ');
}

std::string pad_left(const std::string& s, std::size_t width) {
    return s.size() >= width ? s : std::string(width - s.size(), ' ') + s;
}

}  // namespace

std::string render_support_table(const Report& r) {
    std::ostringstream out;
    std::size_t label_width = 0;
    for (std::size_t i = 0; i < r.contexts.size(); ++i) label_width = std::max(label_width, context_label(r.contexts, i).size());
    const bool uniform = std::all_of(r.contexts.begin(), r.contexts.end(),
                                     [&](const auto& c) { return c.size() == r.contexts.front().size(); });
    if (!uniform || r.contexts.empty()) {
        for (std::size_t i = 0; i < r.contexts.size(); ++i) {
            out << "  " << pad(context_label(r.contexts, i), label_width) << " ";
            for (std::size_t k = 0; k < r.support[i].size(); ++k) out << (k ? " " : "") << column_label(r, r.support[i][k]);
            out << "\n";
        }
        return out.str();
    }
    auto columns = all_tuples(r, r.contexts.front().size());
    std::size_t cell = 0;
    for (const auto& c : columns) cell = std::max(cell, column_label(r, c).size());
    cell += 1;
    out << "  " << std::string(label_width, ' ') << " |";
    for (const auto& c : columns) out << pad_left(column_label(r, c), cell);
    out << "\n  " << std::string(label_width, '-') << "-+" << std::string(cell * columns.size(), '-') << "\n";
    for (std::size_t i = 0; i < r.contexts.size(); ++i) {
        out << "  " << pad(context_label(r.contexts, i), label_width) << " |";
        for (const auto& c : columns) {
            bool in = std::find(r.support[i].begin(), r.support[i].end(), c) != r.support[i].end();
            out << pad_left(in ? "1" : "0", cell);
        }
        out << "\n";
    }
    return out.str();
}

std::string render_obstruction_entry(const std::vector<std::vector<std::string>>& contexts, const ObstructionEntry& e) {
    std::ostringstream out;
    out << "  [" << e.context << "] " << context_label(contexts, e.context) << " " << e.section << ": "
        << (e.vanishes ? "vanishes" : "non-vanishing") << (e.extendable ? ", extendable" : ", not extendable");
    if (e.vanishes && !e.extendable) out << "  <- false positive";
    out << "\n";
    if (e.witness) {
        for (std::size_t j = 0; j < e.witness->size(); ++j) {
            out << "      r" << j << " on " << context_label(contexts, j) << " =";
            if ((*e.witness)[j].empty()) out << " 0";
            bool first = true;
            for (const auto& [tuple, coef] : (*e.witness)[j]) {
                const bool negative = !coef.empty() && coef.front() == '-';
                const std::string magnitude = negative ? coef.substr(1) : coef;
                if (first) {
                    out << " " << (negative ? "-" : "") << magnitude;
                } else {
                    out << (negative ? " - " : " + ") << magnitude;
                }
                out << "*(" << tuple << ")";
                first = false;
            }
            out << "\n";
        }
    }
    if (e.certificate_reason) out << "      certificate: " << *e.certificate_reason << "\n";
    return out.str();
}

std::string render_ring_report(const Report& r, const RingReport& rr) {
    std::ostringstream out;
    const auto total = rr.obstructions.size();
    out << "Obstructions over " << ring_title(rr.ring) << ": " << total - rr.vanishing << "/" << total
        << " support sections non-vanishing, " << rr.vanishing << " vanishing\n";
    for (const auto& e : rr.obstructions) out << render_obstruction_entry(r.contexts, e);
    out << "False positives over " << ring_title(rr.ring) << ": " << rr.false_positives.size();
    for (const auto& f : rr.false_positives) out << "  " << context_label(r.contexts, f.context) << " " << f.section;
    out << "\n";
    if (rr.strong_contextuality_false_positive) {
        out << "  strongly contextual, yet some obstruction vanishes (strong-contextuality false positive)\n";
    }
    return out.str();
}

std::string emit_report(const Report& r, bool as_json) {
    if (as_json) return json(r).dump(2) + "\n";

    std::ostringstream out;
    out << "Scenario " << (r.name.empty() ? "(unnamed)" : r.name) << ": " << r.measurements.size() << " measurements, "
        << r.outcomes.size() << " outcomes, " << r.contexts.size() << " contexts (" << r.input_kind << " input)\n";
    for (const auto& w : r.warnings) out << "  warning: " << w << "\n";
    out << "\nSupport:\n" << render_support_table(r);
    out << "\nNo-signalling: " << (r.no_signalling ? "holds" : "violated") << "\n";
    out << "Connected: " << (r.connected ? "yes" : "no") << "\n";
    out << "Classification: " << verdict_text(r.verdict) << "; " << r.global_sections.size() << " global sections";
    if (!r.global_sections.empty()) {
        out << " over (";
        for (std::size_t m = 0; m < r.measurements.size(); ++m) out << (m ? "," : "") << r.measurements[m];
        out << ")";
    }
    out << "\n";
    const std::size_t shown = std::min<std::size_t>(r.global_sections.size(), 16);
    for (std::size_t k = 0; k < shown; ++k) out << "  " << r.global_sections[k] << "\n";
    if (shown < r.global_sections.size()) out << "  ... " << r.global_sections.size() - shown << " more\n";

    out << "GCD condition: degrees";
    for (std::size_t m = 0; m < r.degrees.size(); ++m) out << " " << r.measurements[m] << ":" << r.degrees[m];
    out << "; gcd " << r.gcd << ", |U| = " << r.cover_size << ", " << (r.gcd_holds ? "holds" : "fails") << "\n";
    if (r.ks_gcd_implication) {
        out << "Connected KS check (witness sums = 1, vanishing => GCD): "
            << (*r.ks_gcd_implication ? "confirmed" : "FAILED") << "\n";
    }

    for (const auto& rr : r.rings) out << "\n" << render_ring_report(r, rr);
    return out.str();
}

}  // namespace cechctx
