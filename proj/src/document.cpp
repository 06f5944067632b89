#include "cechctx/document.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <set>

#include "cechctx/errors.hpp"
#include "cechctx/linalg.hpp"

namespace cechctx {

using nlohmann::json;

std::vector<std::string> split_tuple(std::string_view tuple) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (true) {
        auto comma = tuple.find(',', start);
        out.emplace_back(tuple.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start));
        if (comma == std::string_view::npos) break;
        start = comma + 1;
    }
    return out;
}

namespace {

class SchemaChecker {
public:
    std::vector<std::string> problems;

    void fail(const std::string& path, const std::string& msg) { problems.push_back(path + ": " + msg); }

    std::optional<std::string> label(const json& j, const std::string& path, bool allow_integer) {
        if (j.is_string()) return j.get<std::string>();
        if (allow_integer && j.is_number_integer()) return std::to_string(j.get<long long>());
        fail(path, allow_integer ? "expected a string or an integer" : "expected a string");
        return std::nullopt;
    }

    std::vector<std::string> labels(const json& j, const std::string& path, bool allow_integer) {
        std::vector<std::string> out;
        if (!j.is_array()) {
            fail(path, "expected an array");
            return out;
        }
        for (std::size_t i = 0; i < j.size(); ++i) {
            if (auto l = label(j[i], path + "[" + std::to_string(i) + "]", allow_integer)) out.push_back(*l);
        }
        return out;
    }

    std::optional<std::string> tuple(const json& j, const std::string& path) {
        if (j.is_string()) return j.get<std::string>();
        if (j.is_array()) {
            auto parts = labels(j, path, true);
            if (parts.size() != j.size()) return std::nullopt;
            std::string out;
            for (std::size_t k = 0; k < parts.size(); ++k) out += (k ? "," : "") + parts[k];
            return out;
        }
        fail(path, "expected an outcome tuple (\"0,1\" or [0, 1])");
        return std::nullopt;
    }
};

Rational parse_rational(const std::string& text) {
    auto slash = text.find('/');
    auto digits = [](std::string_view s) {
        return !s.empty() && std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; });
    };
    std::string_view num = std::string_view(text).substr(0, slash);
    std::string_view den = slash == std::string::npos ? std::string_view("1") : std::string_view(text).substr(slash + 1);
    if (!digits(num) || !digits(den)) throw DomainError("'" + text + "' is not a nonnegative rational of the form p/q");
    Integer d(std::string(den), 10);
    if (sgn(d) == 0) throw DomainError("'" + text + "' has a zero denominator");
    Rational q(Integer(std::string(num), 10), d);
    q.canonicalize();
    return q;
}

Scenario build_scenario(const ScenarioDocument& doc) { return Scenario(doc.measurements, doc.outcomes, doc.contexts); }

std::vector<std::vector<MeasurementId>> declared_order(const Scenario& sc, const ScenarioDocument& doc) {
    std::vector<std::vector<MeasurementId>> out;
    for (const auto& ctx : doc.contexts) {
        std::vector<MeasurementId> ids;
        for (const auto& l : ctx) ids.push_back(sc.measurement_id(l));
        out.push_back(std::move(ids));
    }
    return out;
}

Section to_section(const Scenario& sc, const std::vector<MeasurementId>& order, std::string_view tuple) {
    auto parts = split_tuple(tuple);
    if (parts.size() != order.size()) {
        throw DomainError("tuple '" + std::string(tuple) + "' has " + std::to_string(parts.size()) + " entries, context has " +
                          std::to_string(order.size()) + " measurements");
    }
    Section s{MeasurementSet::of(order), std::vector<Outcome>(order.size())};
    for (std::size_t k = 0; k < order.size(); ++k) s.values[s.domain.rank(order[k])] = sc.outcome_id(parts[k]);
    return s;
}

std::vector<std::vector<Rational>> build_tables(const Scenario& sc, const ScenarioDocument& doc,
                                                const std::vector<std::vector<MeasurementId>>& order) {
    std::vector<std::string> problems;
    std::vector<std::vector<Rational>> tables;
    const auto& dist = *doc.distribution;
    for (std::size_t i = 0; i < dist.size(); ++i) {
        const auto path = "$.model.distribution[" + std::to_string(i) + "]";
        std::vector<Rational> table(section_count(sc.num_outcomes(), sc.context(i).members));
        for (const auto& [key, value] : dist[i]) {
            try {
                table[section_index(to_section(sc, order[i], key), sc.num_outcomes())] = parse_rational(value);
            } catch (const DomainError& e) {
                problems.push_back(path + "[\"" + key + "\"]: " + e.what());
            }
        }
        tables.push_back(std::move(table));
    }
    if (!problems.empty()) throw ValidationError(std::move(problems));
    return tables;
}

std::vector<std::vector<Section>> build_support_sections(const Scenario& sc, const ScenarioDocument& doc,
                                                         const std::vector<std::vector<MeasurementId>>& order) {
    std::vector<std::string> problems;
    std::vector<std::vector<Section>> out;
    const auto& supp = *doc.support;
    for (std::size_t i = 0; i < supp.size(); ++i) {
        std::set<Section> seen;
        for (std::size_t k = 0; k < supp[i].size(); ++k) {
            const auto path = "$.model.support[" + std::to_string(i) + "][" + std::to_string(k) + "]";
            try {
                auto s = to_section(sc, order[i], supp[i][k]);
                if (!seen.insert(s).second) problems.push_back(path + ": duplicate tuple '" + supp[i][k] + "'");
            } catch (const DomainError& e) {
                problems.push_back(path + ": " + e.what());
            }
        }
        out.emplace_back(seen.begin(), seen.end());
    }
    if (!problems.empty()) throw ValidationError(std::move(problems));
    return out;
}

struct Built {
    Scenario scenario;
    std::vector<std::vector<MeasurementId>> order;
    std::optional<EmpiricalModel> empirical;
    std::optional<SupportModel> support;
};

Built build(const ScenarioDocument& doc) {
    auto sc = build_scenario(doc);
    auto order = declared_order(sc, doc);
    const auto n = sc.num_contexts();
    if (doc.support && doc.support->size() != n) {
        throw ValidationError({"$.model.support: expected " + std::to_string(n) + " entries, one per context"});
    }
    if (doc.distribution && doc.distribution->size() != n) {
        throw ValidationError({"$.model.distribution: expected " + std::to_string(n) + " entries, one per context"});
    }
    Built out{sc, order, std::nullopt, std::nullopt};
    if (doc.distribution) {
        out.empirical.emplace(sc, build_tables(sc, doc, order));
    } else {
        out.support.emplace(sc, build_support_sections(sc, doc, order));
    }
    return out;
}

}  // namespace

ScenarioDocument parse_scenario(std::string_view text) {
    json j;
    try {
        j = json::parse(text.begin(), text.end());
    } catch (const json::parse_error& e) {
        throw ValidationError({std::string("$: malformed JSON: ") + e.what()});
    }
    SchemaChecker check;
    ScenarioDocument doc;
    if (!j.is_object()) throw ValidationError({"$: expected a JSON object"});
    for (const auto& key : {"measurements", "outcomes", "contexts", "model"}) {
        if (!j.contains(key)) check.fail("$", std::string("missing required key '") + key + "'");
    }
    for (const auto& [key, value] : j.items()) {
        static const std::set<std::string> known{"name", "measurements", "outcomes", "contexts", "model"};
        if (!known.contains(key)) check.fail("$", "unknown key '" + key + "'");
    }
    if (j.contains("name")) {
        if (auto n = check.label(j["name"], "$.name", false)) doc.name = *n;
    }
    if (j.contains("measurements")) doc.measurements = check.labels(j["measurements"], "$.measurements", false);
    if (j.contains("outcomes")) doc.outcomes = check.labels(j["outcomes"], "$.outcomes", true);
    if (j.contains("contexts")) {
        if (!j["contexts"].is_array()) {
            check.fail("$.contexts", "expected an array of arrays of measurement names");
        } else {
            for (std::size_t i = 0; i < j["contexts"].size(); ++i) {
                doc.contexts.push_back(check.labels(j["contexts"][i], "$.contexts[" + std::to_string(i) + "]", false));
            }
        }
    }
    if (j.contains("model")) {
        const auto& m = j["model"];
        const bool has_support = m.is_object() && m.contains("support");
        const bool has_dist = m.is_object() && m.contains("distribution");
        if (!m.is_object() || m.size() != 1 || has_support == has_dist) {
            check.fail("$.model", "expected an object with exactly one of 'support' or 'distribution'");
        } else if (has_support) {
            const auto& s = m["support"];
            doc.support.emplace();
            if (!s.is_array()) check.fail("$.model.support", "expected an array (one list of tuples per context)");
            for (std::size_t i = 0; s.is_array() && i < s.size(); ++i) {
                const auto path = "$.model.support[" + std::to_string(i) + "]";
                std::vector<std::string> tuples;
                if (!s[i].is_array()) check.fail(path, "expected an array of outcome tuples");
                for (std::size_t k = 0; s[i].is_array() && k < s[i].size(); ++k) {
                    if (auto t = check.tuple(s[i][k], path + "[" + std::to_string(k) + "]")) tuples.push_back(*t);
                }
                doc.support->push_back(std::move(tuples));
            }
        } else {
            const auto& d = m["distribution"];
            doc.distribution.emplace();
            if (!d.is_array()) check.fail("$.model.distribution", "expected an array (one table per context)");
            for (std::size_t i = 0; d.is_array() && i < d.size(); ++i) {
                const auto path = "$.model.distribution[" + std::to_string(i) + "]";
                std::map<std::string, std::string> table;
                if (!d[i].is_object()) check.fail(path, "expected an object mapping tuples to \"p/q\" strings");
                for (auto it = d[i].begin(); d[i].is_object() && it != d[i].end(); ++it) {
                    if (auto v = check.label(it.value(), path + "[\"" + it.key() + "\"]", false)) table.emplace(it.key(), *v);
                }
                doc.distribution->push_back(std::move(table));
            }
        }
    }
    if (!check.problems.empty()) throw ValidationError(std::move(check.problems));

    try {
        build(doc);
    } catch (const DomainError& e) {
        throw ValidationError({std::string("$: ") + e.what()});
    }
    return doc;
}

LoadedModel load_model(ScenarioDocument doc) {
    auto built = build(doc);
    SupportModel support = built.support ? std::move(*built.support) : support_of(*built.empirical);
    return LoadedModel{std::move(doc), std::move(built.scenario), std::move(built.empirical), std::move(support),
                       std::move(built.order)};
}

Section LoadedModel::section_from_tuple(ContextIndex i, std::string_view tuple) const {
    if (i >= declared_order.size()) throw DomainError("context index out of range");
    return to_section(scenario, declared_order[i], tuple);
}

std::string LoadedModel::tuple_of(ContextIndex i, const Section& s) const {
    std::string out;
    for (std::size_t k = 0; k < declared_order.at(i).size(); ++k) {
        out += (k ? "," : "") + scenario.outcomes().at(s.at(declared_order[i][k]));
    }
    return out;
}

std::string LoadedModel::context_label(ContextIndex i) const {
    std::string out = "(";
    for (std::size_t k = 0; k < declared_order.at(i).size(); ++k) {
        out += (k ? "," : "") + scenario.measurements().at(declared_order[i][k]);
    }
    return out + ")";
}

}  // namespace cechctx
