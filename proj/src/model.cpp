#include "cechctx/model.hpp"

#include <algorithm>
#include <set>
#include <string>

#include "cechctx/errors.hpp"

namespace cechctx {

Distribution marginalize(const Distribution& d, MeasurementSet target) {
    if (!target.is_subset_of(d.domain)) throw DomainError("marginal target is not a subset of the table domain");
    Distribution out{target, d.num_outcomes, std::vector<Rational>(section_count(d.num_outcomes, target))};
    for (std::size_t k = 0; k < d.probabilities.size(); ++k) {
        if (sgn(d.probabilities[k]) == 0) continue;
        auto s = restrict_section(section_at(d.domain, k, d.num_outcomes), target);
        out.probabilities[section_index(s, d.num_outcomes)] += d.probabilities[k];
    }
    return out;
}

EmpiricalModel::EmpiricalModel(Scenario scenario, std::vector<std::vector<Rational>> tables)
    : scenario_(std::move(scenario)), tables_(std::move(tables)) {
    std::vector<std::string> problems;
    if (tables_.size() != scenario_.num_contexts()) {
        problems.push_back("expected " + std::to_string(scenario_.num_contexts()) + " tables, got " +
                           std::to_string(tables_.size()));
        throw ValidationError(std::move(problems));
    }
    for (std::size_t i = 0; i < tables_.size(); ++i) {
        const auto expected = section_count(scenario_.num_outcomes(), scenario_.context(i).members);
        if (tables_[i].size() != expected) {
            problems.push_back("context " + std::to_string(i) + ": table has " + std::to_string(tables_[i].size()) +
                               " entries, expected " + std::to_string(expected));
            continue;
        }
        Rational sum = 0;
        for (auto& p : tables_[i]) {
            p.canonicalize();
            if (sgn(p) < 0) problems.push_back("context " + std::to_string(i) + ": negative probability " + p.get_str());
            sum += p;
        }
        if (sum != 1) problems.push_back("context " + std::to_string(i) + ": probabilities sum to " + sum.get_str() + ", not 1");
    }
    if (!problems.empty()) throw ValidationError(std::move(problems));
}

Distribution EmpiricalModel::table(ContextIndex i) const {
    return Distribution{scenario_.context(i).members, scenario_.num_outcomes(), tables_.at(i)};
}

std::vector<SignallingViolation> check_no_signalling(const EmpiricalModel& model) {
    std::vector<SignallingViolation> out;
    const auto& sc = model.scenario();
    for (ContextIndex i = 0; i < sc.num_contexts(); ++i) {
        for (ContextIndex j = i + 1; j < sc.num_contexts(); ++j) {
            auto overlap = sc.context(i).members & sc.context(j).members;
            if (overlap.empty()) continue;
            auto left = marginalize(model.table(i), overlap);
            auto right = marginalize(model.table(j), overlap);
            for (std::size_t k = 0; k < left.probabilities.size(); ++k) {
                if (left.probabilities[k] != right.probabilities[k]) {
                    out.push_back({i, j, section_at(overlap, k, sc.num_outcomes()), left.probabilities[k],
                                   right.probabilities[k]});
                }
            }
        }
    }
    return out;
}

SupportModel::SupportModel(Scenario scenario, std::vector<std::vector<bool>> members)
    : scenario_(std::move(scenario)), members_(std::move(members)) {
    std::vector<std::string> problems;
    if (members_.size() != scenario_.num_contexts()) {
        throw ValidationError({"expected " + std::to_string(scenario_.num_contexts()) + " support tables, got " +
                               std::to_string(members_.size())});
    }
    for (std::size_t i = 0; i < members_.size(); ++i) {
        const auto domain = scenario_.context(i).members;
        const auto expected = section_count(scenario_.num_outcomes(), domain);
        if (members_[i].size() != expected) {
            problems.push_back("context " + std::to_string(i) + ": support table has wrong size");
            continue;
        }
        std::vector<Section> secs;
        for (std::size_t k = 0; k < expected; ++k) {
            if (members_[i][k]) secs.push_back(section_at(domain, k, scenario_.num_outcomes()));
        }
        if (secs.empty()) problems.push_back("context " + std::to_string(i) + " " + scenario_.format_set(domain) + " has an empty support");
        sections_.push_back(std::move(secs));
    }
    if (!problems.empty()) throw ValidationError(std::move(problems));
}

namespace {

std::vector<std::vector<bool>> membership_from_sections(const Scenario& scenario,
                                                        const std::vector<std::vector<Section>>& sections) {
    if (sections.size() != scenario.num_contexts()) {
        throw ValidationError({"expected " + std::to_string(scenario.num_contexts()) + " supports, got " +
                               std::to_string(sections.size())});
    }
    std::vector<std::vector<bool>> out;
    for (std::size_t i = 0; i < sections.size(); ++i) {
        const auto domain = scenario.context(i).members;
        std::vector<bool> row(section_count(scenario.num_outcomes(), domain), false);
        for (const auto& s : sections[i]) {
            if (s.domain != domain) throw DomainError("support section domain does not match its context");
            for (auto v : s.values) {
                if (v >= scenario.num_outcomes()) throw DomainError("support section uses an unknown outcome");
            }
            row[section_index(s, scenario.num_outcomes())] = true;
        }
        out.push_back(std::move(row));
    }
    return out;
}

}  // namespace

SupportModel::SupportModel(Scenario scenario, const std::vector<std::vector<Section>>& sections)
    : SupportModel(scenario, membership_from_sections(scenario, sections)) {}

bool SupportModel::contains(ContextIndex i, const Section& s) const {
    const auto& row = members_.at(i);
    if (s.domain != scenario_.context(i).members) return false;
    auto k = section_index(s, scenario_.num_outcomes());
    return k < row.size() && row[k];
}

std::size_t SupportModel::total_size() const {
    std::size_t n = 0;
    for (const auto& s : sections_) n += s.size();
    return n;
}

std::vector<Section> SupportModel::restricted_support(ContextIndex i, MeasurementSet target) const {
    std::set<Section> out;
    for (const auto& s : sections_.at(i)) out.insert(restrict_section(s, target));
    return {out.begin(), out.end()};
}

std::vector<SupportViolation> SupportModel::consistency_violations() const {
    std::vector<SupportViolation> out;
    for (ContextIndex i = 0; i < scenario_.num_contexts(); ++i) {
        for (ContextIndex j = i + 1; j < scenario_.num_contexts(); ++j) {
            auto overlap = scenario_.context(i).members & scenario_.context(j).members;
            if (overlap.empty()) continue;
            auto left = restricted_support(i, overlap);
            auto right = restricted_support(j, overlap);
            std::vector<Section> only_left, only_right;
            std::set_difference(left.begin(), left.end(), right.begin(), right.end(), std::back_inserter(only_left));
            std::set_difference(right.begin(), right.end(), left.begin(), left.end(), std::back_inserter(only_right));
            for (auto& s : only_left) out.push_back({i, j, std::move(s), true});
            for (auto& s : only_right) out.push_back({i, j, std::move(s), false});
        }
    }
    return out;
}

namespace {

std::vector<std::string> describe(const Scenario& sc, const std::vector<SignallingViolation>& violations) {
    std::vector<std::string> out;
    for (const auto& v : violations) {
        out.push_back("signalling between contexts " + std::to_string(v.first) + " and " + std::to_string(v.second) +
                      ": marginal of " + sc.format_section(v.section) + " is " + v.first_marginal.get_str() + " vs " +
                      v.second_marginal.get_str());
    }
    return out;
}

}  // namespace

SignallingError::SignallingError(const Scenario& scenario, std::vector<SignallingViolation> v)
    : ValidationError(describe(scenario, v)), violations_(std::move(v)) {}

SupportModel support_of(const EmpiricalModel& model) {
    if (auto v = check_no_signalling(model); !v.empty()) throw SignallingError(model.scenario(), std::move(v));
    const auto& sc = model.scenario();
    std::vector<std::vector<bool>> members;
    for (ContextIndex i = 0; i < sc.num_contexts(); ++i) {
        auto t = model.table(i);
        std::vector<bool> row(t.probabilities.size());
        for (std::size_t k = 0; k < row.size(); ++k) row[k] = sgn(t.probabilities[k]) > 0;
        members.push_back(std::move(row));
    }
    return SupportModel(sc, std::move(members));
}

namespace {

Outcome binary_one(const Scenario& scenario) {
    auto labels = scenario.outcomes();
    std::sort(labels.begin(), labels.end());
    if (labels != std::vector<std::string>{"0", "1"}) throw DomainError("outcome set must be {0,1}");
    return scenario.outcome_id("1");
}

template <typename Keep>
SupportModel filtered_support(const Scenario& scenario, Keep keep) {
    const auto one = binary_one(scenario);
    std::vector<std::vector<bool>> members;
    for (ContextIndex i = 0; i < scenario.num_contexts(); ++i) {
        const auto domain = scenario.context(i).members;
        std::vector<bool> row(section_count(2, domain));
        for (std::size_t k = 0; k < row.size(); ++k) {
            auto s = section_at(domain, k, 2);
            auto ones = static_cast<std::size_t>(std::count(s.values.begin(), s.values.end(), one));
            row[k] = keep(i, ones);
        }
        members.push_back(std::move(row));
    }
    return SupportModel(scenario, std::move(members));
}

}  // namespace

SupportModel ks_support(const Scenario& scenario) {
    return filtered_support(scenario, [](ContextIndex, std::size_t ones) { return ones == 1; });
}

SupportModel parity_support(const Scenario& scenario, const std::vector<bool>& odd) {
    if (odd.size() != scenario.num_contexts()) throw DomainError("one parity bit per context is required");
    return filtered_support(scenario, [&](ContextIndex i, std::size_t ones) { return (ones % 2 == 1) == odd[i]; });
}

}  // namespace cechctx
