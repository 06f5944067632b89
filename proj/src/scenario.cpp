#include "cechctx/scenario.hpp"

#include <algorithm>
#include <deque>
#include <numeric>
#include <set>

#include "cechctx/errors.hpp"

namespace cechctx {

ValidationError::ValidationError(std::vector<std::string> problems)
    : std::runtime_error(problems.empty() ? std::string("validation failed") : problems.front()),
      problems_(std::move(problems)) {}

Outcome Section::at(MeasurementId m) const {
    if (!domain.contains(m)) throw DomainError("measurement not in section domain");
    return values[domain.rank(m)];
}

namespace {

std::vector<std::string> duplicate_labels(const std::vector<std::string>& labels, const char* what) {
    std::vector<std::string> problems;
    std::set<std::string> seen;
    for (const auto& l : labels) {
        if (!seen.insert(l).second) problems.push_back(std::string("duplicate ") + what + " label '" + l + "'");
    }
    return problems;
}

}  // namespace

Scenario::Scenario(std::vector<std::string> measurements, std::vector<std::string> outcomes,
                   std::vector<std::vector<std::string>> contexts)
    : measurements_(std::move(measurements)), outcomes_(std::move(outcomes)) {
    std::vector<std::string> problems;
    std::vector<MeasurementSet> sets;
    for (std::size_t i = 0; i < contexts.size(); ++i) {
        MeasurementSet set;
        for (const auto& label : contexts[i]) {
            auto it = std::find(measurements_.begin(), measurements_.end(), label);
            if (it == measurements_.end()) {
                problems.push_back("context " + std::to_string(i) + " references unknown measurement '" + label + "'");
                continue;
            }
            auto id = static_cast<MeasurementId>(it - measurements_.begin());
            if (id >= kMaxMeasurements) continue;
            if (set.contains(id)) problems.push_back("context " + std::to_string(i) + " lists '" + label + "' twice");
            set.insert(id);
        }
        sets.push_back(set);
    }
    validate_and_build(std::move(sets), std::move(problems));
}

Scenario::Scenario(std::vector<std::string> measurements, std::vector<std::string> outcomes,
                   std::vector<MeasurementSet> contexts)
    : measurements_(std::move(measurements)), outcomes_(std::move(outcomes)) {
    validate_and_build(std::move(contexts), {});
}

void Scenario::validate_and_build(std::vector<MeasurementSet> sets, std::vector<std::string> problems) {
    if (measurements_.empty()) problems.emplace_back("measurement set is empty");
    if (measurements_.size() > kMaxMeasurements) {
        problems.push_back("at most " + std::to_string(kMaxMeasurements) + " measurements are supported");
    }
    if (outcomes_.size() < 2) problems.emplace_back("at least two outcomes are required");
    for (auto& p : duplicate_labels(measurements_, "measurement")) problems.push_back(std::move(p));
    for (auto& p : duplicate_labels(outcomes_, "outcome")) problems.push_back(std::move(p));
    if (sets.empty()) problems.emplace_back("cover has no contexts");

    MeasurementSet covered;
    for (std::size_t i = 0; i < sets.size(); ++i) {
        if (sets[i].empty()) problems.push_back("context " + std::to_string(i) + " is empty");
        if (!sets[i].is_subset_of(all_measurements())) {
            problems.push_back("context " + std::to_string(i) + " references an unknown measurement");
        }
        for (std::size_t j = 0; j < i; ++j) {
            if (sets[i] == sets[j] && !sets[i].empty()) {
                problems.push_back("context " + std::to_string(i) + " duplicates context " + std::to_string(j));
            }
        }
        covered = covered | sets[i];
    }
    if (measurements_.size() <= kMaxMeasurements) {
        for (auto m : (all_measurements() & MeasurementSet(~covered.bits())).members()) {
            problems.push_back("measurement '" + measurements_[m] + "' belongs to no context (cover must cover X)");
        }
    }
    if (!problems.empty()) throw ValidationError(std::move(problems));

    for (std::size_t i = 0; i < sets.size(); ++i) {
        contexts_.push_back(Context{i, sets[i]});
        for (std::size_t j = 0; j < sets.size(); ++j) {
            if (i != j && sets[i].is_subset_of(sets[j]) && sets[i] != sets[j]) {
                warnings_.push_back("context " + std::to_string(i) + " " + format_set(sets[i]) +
                                    " is contained in context " + std::to_string(j) + " " + format_set(sets[j]));
            }
        }
    }
}

std::vector<MeasurementSet> Scenario::context_sets() const {
    std::vector<MeasurementSet> out;
    out.reserve(contexts_.size());
    for (const auto& c : contexts_) out.push_back(c.members);
    return out;
}

MeasurementId Scenario::measurement_id(const std::string& label) const {
    auto it = std::find(measurements_.begin(), measurements_.end(), label);
    if (it == measurements_.end()) throw DomainError("unknown measurement '" + label + "'");
    return static_cast<MeasurementId>(it - measurements_.begin());
}

Outcome Scenario::outcome_id(const std::string& label) const {
    auto it = std::find(outcomes_.begin(), outcomes_.end(), label);
    if (it == outcomes_.end()) throw DomainError("unknown outcome '" + label + "'");
    return static_cast<Outcome>(it - outcomes_.begin());
}

std::string Scenario::format_set(MeasurementSet s) const {
    std::string out = "{";
    bool first = true;
    for (auto m : s.members()) {
        if (!first) out += ",";
        out += measurements_.at(m);
        first = false;
    }
    return out + "}";
}

std::string Scenario::format_section(const Section& s) const {
    std::string out;
    auto members = s.domain.members();
    for (std::size_t k = 0; k < members.size(); ++k) {
        if (k > 0) out += ",";
        out += measurements_.at(members[k]) + "=" + outcomes_.at(s.values[k]);
    }
    return out;
}

std::string Scenario::format_tuple(const Section& s) const {
    std::string out;
    for (std::size_t k = 0; k < s.values.size(); ++k) {
        if (k > 0) out += ",";
        out += outcomes_.at(s.values[k]);
    }
    return out;
}

Section restrict_section(const Section& s, MeasurementSet target) {
    if (!target.is_subset_of(s.domain)) throw DomainError("restriction target is not a subset of the section domain");
    Section out{target, {}};
    out.values.reserve(target.size());
    for (auto m : target.members()) out.values.push_back(s.values[s.domain.rank(m)]);
    return out;
}

std::size_t section_count(std::size_t num_outcomes, MeasurementSet domain) {
    std::size_t n = 1;
    for (std::size_t k = 0; k < domain.size(); ++k) n *= num_outcomes;
    return n;
}

std::size_t section_index(const Section& s, std::size_t num_outcomes) {
    std::size_t idx = 0;
    for (auto v : s.values) idx = idx * num_outcomes + v;
    return idx;
}

Section section_at(MeasurementSet domain, std::size_t index, std::size_t num_outcomes) {
    Section s{domain, std::vector<Outcome>(domain.size())};
    for (std::size_t k = s.values.size(); k-- > 0;) {
        s.values[k] = static_cast<Outcome>(index % num_outcomes);
        index /= num_outcomes;
    }
    return s;
}

std::vector<Section> enumerate_sections(std::size_t num_outcomes, MeasurementSet domain) {
    const auto n = section_count(num_outcomes, domain);
    std::vector<Section> out;
    out.reserve(n);
    for (std::size_t i = 0; i < n; ++i) out.push_back(section_at(domain, i, num_outcomes));
    return out;
}

std::vector<Section> enumerate_sections(const Scenario& scenario, MeasurementSet domain) {
    if (!domain.is_subset_of(scenario.all_measurements())) throw DomainError("subset is not contained in X");
    return enumerate_sections(scenario.num_outcomes(), domain);
}

std::vector<std::vector<Simplex>> nerve(const Scenario& scenario, std::size_t max_q) {
    const auto n = scenario.num_contexts();
    std::vector<std::vector<Simplex>> out(max_q + 1);
    for (ContextIndex i = 0; i < n; ++i) out[0].push_back(Simplex{{i}, scenario.context(i).members});
    for (std::size_t q = 1; q <= max_q; ++q) {
        // Extending each (q-1)-simplex by one new vertex keeps lexicographic order.
        for (const auto& tau : out[q - 1]) {
            for (ContextIndex v = 0; v < n; ++v) {
                if (std::find(tau.vertices.begin(), tau.vertices.end(), v) != tau.vertices.end()) continue;
                auto carrier = tau.carrier & scenario.context(v).members;
                if (carrier.empty()) continue;
                Simplex sigma{tau.vertices, carrier};
                sigma.vertices.push_back(v);
                out[q].push_back(std::move(sigma));
            }
        }
    }
    return out;
}

Simplex face(const Scenario& scenario, const Simplex& sigma, std::size_t j) {
    if (sigma.vertices.size() < 2) throw DomainError("face of a 0-simplex is undefined");
    if (j >= sigma.vertices.size()) throw DomainError("face index out of range");
    Simplex out;
    out.carrier = scenario.all_measurements();
    for (std::size_t k = 0; k < sigma.vertices.size(); ++k) {
        if (k == j) continue;
        out.vertices.push_back(sigma.vertices[k]);
        out.carrier = out.carrier & scenario.context(sigma.vertices[k]).members;
    }
    return out;
}

bool is_connected(const Scenario& scenario) {
    const auto n = scenario.num_contexts();
    if (n == 0) return true;
    std::vector<bool> seen(n, false);
    std::deque<ContextIndex> queue{0};
    seen[0] = true;
    std::size_t reached = 1;
    while (!queue.empty()) {
        auto i = queue.front();
        queue.pop_front();
        for (ContextIndex j = 0; j < n; ++j) {
            if (seen[j] || (scenario.context(i).members & scenario.context(j).members).empty()) continue;
            seen[j] = true;
            ++reached;
            queue.push_back(j);
        }
    }
    return reached == n;
}

}  // namespace cechctx
