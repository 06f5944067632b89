#include "cechctx/extendability.hpp"

#include <algorithm>
#include <optional>

#include "cechctx/errors.hpp"

namespace cechctx {

std::string_view to_string(Verdict v) {
    switch (v) {
        case Verdict::non_contextual_possibilistic: return "non_contextual_possibilistic";
        case Verdict::contextual: return "contextual";
        case Verdict::strongly_contextual: return "strongly_contextual";
    }
    return "unknown";
}

std::string_view describe(Verdict v) {
    switch (v) {
        case Verdict::non_contextual_possibilistic: return "possibilistically non-contextual";
        case Verdict::contextual: return "possibilistically contextual";
        case Verdict::strongly_contextual: return "strongly contextual";
    }
    return "unknown";
}

std::optional<Verdict> parse_verdict(std::string_view s) {
    for (auto v : {Verdict::non_contextual_possibilistic, Verdict::contextual, Verdict::strongly_contextual}) {
        if (to_string(v) == s) return v;
    }
    return std::nullopt;
}

namespace {

std::size_t context_index_of(const std::vector<Outcome>& assignment, MeasurementSet members, std::size_t num_outcomes) {
    std::size_t idx = 0;
    for (auto m : members.members()) idx = idx * num_outcomes + assignment[m];
    return idx;
}

class Backtracker {
public:
    Backtracker(const SupportModel& model, std::vector<std::optional<Outcome>> pins)
        : model_(model), sc_(model.scenario()), pins_(std::move(pins)), assignment_(sc_.num_measurements(), 0),
          closing_(sc_.num_measurements()) {
        for (const auto& c : sc_.contexts()) closing_[c.members.members().back()].push_back(c.index);
    }

    std::vector<GlobalSection> run(bool first_only) {
        first_only_ = first_only;
        descend(0);
        return std::move(found_);
    }

private:
    bool descend(MeasurementId m) {
        if (m == sc_.num_measurements()) {
            found_.push_back(GlobalSection{sc_.all_measurements(), assignment_});
            return first_only_;
        }
        for (Outcome o = 0; o < sc_.num_outcomes(); ++o) {
            if (pins_[m] && *pins_[m] != o) continue;
            assignment_[m] = o;
            bool ok = true;
            for (auto ci : closing_[m]) {
                const auto members = sc_.context(ci).members;
                if (!model_.membership(ci)[context_index_of(assignment_, members, sc_.num_outcomes())]) {
                    ok = false;
                    break;
                }
            }
            if (ok && descend(m + 1)) return true;
        }
        return false;
    }

    const SupportModel& model_;
    const Scenario& sc_;
    std::vector<std::optional<Outcome>> pins_;
    std::vector<Outcome> assignment_;
    std::vector<std::vector<ContextIndex>> closing_;
    std::vector<GlobalSection> found_;
    bool first_only_ = false;
};

}  // namespace

std::vector<GlobalSection> global_sections(const SupportModel& model) {
    Backtracker bt(model, std::vector<std::optional<Outcome>>(model.scenario().num_measurements()));
    return bt.run(false);
}

std::vector<GlobalSection> global_sections_exhaustive(const SupportModel& model) {
    const auto& sc = model.scenario();
    const auto all = sc.all_measurements();
    const auto total = section_count(sc.num_outcomes(), all);
    std::vector<GlobalSection> out;
    for (std::size_t k = 0; k < total; ++k) {
        auto g = section_at(all, k, sc.num_outcomes());
        bool ok = std::all_of(sc.contexts().begin(), sc.contexts().end(), [&](const Context& c) {
            return model.contains(c.index, restrict_section(g, c.members));
        });
        if (ok) out.push_back(std::move(g));
    }
    return out;
}

bool is_extendable_at(const SupportModel& model, ContextIndex c, const Section& t) {
    if (c >= model.scenario().num_contexts() || !model.contains(c, t)) {
        throw DomainError("section is not in the support of the given context");
    }
    std::vector<std::optional<Outcome>> pins(model.scenario().num_measurements());
    for (auto m : t.domain.members()) pins[m] = t.at(m);
    Backtracker bt(model, std::move(pins));
    return !bt.run(true).empty();
}

Classification classify(const SupportModel& model) {
    Classification out;
    out.global_sections = global_sections(model);
    const auto& sc = model.scenario();
    std::size_t extendable = 0;
    for (const auto& c : sc.contexts()) {
        std::vector<Section> reached;
        for (const auto& g : out.global_sections) reached.push_back(restrict_section(g, c.members));
        std::sort(reached.begin(), reached.end());
        for (const auto& s : model.support(c.index)) {
            bool flag = std::binary_search(reached.begin(), reached.end(), s);
            extendable += flag ? 1 : 0;
            out.witnesses.push_back({c.index, s, flag});
        }
    }
    if (extendable == out.witnesses.size()) {
        out.verdict = Verdict::non_contextual_possibilistic;
    } else if (extendable == 0) {
        out.verdict = Verdict::strongly_contextual;
    } else {
        out.verdict = Verdict::contextual;
    }
    return out;
}

}  // namespace cechctx
