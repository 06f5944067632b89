#include "cechctx/analysis.hpp"

#include <algorithm>
#include <numeric>

#include "cechctx/errors.hpp"

namespace cechctx {

GcdReport gcd_condition(const Scenario& scenario) {
    GcdReport out;
    out.degrees.assign(scenario.num_measurements(), 0);
    for (const auto& c : scenario.contexts()) {
        for (auto m : c.members.members()) ++out.degrees[m];
    }
    out.gcd = std::accumulate(out.degrees.begin(), out.degrees.end(), std::size_t{0},
                              [](std::size_t a, std::size_t b) { return std::gcd(a, b); });
    out.cover_size = scenario.num_contexts();
    out.holds = out.gcd != 0 && out.cover_size % out.gcd == 0;
    return out;
}

bool is_ks_support(const SupportModel& model) {
    SupportModel reference = [&] {
        try {
            return ks_support(model.scenario());
        } catch (const DomainError&) {
            throw DomainError("Kochen-Specker analysis needs outcomes {0,1}");
        }
    }();
    return reference == model;
}

bool ks_vanishing_implies_gcd_check(const SupportModel& model) {
    if (!is_ks_support(model)) throw DomainError("model does not carry the Kochen-Specker support");
    if (!is_connected(model.scenario())) throw DomainError("model is not connected");

    bool any_vanishes = false;
    for (const auto& r : all_obstructions(model, Ring::integers)) {
        if (!r.vanishes) continue;
        any_vanishes = true;
        for (const auto& combination : r.witness) {
            if (coefficient_sum(combination) != 1) return false;
        }
    }
    return !any_vanishes || gcd_condition(model.scenario()).holds;
}

FalsePositiveReport false_positives(const SupportModel& model, const Classification& classification,
                                    const std::vector<ObstructionResult>& obstructions, Ring ring) {
    FalsePositiveReport out;
    out.ring = ring;
    out.strongly_contextual = classification.verdict == Verdict::strongly_contextual;
    bool any_vanishes = false;
    for (const auto& flag : classification.witnesses) {
        auto it = std::find_if(obstructions.begin(), obstructions.end(), [&](const ObstructionResult& r) {
            return r.base_context == flag.context && r.base_section == flag.section;
        });
        if (it == obstructions.end() || it->ring != ring) throw DomainError("obstruction results do not match the model");
        any_vanishes = any_vanishes || it->vanishes;
        if (!it->vanishes || flag.extendable) continue;
        // Re-check both sides before listing.
        if (is_extendable_at(model, flag.context, flag.section) ||
            !verify_witness(model, flag.context, flag.section, it->witness, ring)) {
            throw VerificationError("false-positive entry failed its independent re-check");
        }
        out.entries.push_back({flag.context, flag.section});
    }
    out.strong_contextuality_false_positive = out.strongly_contextual && any_vanishes;
    return out;
}

FalsePositiveReport false_positives(const SupportModel& model, Ring ring) {
    return false_positives(model, classify(model), all_obstructions(model, ring), ring);
}

}  // namespace cechctx
