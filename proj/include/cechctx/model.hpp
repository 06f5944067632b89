#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <vector>

#include "cechctx/errors.hpp"
#include "cechctx/scenario.hpp"

namespace cechctx {

using Rational = mpq_class;

/// A probability table over E(domain), indexed by section_index.
struct Distribution {
    MeasurementSet domain;
    std::size_t num_outcomes = 2;
    std::vector<Rational> probabilities;

    const Rational& operator[](const Section& s) const { return probabilities.at(section_index(s, num_outcomes)); }

    friend bool operator==(const Distribution&, const Distribution&) = default;
};

/// d|U(s) = Σ_{t : t|U = s} d(t). Throws DomainError unless U ⊆ domain(d).
Distribution marginalize(const Distribution& d, MeasurementSet target);

struct SignallingViolation {
    ContextIndex first = 0;
    ContextIndex second = 0;
    Section section;  // on the intersection of the two contexts
    Rational first_marginal;
    Rational second_marginal;
};

/// Sections present in the restricted support of one context but not the other.
struct SupportViolation {
    ContextIndex first = 0;
    ContextIndex second = 0;
    Section section;
    bool present_in_first = false;
};

class SupportModel;

class EmpiricalModel {
public:
    /// `tables[i][k]` is the probability of section_at(C_i, k). Throws
    /// ValidationError on wrong table size, negative entries, or a sum ≠ 1.
    EmpiricalModel(Scenario scenario, std::vector<std::vector<Rational>> tables);

    const Scenario& scenario() const { return scenario_; }
    Distribution table(ContextIndex i) const;

private:
    Scenario scenario_;
    std::vector<std::vector<Rational>> tables_;
};

/// Empty iff every pair of overlapping contexts has equal marginals on the overlap.
std::vector<SignallingViolation> check_no_signalling(const EmpiricalModel& model);

/// Raised by support_of; problems() holds one readable line per violation.
class SignallingError : public ValidationError {
public:
    SignallingError(const Scenario& scenario, std::vector<SignallingViolation> v);
    const std::vector<SignallingViolation>& violations() const { return violations_; }

private:
    std::vector<SignallingViolation> violations_;
};

/// Possibilistic model: per context, the set of possible joint outcomes.
class SupportModel {
public:
    /// `members[i][k]` flags section_at(C_i, k). Every context needs a nonempty support.
    SupportModel(Scenario scenario, std::vector<std::vector<bool>> members);
    SupportModel(Scenario scenario, const std::vector<std::vector<Section>>& sections);

    const Scenario& scenario() const { return scenario_; }

    bool contains(ContextIndex i, const Section& s) const;
    /// supp(C_i), canonically sorted.
    const std::vector<Section>& support(ContextIndex i) const { return sections_.at(i); }
    const std::vector<bool>& membership(ContextIndex i) const { return members_.at(i); }
    std::size_t total_size() const;

    /// {s|U : s ∈ supp(C_i)}, sorted and duplicate-free. U must be ⊆ C_i.
    std::vector<Section> restricted_support(ContextIndex i, MeasurementSet target) const;

    /// Pairwise restriction-consistency failures (possibilistic signalling).
    std::vector<SupportViolation> consistency_violations() const;
    bool is_consistent() const { return consistency_violations().empty(); }

    friend bool operator==(const SupportModel& a, const SupportModel& b) {
        return a.scenario_ == b.scenario_ && a.members_ == b.members_;
    }

private:
    Scenario scenario_;
    std::vector<std::vector<bool>> members_;
    std::vector<std::vector<Section>> sections_;
};

/// S_e. Throws SignallingError when the model is signalling.
SupportModel support_of(const EmpiricalModel& model);

/// Kochen-Specker support: per context, the sections with exactly one outcome 1.
/// Requires the outcome set to be {0,1}.
SupportModel ks_support(const Scenario& scenario);

/// Per context, the sections whose number of 1s has parity `odd[i]`.
SupportModel parity_support(const Scenario& scenario, const std::vector<bool>& odd);

}  // namespace cechctx
