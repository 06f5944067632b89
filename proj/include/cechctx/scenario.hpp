#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "cechctx/measurement_set.hpp"

namespace cechctx {

using Outcome = std::uint32_t;
using ContextIndex = std::size_t;

/// An assignment of one outcome to each measurement of `domain`. `values[k]`
/// is the outcome of the k-th member of `domain` in global measurement order.
struct Section {
    MeasurementSet domain;
    std::vector<Outcome> values;

    Outcome at(MeasurementId m) const;

    friend bool operator==(const Section&, const Section&) = default;
    friend auto operator<=>(const Section& a, const Section& b) {
        if (auto c = a.domain <=> b.domain; c != 0) return c;
        return a.values <=> b.values;
    }
};

struct Context {
    ContextIndex index = 0;
    MeasurementSet members;
};

/// A q-simplex of the nerve: an ordered list of q+1 distinct cover indices
/// whose contexts have nonempty common intersection `carrier`.
struct Simplex {
    std::vector<ContextIndex> vertices;
    MeasurementSet carrier;

    std::size_t dimension() const { return vertices.size() - 1; }

    friend bool operator==(const Simplex&, const Simplex&) = default;
};

class Scenario {
public:
    /// Throws ValidationError listing every problem (duplicate labels, fewer
    /// than two outcomes, empty or duplicate contexts, cover not covering X).
    Scenario(std::vector<std::string> measurements, std::vector<std::string> outcomes,
             std::vector<std::vector<std::string>> contexts);

    Scenario(std::vector<std::string> measurements, std::vector<std::string> outcomes,
             std::vector<MeasurementSet> contexts);

    const std::vector<std::string>& measurements() const { return measurements_; }
    const std::vector<std::string>& outcomes() const { return outcomes_; }
    const std::vector<Context>& contexts() const { return contexts_; }
    const Context& context(ContextIndex i) const { return contexts_.at(i); }

    std::size_t num_measurements() const { return measurements_.size(); }
    std::size_t num_outcomes() const { return outcomes_.size(); }
    std::size_t num_contexts() const { return contexts_.size(); }
    MeasurementSet all_measurements() const { return MeasurementSet::first_n(measurements_.size()); }

    MeasurementId measurement_id(const std::string& label) const;
    Outcome outcome_id(const std::string& label) const;

    /// Non-fatal observations made at construction, e.g. a context contained in another.
    const std::vector<std::string>& warnings() const { return warnings_; }

    std::string format_set(MeasurementSet s) const;
    /// "A=0,B=1" style rendering, used in diagnostics.
    std::string format_section(const Section& s) const;
    /// Comma-joined outcome labels in domain order, e.g. "0,1".
    std::string format_tuple(const Section& s) const;

    friend bool operator==(const Scenario& a, const Scenario& b) {
        return a.measurements_ == b.measurements_ && a.outcomes_ == b.outcomes_ && a.context_sets() == b.context_sets();
    }

    std::vector<MeasurementSet> context_sets() const;

private:
    void validate_and_build(std::vector<MeasurementSet> sets, std::vector<std::string> problems);

    std::vector<std::string> measurements_;
    std::vector<std::string> outcomes_;
    std::vector<Context> contexts_;
    std::vector<std::string> warnings_;
};

/// s|target. Throws DomainError unless target ⊆ domain(s).
Section restrict_section(const Section& s, MeasurementSet target);

/// Number of sections in E(U) = O^U.
std::size_t section_count(std::size_t num_outcomes, MeasurementSet domain);

/// Mixed-radix position of `s` in the canonical enumeration of E(domain(s)).
std::size_t section_index(const Section& s, std::size_t num_outcomes);
Section section_at(MeasurementSet domain, std::size_t index, std::size_t num_outcomes);

/// All of E(U) in canonical lexicographic order (last measurement of U varies fastest).
std::vector<Section> enumerate_sections(std::size_t num_outcomes, MeasurementSet domain);
std::vector<Section> enumerate_sections(const Scenario& scenario, MeasurementSet domain);

/// Simplices of the nerve of the cover, grouped by dimension 0..max_q.
/// Vertex lists are ordered and repetition-free; each dimension is sorted lexicographically.
std::vector<std::vector<Simplex>> nerve(const Scenario& scenario, std::size_t max_q);

/// ∂_j(σ): drop vertex j. Requires dim(σ) ≥ 1 and j ≤ dim(σ).
Simplex face(const Scenario& scenario, const Simplex& sigma, std::size_t j);

/// True iff any two contexts are joined by a chain of pairwise-intersecting contexts.
bool is_connected(const Scenario& scenario);

}  // namespace cechctx
