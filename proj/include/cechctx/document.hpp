#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "cechctx/model.hpp"

namespace cechctx {

/// A scenario file as written. Outcome tuples are comma-joined outcome labels
/// listed in the order the context's members were declared in `contexts`.
struct ScenarioDocument {
    std::string name;
    std::vector<std::string> measurements;
    std::vector<std::string> outcomes;
    std::vector<std::vector<std::string>> contexts;
    /// Exactly one of `support` / `distribution` is set.
    std::optional<std::vector<std::vector<std::string>>> support;
    std::optional<std::vector<std::map<std::string, std::string>>> distribution;
};

/// Parses and schema-checks JSON text. Throws ValidationError whose problems
/// are prefixed with a JSON path, e.g. "$.model.distribution[2]: ...".
ScenarioDocument parse_scenario(std::string_view text);

/// A validated document turned into domain objects.
struct LoadedModel {
    ScenarioDocument document;
    Scenario scenario;
    std::optional<EmpiricalModel> empirical;
    SupportModel support;
    /// declared_order[i] lists the members of context i as written in the file.
    std::vector<std::vector<MeasurementId>> declared_order;

    /// Converts a declared-order tuple ("0,1") on context i to a section.
    Section section_from_tuple(ContextIndex i, std::string_view tuple) const;
    /// The declared-order tuple of a section of context i.
    std::string tuple_of(ContextIndex i, const Section& s) const;
    /// Declared member labels of context i, e.g. "(a,b')".
    std::string context_label(ContextIndex i) const;
};

/// Builds the scenario and model. Throws ValidationError for inconsistent
/// documents (unknown labels, wrong arity, sums ≠ 1) and SignallingError for
/// a signalling distribution.
LoadedModel load_model(ScenarioDocument doc);

std::vector<std::string> split_tuple(std::string_view tuple);

}  // namespace cechctx
