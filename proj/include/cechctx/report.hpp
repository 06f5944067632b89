#pragma once

#include <nlohmann/json.hpp>

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "cechctx/cohomology.hpp"
#include "cechctx/document.hpp"
#include "cechctx/linalg.hpp"

namespace cechctx {

// Report types hold rendered values only (labels, tuples, rational strings)
// so that the JSON form round-trips exactly.

struct ObstructionEntry {
    std::size_t context = 0;
    std::string section;  // declared-order tuple
    bool vanishes = false;
    bool extendable = false;
    std::size_t variables = 0;
    std::size_t reduced_variables = 0;
    std::size_t equations = 0;
    /// Per context: tuple → coefficient. Present when witnesses were requested.
    std::optional<std::vector<std::map<std::string, std::string>>> witness;
    /// Row multipliers ("p/q") and reason. Present when certificates were requested.
    std::optional<std::vector<std::string>> certificate;
    std::optional<std::string> certificate_reason;

    friend bool operator==(const ObstructionEntry&, const ObstructionEntry&) = default;
};

struct SectionRef {
    std::size_t context = 0;
    std::string section;

    friend bool operator==(const SectionRef&, const SectionRef&) = default;
};

struct RingReport {
    std::string ring;  // "z" or "z2"
    std::vector<ObstructionEntry> obstructions;
    std::size_t vanishing = 0;
    std::vector<SectionRef> false_positives;
    bool strong_contextuality_false_positive = false;

    friend bool operator==(const RingReport&, const RingReport&) = default;
};

struct Report {
    std::string name;
    std::vector<std::string> measurements;
    std::vector<std::string> outcomes;
    std::vector<std::vector<std::string>> contexts;
    std::string input_kind;  // "distribution" or "support"
    std::vector<std::string> warnings;
    bool no_signalling = true;
    std::vector<std::vector<std::string>> support;  // declared-order tuples per context
    std::string verdict;
    std::vector<std::string> global_sections;  // outcome tuples over all measurements, in measurement order
    std::vector<std::size_t> degrees;
    std::size_t gcd = 0;
    std::size_t cover_size = 0;
    bool gcd_holds = false;
    bool connected = false;
    bool ks_support = false;
    /// Connected KS models only: witness sums all 1 and vanishing ⇒ GCD.
    std::optional<bool> ks_gcd_implication;
    std::vector<RingReport> rings;

    friend bool operator==(const Report&, const Report&) = default;
};

struct ReportOptions {
    std::vector<Ring> rings{Ring::mod2, Ring::integers};
    bool witnesses = false;
};

Report build_report(const LoadedModel& model, const ReportOptions& options = {});

/// Renders one obstruction result; witness and certificate only when `with_evidence`.
ObstructionEntry make_obstruction_entry(const LoadedModel& model, const ObstructionResult& result, bool extendable,
                                        bool with_evidence);

void to_json(nlohmann::json& j, const ObstructionEntry& e);
void from_json(const nlohmann::json& j, ObstructionEntry& e);
void to_json(nlohmann::json& j, const SectionRef& s);
void from_json(const nlohmann::json& j, SectionRef& s);
void to_json(nlohmann::json& j, const RingReport& r);
void from_json(const nlohmann::json& j, RingReport& r);
void to_json(nlohmann::json& j, const Report& r);
void from_json(const nlohmann::json& j, Report& r);

/// JSON (sorted keys, two-space indent) or the human-readable rendering.
std::string emit_report(const Report& r, bool as_json);

std::string render_obstruction_entry(const std::vector<std::vector<std::string>>& contexts, const ObstructionEntry& e);
std::string render_ring_report(const Report& r, const RingReport& rr);

/// The support as a 0/1 table with one column per joint outcome; falls back to
/// per-context tuple lists when contexts differ in size.
std::string render_support_table(const Report& r);

}  // namespace cechctx
