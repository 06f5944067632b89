#pragma once

#include <optional>
#include <string_view>
#include <vector>

#include "cechctx/model.hpp"

namespace cechctx {

/// A section with domain X whose restriction to every context lies in that context's support.
using GlobalSection = Section;

enum class Verdict { non_contextual_possibilistic, contextual, strongly_contextual };

std::string_view to_string(Verdict v);
/// Human wording: "strongly contextual", "possibilistically contextual", ...
std::string_view describe(Verdict v);
std::optional<Verdict> parse_verdict(std::string_view s);

struct ExtendabilityFlag {
    ContextIndex context = 0;
    Section section;
    bool extendable = false;
};

struct Classification {
    Verdict verdict = Verdict::strongly_contextual;
    /// One entry per support section, contexts in cover order, sections canonical.
    std::vector<ExtendabilityFlag> witnesses;
    std::vector<GlobalSection> global_sections;
};

/// Every global section, found by backtracking over measurements in global order
/// with a context checked as soon as its last measurement is assigned. Sorted.
std::vector<GlobalSection> global_sections(const SupportModel& model);

/// Same set as global_sections, by scanning all of O^X. Reference implementation.
std::vector<GlobalSection> global_sections_exhaustive(const SupportModel& model);

/// True iff some global section restricts to `t` on context `c`.
/// Throws DomainError if `t` is not in supp(C_c).
bool is_extendable_at(const SupportModel& model, ContextIndex c, const Section& t);

Classification classify(const SupportModel& model);

}  // namespace cechctx
