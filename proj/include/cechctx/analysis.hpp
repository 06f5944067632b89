#pragma once

#include <cstddef>
#include <vector>

#include "cechctx/cohomology.hpp"
#include "cechctx/extendability.hpp"

namespace cechctx {

/// Degree data of a cover. For Kochen-Specker supports a global section forces
/// gcd{d_m} to divide |U|, so `holds == false` implies strong contextuality.
struct GcdReport {
    std::vector<std::size_t> degrees;  // d_m = number of contexts containing m
    std::size_t gcd = 0;
    std::size_t cover_size = 0;
    bool holds = false;
};

GcdReport gcd_condition(const Scenario& scenario);

/// True iff every context's support is exactly {s_{C,m} : m ∈ C}.
bool is_ks_support(const SupportModel& model);

/// On a connected KS model: every integer witness family has coefficient sum 1
/// in every context, and if any obstruction vanishes over Z the GCD condition
/// holds. Returns whether both were confirmed. Throws DomainError when the
/// model is not KS-shaped or not connected.
bool ks_vanishing_implies_gcd_check(const SupportModel& model);

struct FalsePositive {
    ContextIndex context = 0;
    Section section;
};

struct FalsePositiveReport {
    Ring ring = Ring::integers;
    /// Support sections whose obstruction vanishes although they do not extend.
    std::vector<FalsePositive> entries;
    bool strongly_contextual = false;
    /// Strongly contextual, yet some obstruction vanishes.
    bool strong_contextuality_false_positive = false;
};

FalsePositiveReport false_positives(const SupportModel& model, Ring ring);

/// Join of precomputed results; `obstructions` must come from all_obstructions(model, ring).
FalsePositiveReport false_positives(const SupportModel& model, const Classification& classification,
                                    const std::vector<ObstructionResult>& obstructions, Ring ring);

}  // namespace cechctx
