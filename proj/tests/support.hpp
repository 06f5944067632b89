#pragma once

#include <algorithm>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "cechctx/corpus.hpp"
#include "cechctx/document.hpp"

namespace cechctx::testing {

inline LoadedModel corpus_model(std::string_view name) {
    auto text = corpus_text(name);
    if (!text) throw std::runtime_error("no corpus entry " + std::string(name));
    return load_model(parse_scenario(*text));
}

inline Section section(const LoadedModel& m, ContextIndex i, std::string_view tuple) {
    return m.section_from_tuple(i, tuple);
}

/// Binary scenario with single-letter measurements, contexts given as strings like "AB".
inline Scenario letters(const std::vector<std::string>& contexts) {
    std::vector<std::string> ms;
    std::vector<std::vector<std::string>> cs;
    for (const auto& c : contexts) {
        std::vector<std::string> members;
        for (char ch : c) {
            std::string l(1, ch);
            members.push_back(l);
            if (std::find(ms.begin(), ms.end(), l) == ms.end()) ms.push_back(l);
        }
        cs.push_back(members);
    }
    std::sort(ms.begin(), ms.end());
    return Scenario(ms, {"0", "1"}, cs);
}

/// Section on `domain` given outcome digits in global measurement order.
inline Section digits(MeasurementSet domain, std::string_view values) {
    Section s{domain, {}};
    for (char c : values) s.values.push_back(static_cast<Outcome>(c - '0'));
    return s;
}

}  // namespace cechctx::testing
