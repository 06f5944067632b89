#pragma once

#include <optional>
#include <string_view>
#include <vector>

namespace cechctx {

/// Names of the bundled example scenarios, in a fixed order.
std::vector<std::string_view> corpus_names();

/// JSON text of a bundled scenario, or nullopt for an unknown name.
std::optional<std::string_view> corpus_text(std::string_view name);

}  // namespace cechctx
