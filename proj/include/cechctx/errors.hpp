#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace cechctx {

/// Precondition violation on an otherwise well-formed call (bad subset, section
/// outside a support, non-binary outcomes for a KS generator, ...).
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// A model or document failed validation. Carries every problem found.
class ValidationError : public std::runtime_error {
public:
    explicit ValidationError(std::vector<std::string> problems);

    const std::vector<std::string>& problems() const noexcept { return problems_; }

private:
    std::vector<std::string> problems_;
};

/// A witness or certificate failed independent re-checking. Never expected.
class VerificationError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

}  // namespace cechctx
