#pragma once

#include <stdexcept>
#include <string>

namespace stirl {

/// Signals a violated structural invariant (a computation bug, not bad input).
class integrity_error : public std::runtime_error {
public:
    explicit integrity_error(const std::string& what) : std::runtime_error(what) {}
};

/// Signals that float arithmetic cannot decide a comparison and no exact
/// fallback exists; callers should not guess past it.
class ambiguity_error : public std::runtime_error {
public:
    explicit ambiguity_error(const std::string& what) : std::runtime_error(what) {}
};

} // namespace stirl
