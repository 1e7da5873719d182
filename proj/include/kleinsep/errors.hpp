#pragma once

#include <stdexcept>
#include <string>

namespace kleinsep {

// Base for everything thrown by this library.
struct error : std::runtime_error {
    explicit error(const std::string& what) : std::runtime_error(what) {}
};

// Malformed drawing file; line is 1-based.
struct parse_error : error {
    int line;
    parse_error(int line_, const std::string& what)
        : error("line " + std::to_string(line_) + ": " + what), line(line_) {}
};

// Geometry that violates the proper-drawing rules (tangency, overlap,
// vertex contact, triple point). Never silently repaired.
struct degenerate_error : error {
    using error::error;
};

// Caller handed an input outside an operation's stated domain.
struct precondition_error : error {
    using error::error;
};

// A search cap or size guard was hit before the answer was certain.
// Raised instead of returning a truncated result.
struct search_limit_error : error {
    using error::error;
};

// A guaranteed-to-exist object was not found: certifies a bug, not bad input.
struct theorem_violation : error {
    using error::error;
};

} // namespace kleinsep
