#pragma once

#include <stdexcept>
#include <string>

namespace meshtrack {

// Malformed input text or unreadable file. CLI maps this to exit code 1.
class ParseError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// A domain invariant was violated (bad index, non-manifold edge,
// degenerate geometry, ordering violation). CLI maps this to exit code 2.
class DomainError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace meshtrack
