#pragma once

#include <stdexcept>
#include <string>

namespace stonevn {

// Violated precondition or structurally malformed input: arity mismatch,
// elements fed to a ring they do not belong to, a transition requested
// between partitions that are not comparable, an incoherent diagram, ...
class ContractError : public std::logic_error {
public:
    explicit ContractError(const std::string& what) : std::logic_error(what) {}
};

// A scalar operation left the representable domain: division by zero, or a
// floating-point result that is not finite.
class DomainError : public std::runtime_error {
public:
    explicit DomainError(const std::string& what) : std::runtime_error(what) {}
};

// An enumeration bound was exceeded (these routines are exponential in the
// number of points/atoms and are capped on purpose).
class ResourceError : public std::runtime_error {
public:
    explicit ResourceError(const std::string& what) : std::runtime_error(what) {}
};

// Malformed textual input. Carries a byte offset when one is known.
class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& what, std::size_t offset)
        : std::runtime_error(what + " (at offset " + std::to_string(offset) + ")"),
          offset_(offset) {}

    explicit ParseError(const std::string& what) : std::runtime_error(what), offset_(0) {}

    std::size_t offset() const { return offset_; }

private:
    std::size_t offset_;
};

} // namespace stonevn
