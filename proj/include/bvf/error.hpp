#pragma once

#include <stdexcept>
#include <string>

namespace bvf {

// Invalid input: malformed model text, out-of-range bit strings, bad CLI
// arguments, violated preconditions of public operations.  Maps to exit
// code 2 in the CLI.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Parse failure with a byte offset into the offending text.
class ParseError : public Error {
public:
    ParseError(const std::string& what, std::size_t position)
        : Error(what + " (at offset " + std::to_string(position) + ")"),
          position_(position) {}

    std::size_t position() const { return position_; }

private:
    std::size_t position_;
};

// Internal consistency failure: two provably equivalent formulations of a
// property disagreed, or a structural invariant broke.  Any throw of this
// type is a defect in the library, never a user error.  Maps to exit
// code 1 in the CLI.
class Defect : public std::logic_error {
public:
    explicit Defect(const std::string& what) : std::logic_error(what) {}
};

} // namespace bvf
