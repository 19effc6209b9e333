#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace lulu {

// Thrown when an enumeration or normal-form computation would exceed a
// configured cap. Carries the cap so callers can report it.
class capacity_error : public std::runtime_error {
public:
    capacity_error(const std::string& what, std::size_t limit)
        : std::runtime_error(what), limit_(limit) {}

    std::size_t limit() const { return limit_; }

private:
    std::size_t limit_;
};

// Syntax error with the byte position of the offending token.
class parse_error : public std::runtime_error {
public:
    parse_error(const std::string& what, std::size_t position)
        : std::runtime_error(what + " (at position " + std::to_string(position) + ")"),
          position_(position) {}

    std::size_t position() const { return position_; }

private:
    std::size_t position_;
};

} // namespace lulu
