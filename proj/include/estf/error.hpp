#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace estf {

/// Precondition violation on an argument (bad fraction, bad fragment, bad domain).
class InvalidArgument : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Malformed input bytes. `offset` is the byte position of the offending record.
class FormatError : public std::runtime_error {
public:
    FormatError(std::uint64_t offset, const std::string& rule)
        : std::runtime_error("byte " + std::to_string(offset) + ": " + rule),
          offset_(offset) {}

    std::uint64_t offset() const noexcept { return offset_; }

private:
    std::uint64_t offset_;
};

/// Filesystem failure (unreadable / unwritable path).
class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace estf
