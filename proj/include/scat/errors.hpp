#ifndef SCAT_ERRORS_HPP
#define SCAT_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace scat {

// Invalid parameters or an unusable configuration (bad J, grid too small, ...).
class ConfigError : public std::runtime_error {
public:
  explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

// Shape mismatches between signals and filters/operands.
class DimensionError : public std::runtime_error {
public:
  explicit DimensionError(const std::string& msg) : std::runtime_error(msg) {}
};

// Problems with dataset content (empty classes, label mismatches, ...).
class DataError : public std::runtime_error {
public:
  explicit DataError(const std::string& msg) : std::runtime_error(msg) {}
};

// Malformed files. Carries the byte offset where parsing failed when known.
class FormatError : public std::runtime_error {
public:
  FormatError(const std::string& msg, std::size_t byte_offset)
      : std::runtime_error(msg + " (byte offset " + std::to_string(byte_offset) + ")"),
        offset(byte_offset) {}
  explicit FormatError(const std::string& msg) : std::runtime_error(msg), offset(0) {}
  std::size_t offset;
};

// Two objects built under different configurations were combined.
class IncompatibilityError : public std::runtime_error {
public:
  explicit IncompatibilityError(const std::string& msg) : std::runtime_error(msg) {}
};

// Out-of-range argument to an otherwise valid call.
class ArgumentError : public std::runtime_error {
public:
  explicit ArgumentError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace scat

#endif
