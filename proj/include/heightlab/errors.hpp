#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace heightlab {

// Base class for all domain-level failures. The CLI maps these to
// {error, detail} JSON objects and exit code 1.
class Error : public std::runtime_error {
public:
  Error(std::string kind, std::string detail)
      : std::runtime_error(kind + ": " + detail),
        kind_(std::move(kind)),
        detail_(std::move(detail)) {}

  const std::string& kind() const { return kind_; }
  const std::string& detail() const { return detail_; }

private:
  std::string kind_;
  std::string detail_;
};

class DomainError : public Error {
public:
  explicit DomainError(const std::string& detail) : Error("domain error", detail) {}
};

// Text-parsing failure carrying the byte offset of the offending token.
class ParseError : public Error {
public:
  ParseError(std::size_t pos, const std::string& detail)
      : Error("parse error", detail + " (at position " + std::to_string(pos) + ")"),
        pos_(pos) {}

  std::size_t position() const { return pos_; }

private:
  std::size_t pos_;
};

// Simultaneous root iteration failed its reconstruction check.
class RootFindError : public Error {
public:
  explicit RootFindError(const std::string& detail) : Error("root-finding error", detail) {}
};

}  // namespace heightlab
