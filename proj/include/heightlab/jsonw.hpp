#pragma once

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <memory>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "heightlab/errors.hpp"

namespace heightlab {

// Minimal JSON emitter with insertion-ordered objects and doubles printed
// with 17 significant digits, so equal inputs always serialize to equal
// bytes.  Output only; nothing here parses JSON.
class JsonValue {
public:
  using Array = std::vector<JsonValue>;
  using Object = std::vector<std::pair<std::string, JsonValue>>;

  JsonValue() : v_(nullptr) {}
  JsonValue(std::nullptr_t) : v_(nullptr) {}
  JsonValue(bool b) : v_(b) {}
  JsonValue(int i) : v_(static_cast<std::int64_t>(i)) {}
  JsonValue(long i) : v_(static_cast<std::int64_t>(i)) {}
  JsonValue(long long i) : v_(static_cast<std::int64_t>(i)) {}
  JsonValue(unsigned long long u) : v_(static_cast<std::uint64_t>(u)) {}
  JsonValue(unsigned long u) : v_(static_cast<std::uint64_t>(u)) {}
  JsonValue(double d) : v_(d) {}
  JsonValue(const char* s) : v_(std::string(s)) {}
  JsonValue(std::string s) : v_(std::move(s)) {}
  JsonValue(Array a) : v_(std::move(a)) {}

  static JsonValue object() {
    JsonValue j;
    j.v_ = Object{};
    return j;
  }
  static JsonValue array() {
    JsonValue j;
    j.v_ = Array{};
    return j;
  }

  JsonValue& set(const std::string& key, JsonValue val) {
    auto& obj = std::get<Object>(v_);
    obj.emplace_back(key, std::move(val));
    return *this;
  }

  JsonValue& push(JsonValue val) {
    auto& arr = std::get<Array>(v_);
    arr.push_back(std::move(val));
    return *this;
  }

  std::string dump() const {
    std::string out;
    write(out);
    return out;
  }

private:
  static void escape(const std::string& s, std::string& out) {
    out.push_back('"');
    for (char c : s) {
      switch (c) {
        case '"': out += "\\\""; break;
        case '\\': out += "\\\\"; break;
        case '\n': out += "\\n"; break;
        case '\t': out += "\\t"; break;
        case '\r': out += "\\r"; break;
        default:
          if (static_cast<unsigned char>(c) < 0x20) {
            char buf[8];
            std::snprintf(buf, sizeof buf, "\\u%04x", c);
            out += buf;
          } else {
            out.push_back(c);
          }
      }
    }
    out.push_back('"');
  }

  void write(std::string& out) const {
    if (std::holds_alternative<std::nullptr_t>(v_)) {
      out += "null";
    } else if (std::holds_alternative<bool>(v_)) {
      out += std::get<bool>(v_) ? "true" : "false";
    } else if (std::holds_alternative<std::int64_t>(v_)) {
      out += std::to_string(std::get<std::int64_t>(v_));
    } else if (std::holds_alternative<std::uint64_t>(v_)) {
      out += std::to_string(std::get<std::uint64_t>(v_));
    } else if (std::holds_alternative<double>(v_)) {
      double d = std::get<double>(v_);
      if (!std::isfinite(d)) throw DomainError("non-finite number in JSON output");
      char buf[40];
      std::snprintf(buf, sizeof buf, "%.17g", d);
      out += buf;
    } else if (std::holds_alternative<std::string>(v_)) {
      escape(std::get<std::string>(v_), out);
    } else if (std::holds_alternative<Array>(v_)) {
      out.push_back('[');
      const auto& arr = std::get<Array>(v_);
      for (std::size_t i = 0; i < arr.size(); ++i) {
        if (i) out.push_back(',');
        arr[i].write(out);
      }
      out.push_back(']');
    } else {
      out.push_back('{');
      const auto& obj = std::get<Object>(v_);
      for (std::size_t i = 0; i < obj.size(); ++i) {
        if (i) out.push_back(',');
        escape(obj[i].first, out);
        out.push_back(':');
        obj[i].second.write(out);
      }
      out.push_back('}');
    }
  }

  std::variant<std::nullptr_t, bool, std::int64_t, std::uint64_t, double, std::string,
               Array, Object>
      v_;
};

}  // namespace heightlab
