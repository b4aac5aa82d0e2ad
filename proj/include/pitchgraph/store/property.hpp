#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <variant>

namespace pitchgraph::store {

// Node/edge attribute value. Int and Float compare numerically with each
// other; any other cross-tag comparison is undefined (nullopt).
class PropertyValue {
 public:
  enum class Tag : std::uint8_t { Text = 0, Int = 1, Float = 2, Bool = 3 };

  PropertyValue() : v_(std::int64_t{0}) {}
  PropertyValue(std::string s) : v_(std::move(s)) {}
  PropertyValue(const char* s) : v_(std::string(s)) {}
  PropertyValue(std::string_view s) : v_(std::string(s)) {}
  PropertyValue(std::int64_t i) : v_(i) {}
  PropertyValue(int i) : v_(static_cast<std::int64_t>(i)) {}
  PropertyValue(double d) : v_(d) {}
  PropertyValue(bool b) : v_(b) {}

  [[nodiscard]] Tag tag() const { return static_cast<Tag>(v_.index()); }
  [[nodiscard]] bool is_text() const { return tag() == Tag::Text; }
  [[nodiscard]] bool is_int() const { return tag() == Tag::Int; }
  [[nodiscard]] bool is_float() const { return tag() == Tag::Float; }
  [[nodiscard]] bool is_bool() const { return tag() == Tag::Bool; }
  [[nodiscard]] bool is_numeric() const { return is_int() || is_float(); }

  [[nodiscard]] const std::string& as_text() const { return std::get<std::string>(v_); }
  [[nodiscard]] std::int64_t as_int() const { return std::get<std::int64_t>(v_); }
  [[nodiscard]] double as_float() const { return std::get<double>(v_); }
  [[nodiscard]] bool as_bool() const { return std::get<bool>(v_); }

  // Three-valued comparison: nullopt when the tags are incomparable.
  [[nodiscard]] std::optional<std::partial_ordering> compare(const PropertyValue& other) const;

  // Total order used by indices and sorting: Bool < numeric < Text, then
  // by value, with Int/Float interleaved numerically.
  [[nodiscard]] std::weak_ordering total_order(const PropertyValue& other) const;

  // Exact representation equality (tag and value).
  bool operator==(const PropertyValue& other) const { return v_ == other.v_; }

  // Human/JSON-friendly rendering; text is unquoted.
  [[nodiscard]] std::string to_string() const;
  // Cypher literal rendering; text is single-quoted and escaped.
  [[nodiscard]] std::string to_literal() const;

 private:
  std::variant<std::string, std::int64_t, double, bool> v_;
};

struct PropertyTotalLess {
  bool operator()(const PropertyValue& a, const PropertyValue& b) const {
    return a.total_order(b) < 0;
  }
};

using PropertyMap = std::map<std::string, PropertyValue, std::less<>>;

std::string quote_text(std::string_view text);

}  // namespace pitchgraph::store
