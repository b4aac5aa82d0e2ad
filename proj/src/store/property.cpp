#include "pitchgraph/store/property.hpp"

#include <cmath>
#include <charconv>

namespace pitchgraph::store {

namespace {

std::partial_ordering compare_int_float(std::int64_t i, double d) {
  if (std::isnan(d)) return std::partial_ordering::unordered;
  if (d >= 9223372036854775808.0) return std::partial_ordering::less;
  if (d < -9223372036854775808.0) return std::partial_ordering::greater;
  const double fl = std::floor(d);
  const auto fi = static_cast<std::int64_t>(fl);
  if (i < fi) return std::partial_ordering::less;
  if (i > fi) return std::partial_ordering::greater;
  return d > fl ? std::partial_ordering::less : std::partial_ordering::equivalent;
}

std::partial_ordering flip(std::partial_ordering o) {
  if (o == std::partial_ordering::less) return std::partial_ordering::greater;
  if (o == std::partial_ordering::greater) return std::partial_ordering::less;
  return o;
}

int type_rank(PropertyValue::Tag t) {
  switch (t) {
    case PropertyValue::Tag::Bool: return 0;
    case PropertyValue::Tag::Int:
    case PropertyValue::Tag::Float: return 1;
    case PropertyValue::Tag::Text: return 2;
  }
  return 3;
}

std::weak_ordering to_weak(std::partial_ordering o) {
  if (o == std::partial_ordering::less) return std::weak_ordering::less;
  if (o == std::partial_ordering::greater) return std::weak_ordering::greater;
  return std::weak_ordering::equivalent;
}

}  // namespace

std::optional<std::partial_ordering> PropertyValue::compare(const PropertyValue& other) const {
  const Tag a = tag();
  const Tag b = other.tag();
  if (a == Tag::Int && b == Tag::Int) return as_int() <=> other.as_int();
  if (a == Tag::Float && b == Tag::Float) return as_float() <=> other.as_float();
  if (a == Tag::Int && b == Tag::Float) return compare_int_float(as_int(), other.as_float());
  if (a == Tag::Float && b == Tag::Int) return flip(compare_int_float(other.as_int(), as_float()));
  if (a != b) return std::nullopt;
  if (a == Tag::Text) return as_text() <=> other.as_text();
  return as_bool() <=> other.as_bool();
}

std::weak_ordering PropertyValue::total_order(const PropertyValue& other) const {
  const int ra = type_rank(tag());
  const int rb = type_rank(other.tag());
  if (ra != rb) return ra <=> rb;
  if (is_numeric()) {
    // NaN sorts after every number and ties with itself.
    const bool na = is_float() && std::isnan(as_float());
    const bool nb = other.is_float() && std::isnan(other.as_float());
    if (na || nb) return na <=> nb;
  }
  return to_weak(*compare(other));
}

std::string PropertyValue::to_string() const {
  switch (tag()) {
    case Tag::Text: return as_text();
    case Tag::Int: return std::to_string(as_int());
    case Tag::Float: {
      char buf[64];
      auto res = std::to_chars(buf, buf + sizeof buf, as_float());
      std::string s(buf, res.ptr);
      if (s.find_first_of(".eEn") == std::string::npos) s += ".0";
      return s;
    }
    case Tag::Bool: return as_bool() ? "true" : "false";
  }
  return {};
}

std::string PropertyValue::to_literal() const {
  return is_text() ? quote_text(as_text()) : to_string();
}

std::string quote_text(std::string_view text) {
  std::string out = "'";
  for (char c : text) {
    switch (c) {
      case '\n': out += "\\n"; break;
      case '\r': out += "\\r"; break;
      case '\t': out += "\\t"; break;
      case '\'':
      case '\\':
        out.push_back('\\');
        out.push_back(c);
        break;
      default: out.push_back(c);
    }
  }
  out.push_back('\'');
  return out;
}

}  // namespace pitchgraph::store
