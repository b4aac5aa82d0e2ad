#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "pitchgraph/store/graph.hpp"

namespace pitchgraph::query {

struct NodeRef {
  store::NodeId id;
  bool operator==(const NodeRef&) const = default;
};
struct EdgeRef {
  store::EdgeId id;
  bool operator==(const EdgeRef&) const = default;
};

// Runtime value of the query engine: a property value, null, a bound node
// or relationship, or a list (from collect()).
class Value {
 public:
  using List = std::vector<Value>;
  enum class Kind : std::uint8_t { Null, Bool, Int, Float, Text, Node, Edge, List };

  Value() = default;
  Value(bool b) : v_(b) {}
  Value(std::int64_t i) : v_(i) {}
  Value(int i) : v_(static_cast<std::int64_t>(i)) {}
  Value(double d) : v_(d) {}
  Value(std::string s) : v_(std::move(s)) {}
  Value(const char* s) : v_(std::string(s)) {}
  Value(NodeRef n) : v_(n) {}
  Value(EdgeRef e) : v_(e) {}
  Value(List l) : v_(std::move(l)) {}

  static Value from_property(const store::PropertyValue& p);
  static Value null() { return {}; }

  [[nodiscard]] Kind kind() const { return static_cast<Kind>(v_.index()); }
  [[nodiscard]] bool is_null() const { return kind() == Kind::Null; }
  [[nodiscard]] bool is_numeric() const { return kind() == Kind::Int || kind() == Kind::Float; }

  [[nodiscard]] bool as_bool() const { return std::get<bool>(v_); }
  [[nodiscard]] std::int64_t as_int() const { return std::get<std::int64_t>(v_); }
  [[nodiscard]] double as_float() const { return std::get<double>(v_); }
  [[nodiscard]] double as_number() const {
    return kind() == Kind::Int ? static_cast<double>(as_int()) : as_float();
  }
  [[nodiscard]] const std::string& as_text() const { return std::get<std::string>(v_); }
  [[nodiscard]] NodeRef as_node() const { return std::get<NodeRef>(v_); }
  [[nodiscard]] EdgeRef as_edge() const { return std::get<EdgeRef>(v_); }
  [[nodiscard]] const List& as_list() const { return std::get<List>(v_); }

  // Total order used by ORDER BY, DISTINCT and grouping:
  // Node < Edge < List < Text < Bool < Number < Null; Int and Float
  // interleave numerically.
  [[nodiscard]] std::weak_ordering order(const Value& other) const;
  [[nodiscard]] bool same(const Value& other) const { return order(other) == 0; }

  // Representation equality (used by tests comparing tables).
  bool operator==(const Value& other) const { return v_ == other.v_; }

  // Literal rendering (text quoted). Nodes and edges render by id only.
  [[nodiscard]] std::string to_literal() const;

 private:
  std::variant<std::monostate, bool, std::int64_t, double, std::string, NodeRef, EdgeRef, List> v_;
};

struct ValueOrderLess {
  bool operator()(const Value& a, const Value& b) const { return a.order(b) < 0; }
};

// Three-valued comparison: nullopt when either side is null or the kinds
// are incomparable (only Int/Float mix).
std::optional<std::partial_ordering> compare(const Value& a, const Value& b);

// Plain rendering for answers and tables: text unquoted, nodes as
// "(:Label {k: v, ...})".
std::string render(const Value& v, const store::Graph* g);
nlohmann::json to_json(const Value& v, const store::Graph* g);

}  // namespace pitchgraph::query
