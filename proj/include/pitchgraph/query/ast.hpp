#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "pitchgraph/query/value.hpp"

namespace pitchgraph::query {

struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

enum class CompOp : std::uint8_t { Eq, Neq, Lt, Le, Gt, Ge, Contains };
enum class LogicOp : std::uint8_t { And, Or };
enum class AggFn : std::uint8_t { Count, Sum, Collect };

struct Literal {
  Value value;  // null, bool, int, float or text
};
struct Variable {
  std::string name;
};
struct PropertyAccess {
  std::string var;
  std::string key;
};
struct Comparison {
  CompOp op;
  ExprPtr lhs;
  ExprPtr rhs;
};
struct Logical {
  LogicOp op;
  ExprPtr lhs;
  ExprPtr rhs;
};
struct Not {
  ExprPtr operand;
};
struct IsNull {
  ExprPtr operand;
  bool negated = false;
};
struct Aggregate {
  AggFn fn;
  bool distinct = false;
  ExprPtr arg;  // null for count(*)
};

struct Expr {
  std::variant<Literal, Variable, PropertyAccess, Comparison, Logical, Not, IsNull, Aggregate> node;
  std::size_t offset = 0;
};

template <class T>
ExprPtr make_expr(T node, std::size_t offset = 0) {
  return std::make_shared<const Expr>(Expr{std::move(node), offset});
}

enum class RelDir : std::uint8_t { Right, Left, Both };

struct NodePattern {
  std::string var;  // empty when anonymous
  std::optional<std::string> label;
  std::vector<std::pair<std::string, Value>> props;
  std::size_t offset = 0;
};

struct RelPattern {
  std::string var;  // empty when anonymous
  std::string type;
  RelDir dir = RelDir::Right;
  std::size_t offset = 0;
};

// nodes.size() == rels.size() + 1; rels[i] joins nodes[i] and nodes[i+1].
struct PathPattern {
  std::vector<NodePattern> nodes;
  std::vector<RelPattern> rels;
};

struct ReturnItem {
  ExprPtr expr;
  std::optional<std::string> alias;
};

struct OrderItem {
  ExprPtr expr;
  bool descending = false;
};

struct Query {
  std::vector<PathPattern> match;
  ExprPtr where;  // may be null
  bool distinct = false;
  std::vector<ReturnItem> items;
  std::vector<OrderItem> order_by;
  std::optional<std::int64_t> limit;
};

// Structural equality, ignoring source offsets.
bool equal(const Expr& a, const Expr& b);
bool equal(const Query& a, const Query& b);

bool contains_aggregate(const Expr& e);

// Variables referenced anywhere in the expression, in first-use order.
std::vector<std::string> referenced_vars(const Expr& e);

// Canonical text; parse(to_cypher(q)) is structurally equal to q.
std::string to_cypher(const Expr& e);
std::string to_cypher(const Query& q);

// Result column name: the alias if given, otherwise the expression text.
std::string column_name(const ReturnItem& item);

std::string_view to_string(CompOp op);

}  // namespace pitchgraph::query
