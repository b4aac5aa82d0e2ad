#include "pitchgraph/query/ast.hpp"

#include <algorithm>

#include "pitchgraph/query/lexer.hpp"

namespace pitchgraph::query {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

bool equal_ptr(const ExprPtr& a, const ExprPtr& b) {
  if (!a || !b) return !a && !b;
  return equal(*a, *b);
}

bool plain_ident(const std::string& s) {
  if (s.empty()) return false;
  auto start = [](char c) { return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_'; };
  if (!start(s[0])) return false;
  for (char c : s)
    if (!start(c) && !(c >= '0' && c <= '9')) return false;
  // Keywords would lex differently.
  auto toks = tokenize(s);
  return toks.size() == 1 && toks[0].kind == TokenKind::Ident;
}

std::string ident(const std::string& s) {
  if (plain_ident(s)) return s;
  std::string out = "`";
  for (char c : s) {
    if (c == '`') out.push_back('`');
    out.push_back(c);
  }
  return out + "`";
}

// Binding strength: OR 1, AND 2, NOT 3, comparison 4, atom 5.
int precedence(const Expr& e) {
  return std::visit(overloaded{
                        [](const Logical& l) { return l.op == LogicOp::Or ? 1 : 2; },
                        [](const Not&) { return 3; },
                        [](const Comparison&) { return 4; },
                        [](const IsNull&) { return 4; },
                        [](const auto&) { return 5; },
                    },
                    e.node);
}

std::string wrap(const Expr& e, int min_prec) {
  std::string s = to_cypher(e);
  return precedence(e) >= min_prec ? s : "(" + s + ")";
}

std::string literal_text(const Value& v) { return v.to_literal(); }

void collect_vars(const Expr& e, std::vector<std::string>& out) {
  auto add = [&](const std::string& v) {
    if (std::find(out.begin(), out.end(), v) == out.end()) out.push_back(v);
  };
  std::visit(overloaded{
                 [&](const Literal&) {},
                 [&](const Variable& v) { add(v.name); },
                 [&](const PropertyAccess& p) { add(p.var); },
                 [&](const Comparison& c) {
                   collect_vars(*c.lhs, out);
                   collect_vars(*c.rhs, out);
                 },
                 [&](const Logical& l) {
                   collect_vars(*l.lhs, out);
                   collect_vars(*l.rhs, out);
                 },
                 [&](const Not& n) { collect_vars(*n.operand, out); },
                 [&](const IsNull& n) { collect_vars(*n.operand, out); },
                 [&](const Aggregate& a) {
                   if (a.arg) collect_vars(*a.arg, out);
                 },
             },
             e.node);
}

std::string node_text(const NodePattern& n) {
  std::string s = "(" + (n.var.empty() ? "" : ident(n.var));
  if (n.label) s += ":" + ident(*n.label);
  if (!n.props.empty()) {
    if (!n.var.empty() || n.label) s += " ";
    s += "{";
    for (std::size_t i = 0; i < n.props.size(); ++i) {
      if (i) s += ", ";
      s += ident(n.props[i].first) + ": " + literal_text(n.props[i].second);
    }
    s += "}";
  }
  return s + ")";
}

std::string rel_text(const RelPattern& r) {
  std::string inner = "[" + (r.var.empty() ? "" : ident(r.var)) + ":" + ident(r.type) + "]";
  switch (r.dir) {
    case RelDir::Right: return "-" + inner + "->";
    case RelDir::Left: return "<-" + inner + "-";
    case RelDir::Both: return "-" + inner + "-";
  }
  return inner;
}

}  // namespace

std::string_view to_string(CompOp op) {
  switch (op) {
    case CompOp::Eq: return "=";
    case CompOp::Neq: return "<>";
    case CompOp::Lt: return "<";
    case CompOp::Le: return "<=";
    case CompOp::Gt: return ">";
    case CompOp::Ge: return ">=";
    case CompOp::Contains: return "CONTAINS";
  }
  return "?";
}

bool equal(const Expr& a, const Expr& b) {
  if (a.node.index() != b.node.index()) return false;
  return std::visit(
      overloaded{
          [&](const Literal& x) {
            const auto& y = std::get<Literal>(b.node);
            return x.value == y.value;
          },
          [&](const Variable& x) { return x.name == std::get<Variable>(b.node).name; },
          [&](const PropertyAccess& x) {
            const auto& y = std::get<PropertyAccess>(b.node);
            return x.var == y.var && x.key == y.key;
          },
          [&](const Comparison& x) {
            const auto& y = std::get<Comparison>(b.node);
            return x.op == y.op && equal_ptr(x.lhs, y.lhs) && equal_ptr(x.rhs, y.rhs);
          },
          [&](const Logical& x) {
            const auto& y = std::get<Logical>(b.node);
            return x.op == y.op && equal_ptr(x.lhs, y.lhs) && equal_ptr(x.rhs, y.rhs);
          },
          [&](const Not& x) { return equal_ptr(x.operand, std::get<Not>(b.node).operand); },
          [&](const IsNull& x) {
            const auto& y = std::get<IsNull>(b.node);
            return x.negated == y.negated && equal_ptr(x.operand, y.operand);
          },
          [&](const Aggregate& x) {
            const auto& y = std::get<Aggregate>(b.node);
            return x.fn == y.fn && x.distinct == y.distinct && equal_ptr(x.arg, y.arg);
          },
      },
      a.node);
}

bool equal(const Query& a, const Query& b) {
  auto node_eq = [](const NodePattern& x, const NodePattern& y) {
    return x.var == y.var && x.label == y.label && x.props == y.props;
  };
  auto rel_eq = [](const RelPattern& x, const RelPattern& y) {
    return x.var == y.var && x.type == y.type && x.dir == y.dir;
  };
  if (a.match.size() != b.match.size()) return false;
  for (std::size_t i = 0; i < a.match.size(); ++i) {
    const auto& p = a.match[i];
    const auto& q = b.match[i];
    if (!std::equal(p.nodes.begin(), p.nodes.end(), q.nodes.begin(), q.nodes.end(), node_eq)) return false;
    if (!std::equal(p.rels.begin(), p.rels.end(), q.rels.begin(), q.rels.end(), rel_eq)) return false;
  }
  if (!equal_ptr(a.where, b.where) || a.distinct != b.distinct || a.limit != b.limit) return false;
  if (a.items.size() != b.items.size() || a.order_by.size() != b.order_by.size()) return false;
  for (std::size_t i = 0; i < a.items.size(); ++i)
    if (!equal_ptr(a.items[i].expr, b.items[i].expr) || a.items[i].alias != b.items[i].alias) return false;
  for (std::size_t i = 0; i < a.order_by.size(); ++i)
    if (!equal_ptr(a.order_by[i].expr, b.order_by[i].expr) ||
        a.order_by[i].descending != b.order_by[i].descending)
      return false;
  return true;
}

bool contains_aggregate(const Expr& e) {
  return std::visit(overloaded{
                        [](const Aggregate&) { return true; },
                        [](const Comparison& c) { return contains_aggregate(*c.lhs) || contains_aggregate(*c.rhs); },
                        [](const Logical& l) { return contains_aggregate(*l.lhs) || contains_aggregate(*l.rhs); },
                        [](const Not& n) { return contains_aggregate(*n.operand); },
                        [](const IsNull& n) { return contains_aggregate(*n.operand); },
                        [](const auto&) { return false; },
                    },
                    e.node);
}

std::vector<std::string> referenced_vars(const Expr& e) {
  std::vector<std::string> out;
  collect_vars(e, out);
  return out;
}

std::string to_cypher(const Expr& e) {
  return std::visit(
      overloaded{
          [](const Literal& l) { return literal_text(l.value); },
          [](const Variable& v) { return ident(v.name); },
          [](const PropertyAccess& p) { return ident(p.var) + "." + ident(p.key); },
          [](const Comparison& c) {
            return wrap(*c.lhs, 5) + " " + std::string(to_string(c.op)) + " " + wrap(*c.rhs, 5);
          },
          [](const Logical& l) {
            const int p = l.op == LogicOp::Or ? 1 : 2;
            return wrap(*l.lhs, p) + (l.op == LogicOp::Or ? " OR " : " AND ") + wrap(*l.rhs, p + 1);
          },
          [](const Not& n) { return "NOT " + wrap(*n.operand, 3); },
          [](const IsNull& n) { return wrap(*n.operand, 5) + (n.negated ? " IS NOT NULL" : " IS NULL"); },
          [](const Aggregate& a) {
            std::string name = a.fn == AggFn::Count ? "count" : a.fn == AggFn::Sum ? "sum" : "collect";
            if (!a.arg) return name + "(*)";
            return name + "(" + (a.distinct ? "DISTINCT " : "") + to_cypher(*a.arg) + ")";
          },
      },
      e.node);
}

std::string to_cypher(const Query& q) {
  std::string s = "MATCH ";
  for (std::size_t i = 0; i < q.match.size(); ++i) {
    if (i) s += ", ";
    const auto& path = q.match[i];
    s += node_text(path.nodes[0]);
    for (std::size_t r = 0; r < path.rels.size(); ++r) s += rel_text(path.rels[r]) + node_text(path.nodes[r + 1]);
  }
  if (q.where) s += " WHERE " + to_cypher(*q.where);
  s += q.distinct ? " RETURN DISTINCT " : " RETURN ";
  for (std::size_t i = 0; i < q.items.size(); ++i) {
    if (i) s += ", ";
    s += to_cypher(*q.items[i].expr);
    if (q.items[i].alias) s += " AS " + ident(*q.items[i].alias);
  }
  if (!q.order_by.empty()) {
    s += " ORDER BY ";
    for (std::size_t i = 0; i < q.order_by.size(); ++i) {
      if (i) s += ", ";
      s += to_cypher(*q.order_by[i].expr) + (q.order_by[i].descending ? " DESC" : "");
    }
  }
  if (q.limit) s += " LIMIT " + std::to_string(*q.limit);
  return s;
}

std::string column_name(const ReturnItem& item) {
  return item.alias ? *item.alias : to_cypher(*item.expr);
}

}  // namespace pitchgraph::query
