#include "pitchgraph/query/eval.hpp"

#include "pitchgraph/error.hpp"

namespace pitchgraph::query {

namespace {

// Kleene truth: nullopt stands for unknown (null or non-boolean).
std::optional<bool> truth(const Value& v) {
  if (v.kind() == Value::Kind::Bool) return v.as_bool();
  return std::nullopt;
}

Value from_truth(std::optional<bool> t) { return t ? Value(*t) : Value(); }

Value property_of(const Value& target, const std::string& key, const store::Graph& g) {
  const store::PropertyValue* p = nullptr;
  if (target.kind() == Value::Kind::Node) {
    p = g.node(target.as_node().id).prop(key);
  } else if (target.kind() == Value::Kind::Edge) {
    p = g.edge(target.as_edge().id).prop(key);
  }
  return p ? Value::from_property(*p) : Value();
}

Value compare_values(CompOp op, const Value& a, const Value& b) {
  if (op == CompOp::Contains) {
    if (a.kind() != Value::Kind::Text || b.kind() != Value::Kind::Text) return {};
    return Value(a.as_text().find(b.as_text()) != std::string::npos);
  }
  const auto c = compare(a, b);
  if (!c) return {};
  switch (op) {
    case CompOp::Eq: return Value(*c == std::partial_ordering::equivalent);
    case CompOp::Neq: return Value(*c != std::partial_ordering::equivalent);
    default: break;
  }
  if (*c == std::partial_ordering::unordered) return {};
  switch (op) {
    case CompOp::Lt: return Value(*c < 0);
    case CompOp::Le: return Value(*c <= 0);
    case CompOp::Gt: return Value(*c > 0);
    case CompOp::Ge: return Value(*c >= 0);
    default: return {};
  }
}

struct Evaluator {
  const store::Graph& g;
  const Scope& scope;
  const AggregateValues* aggs;

  Value operator()(const Literal& l) const { return l.value; }

  Value operator()(const Variable& v) const {
    const Value* bound = scope(v.name);
    if (!bound) throw SemanticError("variable '" + v.name + "' is not bound");
    return *bound;
  }

  Value operator()(const PropertyAccess& p) const {
    const Value* bound = scope(p.var);
    if (!bound) throw SemanticError("variable '" + p.var + "' is not bound");
    return property_of(*bound, p.key, g);
  }

  Value operator()(const Comparison& c) const {
    return compare_values(c.op, evaluate(*c.lhs, g, scope, aggs), evaluate(*c.rhs, g, scope, aggs));
  }

  Value operator()(const Logical& l) const {
    const auto a = truth(evaluate(*l.lhs, g, scope, aggs));
    // Short-circuit only where the result is already determined.
    if (l.op == LogicOp::And && a == false) return Value(false);
    if (l.op == LogicOp::Or && a == true) return Value(true);
    const auto b = truth(evaluate(*l.rhs, g, scope, aggs));
    if (l.op == LogicOp::And) {
      if (b == false) return Value(false);
      if (a && b) return Value(true);
      return {};
    }
    if (b == true) return Value(true);
    if (a && b) return Value(false);
    return {};
  }

  Value operator()(const Not& n) const {
    const auto t = truth(evaluate(*n.operand, g, scope, aggs));
    return from_truth(t ? std::optional<bool>(!*t) : std::nullopt);
  }

  Value operator()(const IsNull& n) const {
    const bool null = evaluate(*n.operand, g, scope, aggs).is_null();
    return Value(n.negated ? !null : null);
  }

  Value operator()(const Aggregate& a) const {
    if (!aggs) throw SemanticError("aggregate used outside RETURN");
    return (*aggs)(a);
  }
};

}  // namespace

Value evaluate(const Expr& e, const store::Graph& g, const Scope& scope, const AggregateValues* aggs) {
  return std::visit(Evaluator{g, scope, aggs}, e.node);
}

}  // namespace pitchgraph::query
