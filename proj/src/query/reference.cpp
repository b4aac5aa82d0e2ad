// Brute-force evaluator used as a test oracle. Deliberately naive: full
// scans, syntactic order, linear-search grouping.
#include <algorithm>
#include <map>

#include "pitchgraph/error.hpp"
#include "pitchgraph/query/eval.hpp"
#include "pitchgraph/query/executor.hpp"

namespace pitchgraph::query {

namespace {

struct Binding {
  std::vector<std::pair<std::string, Value>> vars;

  [[nodiscard]] const Value* get(std::string_view name) const {
    for (const auto& [n, v] : vars)
      if (n == name) return &v;
    return nullptr;
  }
};

bool matches_node(const store::Node& n, const NodePattern& p) {
  if (p.label && n.label != *p.label) return false;
  for (const auto& [key, want] : p.props) {
    const store::PropertyValue* have = n.prop(key);
    if (!have) return false;
    auto c = compare(Value::from_property(*have), want);
    if (!c || *c != std::partial_ordering::equivalent) return false;
  }
  return true;
}

class Enumerator {
 public:
  Enumerator(const Query& q, const store::Graph& g) : q_(q), g_(g) {
    for (const auto& p : q.match) pos_.emplace_back(p.nodes.size());
  }

  std::vector<Binding> run() {
    Binding b;
    std::vector<store::EdgeId> used;
    path(0, b, used);
    return std::move(out_);
  }

 private:
  void path(std::size_t pi, Binding& b, std::vector<store::EdgeId>& used) {
    if (pi == q_.match.size()) {
      Scope s = [&b](std::string_view name) { return b.get(name); };
      if (!q_.where || is_true(evaluate(*q_.where, g_, s))) out_.push_back(b);
      return;
    }
    for (const auto& n : g_.nodes()) {
      node_then(pi, 0, n.id, b, [&] {
        pos_[pi][0] = n.id;
        hop(pi, 0, b, used);
      });
    }
  }

  // Binds nodes[ni] of path pi to `id` if consistent, then continues.
  template <class Next>
  void node_then(std::size_t pi, std::size_t ni, store::NodeId id, Binding& b, const Next& next) {
    const NodePattern& np = q_.match[pi].nodes[ni];
    if (!matches_node(g_.node(id), np)) return;
    if (np.var.empty()) {
      next();
      return;
    }
    if (const Value* v = b.get(np.var)) {
      if (v->kind() == Value::Kind::Node && v->as_node().id == id) next();
      return;
    }
    b.vars.emplace_back(np.var, Value(NodeRef{id}));
    next();
    b.vars.pop_back();
  }

  // Relationship ri of path pi, leaving the node bound at position ri.
  void hop(std::size_t pi, std::size_t ri, Binding& b, std::vector<store::EdgeId>& used) {
    const PathPattern& p = q_.match[pi];
    if (ri == p.rels.size()) {
      path(pi + 1, b, used);
      return;
    }
    const RelPattern& rp = p.rels[ri];
    const store::NodeId here = pos_[pi][ri];
    for (const auto& e : g_.edges()) {
      if (e.type != rp.type) continue;
      if (std::find(used.begin(), used.end(), e.id) != used.end()) continue;
      std::optional<store::NodeId> there;
      if ((rp.dir == RelDir::Right || rp.dir == RelDir::Both) && e.src == here) {
        there = e.dst;
      } else if ((rp.dir == RelDir::Left || rp.dir == RelDir::Both) && e.dst == here) {
        there = e.src;
      }
      if (!there) continue;
      used.push_back(e.id);
      if (!rp.var.empty()) b.vars.emplace_back(rp.var, Value(EdgeRef{e.id}));
      node_then(pi, ri + 1, *there, b, [&] {
        pos_[pi][ri + 1] = *there;
        hop(pi, ri + 1, b, used);
      });
      if (!rp.var.empty()) b.vars.pop_back();
      used.pop_back();
    }
  }

  const Query& q_;
  const store::Graph& g_;
  std::vector<std::vector<store::NodeId>> pos_;
  std::vector<Binding> out_;
};

bool rows_equal(const std::vector<Value>& a, const std::vector<Value>& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (!a[i].same(b[i])) return false;
  return true;
}

bool has_aggregate(const Query& q) {
  return std::any_of(q.items.begin(), q.items.end(), [](const ReturnItem& i) { return contains_aggregate(*i.expr); });
}

// Applies one aggregate to the list of argument values of a group.
Value aggregate(const Aggregate& a, const std::vector<Value>& args, std::size_t rows) {
  if (!a.arg) return Value(static_cast<std::int64_t>(rows));
  std::vector<Value> vals;
  for (const auto& v : args) {
    if (v.is_null()) continue;
    if (a.distinct && std::any_of(vals.begin(), vals.end(), [&](const Value& x) { return x.same(v); })) continue;
    vals.push_back(v);
  }
  switch (a.fn) {
    case AggFn::Count: return Value(static_cast<std::int64_t>(vals.size()));
    case AggFn::Collect: return Value(vals);
    case AggFn::Sum: {
      long double total = 0;
      bool all_int = true;
      for (const auto& v : vals) {
        if (!v.is_numeric()) continue;
        if (v.kind() == Value::Kind::Float) all_int = false;
        total += v.kind() == Value::Kind::Int ? static_cast<long double>(v.as_int()) : v.as_float();
      }
      if (all_int) {
        __int128 exact = 0;
        for (const auto& v : vals)
          if (v.kind() == Value::Kind::Int) exact += v.as_int();
        if (exact <= INT64_MAX && exact >= INT64_MIN) return Value(static_cast<std::int64_t>(exact));
      }
      return Value(static_cast<double>(total));
    }
  }
  return {};
}

}  // namespace

ResultTable reference_execute(const Query& q, const store::Graph& g) {
  if (g.node_count() > kReferenceNodeLimit)
    throw SizeGuardError("reference executor limited to " + std::to_string(kReferenceNodeLimit) + " nodes");
  const auto started = std::chrono::steady_clock::now();
  check_semantics(q, Schema::of(g).merged(Schema::knowledge_graph()));

  std::vector<Binding> bindings = Enumerator(q, g).run();

  ResultTable t;
  t.graph = &g;
  t.stats.matched = bindings.size();
  for (const auto& item : q.items) t.columns.push_back(column_name(item));

  // Rows paired with the binding that produced them (for ORDER BY on
  // non-returned expressions).
  std::vector<std::pair<std::vector<Value>, const Binding*>> rows;

  if (!has_aggregate(q)) {
    for (const auto& b : bindings) {
      Scope s = [&b](std::string_view name) { return b.get(name); };
      std::vector<Value> row;
      for (const auto& item : q.items) row.push_back(evaluate(*item.expr, g, s));
      rows.emplace_back(std::move(row), &b);
    }
  } else {
    // Linear-search grouping on the non-aggregate columns.
    std::vector<std::vector<Value>> keys;
    std::vector<std::vector<const Binding*>> members;
    for (const auto& b : bindings) {
      Scope s = [&b](std::string_view name) { return b.get(name); };
      std::vector<Value> key;
      for (const auto& item : q.items)
        if (!contains_aggregate(*item.expr)) key.push_back(evaluate(*item.expr, g, s));
      std::size_t gi = 0;
      while (gi < keys.size() && !rows_equal(keys[gi], key)) ++gi;
      if (gi == keys.size()) {
        keys.push_back(key);
        members.emplace_back();
      }
      members[gi].push_back(&b);
    }
    const bool all_aggregate = std::all_of(q.items.begin(), q.items.end(),
                                           [](const ReturnItem& i) { return contains_aggregate(*i.expr); });
    if (keys.empty() && all_aggregate) {
      keys.emplace_back();
      members.emplace_back();
    }
    for (std::size_t gi = 0; gi < keys.size(); ++gi) {
      AggregateValues lookup = [&](const Aggregate& a) {
        std::vector<Value> args;
        for (const Binding* b : members[gi]) {
          Scope s = [b](std::string_view name) { return b->get(name); };
          args.push_back(a.arg ? evaluate(*a.arg, g, s) : Value());
        }
        return aggregate(a, args, members[gi].size());
      };
      Scope none = [](std::string_view) -> const Value* { return nullptr; };
      std::vector<Value> row;
      std::size_t k = 0;
      for (const auto& item : q.items) {
        if (contains_aggregate(*item.expr)) {
          row.push_back(evaluate(*item.expr, g, none, &lookup));
        } else {
          row.push_back(keys[gi][k++]);
        }
      }
      rows.emplace_back(std::move(row), nullptr);
    }
  }

  if (q.distinct) {
    std::vector<std::pair<std::vector<Value>, const Binding*>> kept;
    for (auto& r : rows) {
      bool dup = false;
      for (const auto& k : kept) dup = dup || rows_equal(k.first, r.first);
      if (!dup) kept.push_back(std::move(r));
    }
    rows = std::move(kept);
  }

  if (!q.order_by.empty()) {
    auto key_of = [&](const std::pair<std::vector<Value>, const Binding*>& r, const OrderItem& o) -> Value {
      for (std::size_t i = 0; i < q.items.size(); ++i) {
        const auto* v = std::get_if<Variable>(&o.expr->node);
        if (v && q.items[i].alias && *q.items[i].alias == v->name) return r.first[i];
      }
      for (std::size_t i = 0; i < q.items.size(); ++i)
        if (equal(*o.expr, *q.items[i].expr)) return r.first[i];
      const Binding* b = r.second;
      Scope s = [b](std::string_view name) { return b->get(name); };
      return evaluate(*o.expr, g, s);
    };
    // Insertion sort keeps ties in their original order.
    for (std::size_t i = 1; i < rows.size(); ++i) {
      for (std::size_t j = i; j > 0; --j) {
        bool less = false;
        bool decided = false;
        for (const auto& o : q.order_by) {
          const auto c = key_of(rows[j], o).order(key_of(rows[j - 1], o));
          if (c == 0) continue;
          less = o.descending ? c > 0 : c < 0;
          decided = true;
          break;
        }
        if (!decided || !less) break;
        std::swap(rows[j], rows[j - 1]);
      }
    }
  }

  for (auto& r : rows) {
    if (q.limit && t.rows.size() >= static_cast<std::size_t>(*q.limit)) break;
    t.rows.push_back(std::move(r.first));
  }
  t.stats.duration = std::chrono::steady_clock::now() - started;
  return t;
}

}  // namespace pitchgraph::query
