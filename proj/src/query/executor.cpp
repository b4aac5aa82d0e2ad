#include "pitchgraph/query/executor.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <sstream>
#include <unordered_map>

#include "pitchgraph/error.hpp"
#include "pitchgraph/query/eval.hpp"
#include "pitchgraph/query/parser.hpp"

namespace pitchgraph::query {

namespace {

constexpr std::uint32_t kUnbound = std::numeric_limits<std::uint32_t>::max();

std::optional<store::PropertyValue> as_property(const Value& v) {
  switch (v.kind()) {
    case Value::Kind::Text: return store::PropertyValue(v.as_text());
    case Value::Kind::Int: return store::PropertyValue(v.as_int());
    case Value::Kind::Float: return store::PropertyValue(v.as_float());
    case Value::Kind::Bool: return store::PropertyValue(v.as_bool());
    default: return std::nullopt;
  }
}

struct RowLess {
  bool operator()(const std::vector<Value>& a, const std::vector<Value>& b) const {
    for (std::size_t i = 0; i < a.size() && i < b.size(); ++i)
      if (auto c = a[i].order(b[i]); c != 0) return c < 0;
    return a.size() < b.size();
  }
};

// Running state of one aggregate call within one group.
class Accumulator {
 public:
  explicit Accumulator(const Aggregate& a) : agg_(a) {}

  void add(const Value& v) {
    if (!agg_.arg) {
      ++count_;
      return;
    }
    if (v.is_null()) return;
    if (agg_.distinct && !seen_.insert(v).second) return;
    ++count_;
    if (agg_.fn == AggFn::Sum && v.is_numeric()) {
      if (v.kind() == Value::Kind::Int) {
        int_sum_ += v.as_int();
      } else {
        float_sum_ += v.as_float();
        any_float_ = true;
      }
    }
    if (agg_.fn == AggFn::Collect) list_.push_back(v);
  }

  [[nodiscard]] Value result() const {
    switch (agg_.fn) {
      case AggFn::Count: return Value(static_cast<std::int64_t>(count_));
      case AggFn::Collect: return Value(list_);
      case AggFn::Sum: {
        constexpr __int128 kMax = std::numeric_limits<std::int64_t>::max();
        constexpr __int128 kMin = std::numeric_limits<std::int64_t>::min();
        if (!any_float_ && int_sum_ <= kMax && int_sum_ >= kMin)
          return Value(static_cast<std::int64_t>(int_sum_));
        return Value(static_cast<double>(int_sum_) + float_sum_);
      }
    }
    return {};
  }

 private:
  const Aggregate& agg_;
  std::size_t count_ = 0;
  __int128 int_sum_ = 0;
  double float_sum_ = 0.0;
  bool any_float_ = false;
  std::set<Value, ValueOrderLess> seen_;
  Value::List list_;
};

void gather_aggregates(const Expr& e, std::vector<const Aggregate*>& out) {
  std::visit(
      [&](const auto& n) {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, Aggregate>) {
          out.push_back(&n);
        } else if constexpr (std::is_same_v<T, Comparison> || std::is_same_v<T, Logical>) {
          gather_aggregates(*n.lhs, out);
          gather_aggregates(*n.rhs, out);
        } else if constexpr (std::is_same_v<T, Not> || std::is_same_v<T, IsNull>) {
          gather_aggregates(*n.operand, out);
        }
      },
      e.node);
}

class Matcher {
 public:
  Matcher(const Plan& plan, const store::Graph& g) : plan_(plan), g_(g) {
    nodes_.assign(plan.nodes.size(), kUnbound);
    rels_.assign(plan.rels.size(), kUnbound);
    for (std::size_t i = 0; i < plan.nodes.size(); ++i)
      if (plan.nodes[i].named) slots_.emplace(plan.nodes[i].var, std::make_pair(true, i));
    for (std::size_t i = 0; i < plan.rels.size(); ++i)
      if (plan.rels[i].named) slots_.emplace(plan.rels[i].var, std::make_pair(false, i));
    values_.resize(plan.nodes.size() + plan.rels.size());
    scope_ = [this](std::string_view var) -> const Value* {
      auto it = slots_.find(std::string(var));
      if (it == slots_.end()) return nullptr;
      const auto [is_node, i] = it->second;
      const std::uint32_t raw = is_node ? nodes_[i] : rels_[i];
      if (raw == kUnbound) return nullptr;
      Value& slot = values_[is_node ? i : plan_.nodes.size() + i];
      slot = is_node ? Value(NodeRef{static_cast<store::NodeId>(raw)}) : Value(EdgeRef{static_cast<store::EdgeId>(raw)});
      return &slot;
    };
  }

  // Calls `emit` once per complete binding, in enumeration order.
  template <class Emit>
  void run(const Emit& emit) {
    step(0, emit);
  }

  [[nodiscard]] const Scope& scope() const { return scope_; }

 private:
  bool node_ok(std::size_t slot, store::NodeId id) const {
    const NodeSlot& s = plan_.nodes[slot];
    const store::Node& n = g_.node(id);
    for (const auto& l : s.labels)
      if (n.label != l) return false;
    for (const auto& [key, v] : s.props) {
      const store::PropertyValue* p = n.prop(key);
      if (!p) return false;
      auto c = compare(Value::from_property(*p), v);
      if (!c || *c != std::partial_ordering::equivalent) return false;
    }
    return true;
  }

  bool filters_ok(const PlanStep& st) const {
    for (const auto& f : st.filters)
      if (!is_true(evaluate(*f, g_, scope_))) return false;
    return true;
  }

  bool edge_free(std::uint32_t e) const {
    return std::find(rels_.begin(), rels_.end(), e) == rels_.end();
  }

  template <class Emit>
  void bind_node_then(std::size_t idx, std::size_t slot, store::NodeId id, const Emit& emit) {
    const std::uint32_t prev = nodes_[slot];
    if (prev != kUnbound) {
      if (prev != store::raw(id)) return;
      if (filters_ok(plan_.steps[idx])) step(idx + 1, emit);
      return;
    }
    if (!node_ok(slot, id)) return;
    nodes_[slot] = store::raw(id);
    if (filters_ok(plan_.steps[idx])) step(idx + 1, emit);
    nodes_[slot] = kUnbound;
  }

  template <class Emit>
  void step(std::size_t idx, const Emit& emit) {
    if (idx == plan_.steps.size()) {
      emit();
      return;
    }
    const PlanStep& st = plan_.steps[idx];
    const auto node_slot = static_cast<std::size_t>(st.node);
    if (st.kind == PlanStep::Kind::Scan) {
      const NodeSlot& ns = plan_.nodes[node_slot];
      if (ns.labels.empty()) {
        for (const auto& n : g_.nodes()) bind_node_then(idx, node_slot, n.id, emit);
        return;
      }
      std::optional<store::PropertyValue> probe_value;
      if (st.probe_key) {
        for (const auto& [k, v] : ns.props)
          if (k == *st.probe_key) probe_value = as_property(v);
        if (!probe_value) return;  // null literal matches nothing
      }
      const auto candidates = g_.nodes_by_label_prop(
          ns.labels.front(), st.probe_key ? std::optional<std::string_view>(*st.probe_key) : std::nullopt,
          probe_value);
      for (auto id : candidates) bind_node_then(idx, node_slot, id, emit);
      return;
    }

    const auto rel_slot = static_cast<std::size_t>(st.rel);
    const RelSlot& rs = plan_.rels[rel_slot];
    const auto from = static_cast<store::NodeId>(nodes_[static_cast<std::size_t>(st.from)]);
    const bool from_left = st.from == rs.left;
    // Direction of the edge as stored, seen from `from`.
    const bool want_out = rs.dir == RelDir::Both || (rs.dir == RelDir::Right) == from_left;
    const bool want_in = rs.dir == RelDir::Both || (rs.dir == RelDir::Left) == from_left;

    auto try_edge = [&](store::EdgeId eid, store::NodeId other) {
      const store::Edge& e = g_.edge(eid);
      if (e.type != rs.type || !edge_free(store::raw(eid))) return;
      rels_[rel_slot] = store::raw(eid);
      bind_node_then(idx, node_slot, other, emit);
      rels_[rel_slot] = kUnbound;
    };
    if (want_out)
      for (auto eid : g_.out_edges(from)) try_edge(eid, g_.edge(eid).dst);
    if (want_in)
      for (auto eid : g_.in_edges(from)) {
        const store::Edge& e = g_.edge(eid);
        // A self-loop was already seen on the outgoing side.
        if (want_out && e.src == e.dst) continue;
        try_edge(eid, e.src);
      }
  }

  const Plan& plan_;
  const store::Graph& g_;
  std::vector<std::uint32_t> nodes_;
  std::vector<std::uint32_t> rels_;
  std::unordered_map<std::string, std::pair<bool, std::size_t>> slots_;
  mutable std::vector<Value> values_;
  Scope scope_;
};

}  // namespace

ResultTable execute(const Query& q, const store::Graph& g, const ExecOptions& options) {
  const auto started = std::chrono::steady_clock::now();
  const Plan plan = plan_query(q, g, options.schema, options.plan);

  ResultTable table;
  table.graph = &g;
  table.stats.cross_product = plan.cross_product;
  for (const auto& item : q.items) table.columns.push_back(column_name(item));

  bool aggregating = false;
  for (const auto& item : q.items) aggregating = aggregating || contains_aggregate(*item.expr);

  // ORDER BY keys: a returned column index, or an expression evaluated on
  // the binding (plain projections only).
  struct SortKey {
    int column = -1;
    ExprPtr expr;
    bool descending = false;
  };
  std::vector<SortKey> keys;
  for (const auto& o : q.order_by) {
    SortKey k{-1, o.expr, o.descending};
    for (std::size_t i = 0; i < q.items.size() && k.column < 0; ++i) {
      if (auto* v = std::get_if<Variable>(&o.expr->node); v && q.items[i].alias == v->name) k.column = static_cast<int>(i);
    }
    for (std::size_t i = 0; i < q.items.size() && k.column < 0; ++i)
      if (equal(*o.expr, *q.items[i].expr)) k.column = static_cast<int>(i);
    keys.push_back(k);
  }

  Matcher matcher(plan, g);
  std::vector<std::vector<Value>> sort_values;  // parallel to rows

  if (!aggregating) {
    std::set<std::vector<Value>, RowLess> seen;
    matcher.run([&] {
      ++table.stats.matched;
      std::vector<Value> row;
      row.reserve(q.items.size());
      for (const auto& item : q.items) row.push_back(evaluate(*item.expr, g, matcher.scope()));
      if (q.distinct && !seen.insert(row).second) return;
      std::vector<Value> sv;
      for (const auto& k : keys)
        if (k.column < 0) {
          // An alias that shadows nothing: resolved to a column above.
          sv.push_back(evaluate(*k.expr, g, matcher.scope()));
        }
      sort_values.push_back(std::move(sv));
      table.rows.push_back(std::move(row));
    });
  } else {
    std::vector<const Aggregate*> aggs;
    std::vector<std::size_t> key_items;
    for (std::size_t i = 0; i < q.items.size(); ++i) {
      if (contains_aggregate(*q.items[i].expr)) {
        gather_aggregates(*q.items[i].expr, aggs);
      } else {
        key_items.push_back(i);
      }
    }
    struct Group {
      std::vector<Value> key;
      std::vector<Accumulator> acc;
    };
    std::vector<Group> groups;
    std::map<std::vector<Value>, std::size_t, RowLess> index;
    auto new_group = [&](std::vector<Value> key) {
      Group grp{std::move(key), {}};
      for (const auto* a : aggs) grp.acc.emplace_back(*a);
      groups.push_back(std::move(grp));
      return groups.size() - 1;
    };
    matcher.run([&] {
      ++table.stats.matched;
      std::vector<Value> key;
      for (auto i : key_items) key.push_back(evaluate(*q.items[i].expr, g, matcher.scope()));
      auto it = index.find(key);
      const std::size_t gi = it != index.end() ? it->second : index.emplace(key, new_group(key)).first->second;
      for (std::size_t a = 0; a < aggs.size(); ++a)
        groups[gi].acc[a].add(aggs[a]->arg ? evaluate(*aggs[a]->arg, g, matcher.scope()) : Value());
    });
    if (groups.empty() && key_items.empty()) new_group({});

    const Scope no_vars = [](std::string_view) -> const Value* { return nullptr; };
    std::set<std::vector<Value>, RowLess> seen;
    for (const auto& grp : groups) {
      AggregateValues lookup = [&](const Aggregate& a) {
        for (std::size_t i = 0; i < aggs.size(); ++i)
          if (aggs[i] == &a) return grp.acc[i].result();
        throw SemanticError("internal: aggregate not tracked");
      };
      std::vector<Value> row(q.items.size());
      std::size_t k = 0;
      for (std::size_t i = 0; i < q.items.size(); ++i) {
        if (k < key_items.size() && key_items[k] == i) {
          row[i] = grp.key[k++];
        } else {
          row[i] = evaluate(*q.items[i].expr, g, no_vars, &lookup);
        }
      }
      if (q.distinct && !seen.insert(row).second) continue;
      table.rows.push_back(std::move(row));
      sort_values.emplace_back();
    }
  }

  if (!keys.empty()) {
    std::vector<std::size_t> order(table.rows.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    auto key_value = [&](std::size_t row, std::size_t k, std::size_t& extra) -> const Value& {
      if (keys[k].column >= 0) return table.rows[row][static_cast<std::size_t>(keys[k].column)];
      return sort_values[row][extra++];
    };
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      std::size_t ea = 0;
      std::size_t eb = 0;
      for (std::size_t k = 0; k < keys.size(); ++k) {
        const Value& va = key_value(a, k, ea);
        const Value& vb = key_value(b, k, eb);
        auto c = va.order(vb);
        if (c != 0) return keys[k].descending ? c > 0 : c < 0;
      }
      return false;
    });
    std::vector<std::vector<Value>> sorted;
    sorted.reserve(order.size());
    for (auto i : order) sorted.push_back(std::move(table.rows[i]));
    table.rows = std::move(sorted);
  }

  if (q.limit && table.rows.size() > static_cast<std::size_t>(*q.limit))
    table.rows.resize(static_cast<std::size_t>(*q.limit));

  table.stats.duration = std::chrono::steady_clock::now() - started;
  return table;
}

ResultTable execute(std::string_view cypher, const store::Graph& g, const ExecOptions& options) {
  return execute(parse(cypher), g, options);
}

std::string ResultTable::to_text() const {
  std::vector<std::vector<std::string>> cells;
  std::vector<std::size_t> width(columns.size());
  for (std::size_t c = 0; c < columns.size(); ++c) width[c] = columns[c].size();
  for (const auto& row : rows) {
    std::vector<std::string> line;
    for (std::size_t c = 0; c < row.size(); ++c) {
      line.push_back(render(row[c], graph));
      width[c] = std::max(width[c], line.back().size());
    }
    cells.push_back(std::move(line));
  }
  std::ostringstream os;
  auto emit = [&](const std::vector<std::string>& line) {
    for (std::size_t c = 0; c < line.size(); ++c) {
      if (c) os << " | ";
      os << line[c];
      if (c + 1 < line.size()) os << std::string(width[c] - line[c].size(), ' ');
    }
    os << "\n";
  };
  emit(columns);
  std::vector<std::string> rule;
  for (auto w : width) rule.emplace_back(w, '-');
  emit(rule);
  for (const auto& line : cells) emit(line);
  os << "(" << rows.size() << (rows.size() == 1 ? " row" : " rows") << ")\n";
  return os.str();
}

nlohmann::json ResultTable::to_json() const {
  nlohmann::json rows_json = nlohmann::json::array();
  for (const auto& row : rows) {
    nlohmann::json r = nlohmann::json::array();
    for (const auto& v : row) r.push_back(query::to_json(v, graph));
    rows_json.push_back(std::move(r));
  }
  return {{"columns", columns},
          {"rows", std::move(rows_json)},
          {"stats",
           {{"matched", stats.matched},
            {"duration_ms", static_cast<double>(stats.duration.count()) / 1e6},
            {"cross_product", stats.cross_product}}}};
}

}  // namespace pitchgraph::query
