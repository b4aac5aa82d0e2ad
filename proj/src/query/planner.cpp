#include "pitchgraph/query/planner.hpp"

#include <algorithm>
#include <map>
#include <numeric>

#include "pitchgraph/error.hpp"
#include "pitchgraph/kg/entity_dictionary.hpp"

namespace pitchgraph::query {

namespace {

constexpr std::size_t kSuggestDistance = 2;

std::vector<std::string> as_vector(const std::set<std::string>& s) { return {s.begin(), s.end()}; }

void require_known(const std::set<std::string>& known, const std::string& name, const char* what) {
  if (known.contains(name)) return;
  throw SemanticError(std::string("unknown ") + what + " '" + name + "'",
                      kg::nearest_name(name, as_vector(known), kSuggestDistance));
}

template <class F>
void for_each_subexpr(const Expr& e, const F& f) {
  f(e);
  std::visit(
      [&](const auto& n) {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, Comparison> || std::is_same_v<T, Logical>) {
          for_each_subexpr(*n.lhs, f);
          for_each_subexpr(*n.rhs, f);
        } else if constexpr (std::is_same_v<T, Not> || std::is_same_v<T, IsNull>) {
          for_each_subexpr(*n.operand, f);
        } else if constexpr (std::is_same_v<T, Aggregate>) {
          if (n.arg) for_each_subexpr(*n.arg, f);
        }
      },
      e.node);
}

class SemanticChecker {
 public:
  SemanticChecker(const Query& q, const Schema& s) : q_(q), s_(s) {}

  void run() {
    for (const auto& path : q_.match) {
      for (const auto& n : path.nodes) {
        if (n.label) require_known(s_.labels, *n.label, "label");
        for (const auto& [key, v] : n.props) require_known(s_.property_keys, key, "property key");
        if (n.var.empty()) continue;
        if (rel_vars_.contains(n.var))
          throw SemanticError("variable '" + n.var + "' is used for both a node and a relationship");
        node_vars_.insert(n.var);
      }
      for (const auto& r : path.rels) {
        require_known(s_.edge_types, r.type, "relationship type");
        if (r.var.empty()) continue;
        if (node_vars_.contains(r.var))
          throw SemanticError("variable '" + r.var + "' is used for both a node and a relationship");
        if (!rel_vars_.insert(r.var).second)
          throw SemanticError("relationship variable '" + r.var + "' is bound more than once");
      }
    }
    // Node variables appearing after a relationship of the same name in a
    // later path are caught above; catch the reverse order too.
    for (const auto& v : rel_vars_)
      if (node_vars_.contains(v))
        throw SemanticError("variable '" + v + "' is used for both a node and a relationship");

    if (q_.where) {
      if (contains_aggregate(*q_.where)) throw SemanticError("aggregate functions are not allowed in WHERE");
      check_expr(*q_.where, {});
    }

    bool aggregating = false;
    std::set<std::string> columns;
    for (const auto& item : q_.items) {
      check_expr(*item.expr, {});
      check_nesting(*item.expr);
      aggregating = aggregating || contains_aggregate(*item.expr);
      if (!columns.insert(column_name(item)).second)
        throw SemanticError("duplicate result column '" + column_name(item) + "'");
    }

    std::set<std::string> aliases;
    for (const auto& item : q_.items)
      if (item.alias) aliases.insert(*item.alias);
    for (const auto& o : q_.order_by) {
      if (aggregating || q_.distinct) {
        if (!resolves_to_column(*o.expr))
          throw SemanticError("ORDER BY after aggregation or DISTINCT must name a returned column: " +
                              to_cypher(*o.expr));
        continue;
      }
      if (contains_aggregate(*o.expr)) throw SemanticError("aggregate in ORDER BY of a non-aggregating query");
      check_expr(*o.expr, aliases);
    }
  }

 private:
  bool resolves_to_column(const Expr& e) const {
    for (const auto& item : q_.items) {
      if (auto* v = std::get_if<Variable>(&e.node); v && item.alias && *item.alias == v->name) return true;
      if (equal(e, *item.expr)) return true;
    }
    return false;
  }

  void check_expr(const Expr& e, const std::set<std::string>& extra) const {
    for_each_subexpr(e, [&](const Expr& sub) {
      if (auto* v = std::get_if<Variable>(&sub.node)) require_bound(v->name, extra);
      if (auto* p = std::get_if<PropertyAccess>(&sub.node)) {
        require_bound(p->var, {});
        require_known(s_.property_keys, p->key, "property key");
      }
    });
  }

  void check_nesting(const Expr& e) const {
    for_each_subexpr(e, [&](const Expr& sub) {
      if (auto* a = std::get_if<Aggregate>(&sub.node); a && a->arg && contains_aggregate(*a->arg))
        throw SemanticError("aggregate functions cannot be nested");
    });
  }

  void require_bound(const std::string& var, const std::set<std::string>& extra) const {
    if (node_vars_.contains(var) || rel_vars_.contains(var) || extra.contains(var)) return;
    std::vector<std::string> bound(node_vars_.begin(), node_vars_.end());
    bound.insert(bound.end(), rel_vars_.begin(), rel_vars_.end());
    throw SemanticError("variable '" + var + "' is not bound in MATCH",
                        kg::nearest_name(var, bound, kSuggestDistance));
  }

  const Query& q_;
  const Schema& s_;
  std::set<std::string> node_vars_;
  std::set<std::string> rel_vars_;
};

struct Estimate {
  std::size_t count = 0;
  std::optional<std::string> probe;
};

Estimate estimate(const NodeSlot& n, const store::Graph& g) {
  if (n.labels.empty()) return {g.node_count(), std::nullopt};
  const std::string& label = n.labels.front();
  for (const auto& other : n.labels)
    if (other != label) return {0, std::nullopt};
  Estimate best{g.label_count(label), std::nullopt};
  for (const auto& [key, v] : n.props) {
    std::size_t c = 0;
    switch (v.kind()) {
      case Value::Kind::Text: c = g.count_by_label_prop(label, key, store::PropertyValue(v.as_text())); break;
      case Value::Kind::Int: c = g.count_by_label_prop(label, key, store::PropertyValue(v.as_int())); break;
      case Value::Kind::Float: c = g.count_by_label_prop(label, key, store::PropertyValue(v.as_float())); break;
      case Value::Kind::Bool: c = g.count_by_label_prop(label, key, store::PropertyValue(v.as_bool())); break;
      default: c = 0; break;  // null never matches
    }
    if (!best.probe || c < best.count) best = {c, key};
  }
  return best;
}

std::string slot_text(const NodeSlot& n) {
  std::string s = "(" + (n.named ? n.var : std::string());
  for (const auto& l : n.labels) s += ":" + l;
  return s + ")";
}

}  // namespace

Schema Schema::of(const store::Graph& g) {
  Schema s;
  for (auto& l : g.labels()) {
    for (auto& k : g.property_keys(l)) s.property_keys.insert(k);
    s.labels.insert(std::move(l));
  }
  for (auto& t : g.edge_types()) s.edge_types.insert(std::move(t));
  for (auto& k : g.edge_property_keys()) s.property_keys.insert(std::move(k));
  return s;
}

Schema Schema::knowledge_graph() {
  Schema s;
  s.labels = {"Game", "Team", "Event", "Player", "Fact"};
  for (auto t : store::known_edge_types()) s.edge_types.emplace(t);
  s.property_keys = {
      // Game
      "game_id", "home_team", "away_team", "score", "score_home", "score_away", "date", "season",
      "league", "venue", "referee", "round", "home_coach", "away_coach",
      // Team, Player
      "name",
      // Event
      "half", "clock", "game_time", "team", "visibility", "position_ms",
      // Fact
      "kind", "type", "time", "detail", "subject_player",
      // relationships
      "side", "coach", "shirt_number", "lineup_role",
  };
  return s;
}

Schema Schema::merged(const Schema& other) const {
  Schema s = *this;
  s.labels.insert(other.labels.begin(), other.labels.end());
  s.edge_types.insert(other.edge_types.begin(), other.edge_types.end());
  s.property_keys.insert(other.property_keys.begin(), other.property_keys.end());
  return s;
}

void check_semantics(const Query& q, const Schema& schema) { SemanticChecker(q, schema).run(); }

std::vector<ExprPtr> conjuncts(const ExprPtr& where) {
  std::vector<ExprPtr> out;
  if (!where) return out;
  std::vector<ExprPtr> stack{where};
  while (!stack.empty()) {
    ExprPtr e = stack.back();
    stack.pop_back();
    if (auto* l = std::get_if<Logical>(&e->node); l && l->op == LogicOp::And) {
      stack.push_back(l->rhs);
      stack.push_back(l->lhs);
    } else {
      out.push_back(e);
    }
  }
  return out;
}

Plan plan_query(const Query& q, const store::Graph& g, const Schema* schema, PlanOptions options) {
  if (schema) {
    check_semantics(q, *schema);
  } else {
    check_semantics(q, Schema::of(g).merged(Schema::knowledge_graph()));
  }

  Plan plan;
  std::map<std::string, int> node_of;
  auto node_slot = [&](const NodePattern& n) {
    int slot;
    if (n.var.empty()) {
      slot = static_cast<int>(plan.nodes.size());
      plan.nodes.push_back(NodeSlot{});
    } else if (auto it = node_of.find(n.var); it != node_of.end()) {
      slot = it->second;
    } else {
      slot = static_cast<int>(plan.nodes.size());
      plan.nodes.push_back(NodeSlot{n.var, true, {}, {}});
      node_of.emplace(n.var, slot);
    }
    NodeSlot& s = plan.nodes[static_cast<std::size_t>(slot)];
    if (n.label && std::find(s.labels.begin(), s.labels.end(), *n.label) == s.labels.end())
      s.labels.push_back(*n.label);
    s.props.insert(s.props.end(), n.props.begin(), n.props.end());
    return slot;
  };
  for (const auto& path : q.match) {
    std::vector<int> slots;
    for (const auto& n : path.nodes) slots.push_back(node_slot(n));
    for (std::size_t i = 0; i < path.rels.size(); ++i) {
      const auto& r = path.rels[i];
      plan.rels.push_back(RelSlot{r.var, !r.var.empty(), r.type, r.dir, slots[i], slots[i + 1]});
    }
  }

  const std::size_t nn = plan.nodes.size();
  std::vector<Estimate> est(nn);
  for (std::size_t i = 0; i < nn; ++i) est[i] = estimate(plan.nodes[i], g);

  // Connected components over node slots.
  std::vector<std::size_t> parent(nn);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (const auto& r : plan.rels) parent[find(static_cast<std::size_t>(r.left))] = find(static_cast<std::size_t>(r.right));

  std::vector<bool> bound(nn, false);
  std::vector<bool> rel_done(plan.rels.size(), false);
  std::size_t components = 0;
  for (std::size_t first = 0; first < nn; ++first) {
    if (bound[first]) continue;
    ++components;
    const std::size_t root = find(first);
    // Start node within this component.
    std::size_t start = first;
    for (std::size_t i = first; i < nn; ++i) {
      if (find(i) != root) continue;
      const bool better = options.worst_order ? est[i].count >= est[start].count : est[i].count < est[start].count;
      if (better) start = i;
    }
    PlanStep scan;
    scan.kind = PlanStep::Kind::Scan;
    scan.node = static_cast<int>(start);
    scan.probe_key = est[start].probe;
    scan.estimate = est[start].count;
    plan.steps.push_back(scan);
    bound[start] = true;

    while (true) {
      int pick = -1;
      for (std::size_t r = 0; r < plan.rels.size(); ++r) {
        if (rel_done[r]) continue;
        const auto& rel = plan.rels[r];
        const bool lb = bound[static_cast<std::size_t>(rel.left)];
        const bool rb = bound[static_cast<std::size_t>(rel.right)];
        if (!lb && !rb) continue;
        if (pick < 0 || options.worst_order) {
          pick = static_cast<int>(r);
          continue;
        }
        const auto& cur = plan.rels[static_cast<std::size_t>(pick)];
        auto cost = [&](const RelSlot& x) -> std::size_t {
          const bool both = bound[static_cast<std::size_t>(x.left)] && bound[static_cast<std::size_t>(x.right)];
          if (both) return 0;
          const int other = bound[static_cast<std::size_t>(x.left)] ? x.right : x.left;
          return 1 + est[static_cast<std::size_t>(other)].count;
        };
        if (cost(rel) < cost(cur)) pick = static_cast<int>(r);
      }
      if (pick < 0) break;
      const auto& rel = plan.rels[static_cast<std::size_t>(pick)];
      PlanStep ex;
      ex.kind = PlanStep::Kind::Expand;
      ex.rel = pick;
      ex.from = bound[static_cast<std::size_t>(rel.left)] ? rel.left : rel.right;
      ex.node = ex.from == rel.left ? rel.right : rel.left;
      ex.estimate = est[static_cast<std::size_t>(ex.node)].count;
      plan.steps.push_back(ex);
      rel_done[static_cast<std::size_t>(pick)] = true;
      bound[static_cast<std::size_t>(ex.node)] = true;
    }
  }
  plan.cross_product = components > 1;

  // Attach each WHERE conjunct to the first step that binds all its
  // variables.
  std::map<std::string, std::size_t> bound_at;
  for (std::size_t i = 0; i < plan.steps.size(); ++i) {
    const auto& st = plan.steps[i];
    const auto& n = plan.nodes[static_cast<std::size_t>(st.node)];
    if (n.named) bound_at.try_emplace(n.var, i);
    if (st.rel >= 0) {
      const auto& r = plan.rels[static_cast<std::size_t>(st.rel)];
      if (r.named) bound_at.try_emplace(r.var, i);
    }
  }
  for (const auto& c : conjuncts(q.where)) {
    std::size_t at = 0;
    for (const auto& v : referenced_vars(*c)) at = std::max(at, bound_at.at(v));
    plan.steps[at].filters.push_back(c);
  }
  return plan;
}

std::string Plan::explain() const {
  std::string out;
  for (const auto& st : steps) {
    if (st.kind == PlanStep::Kind::Scan) {
      out += "Scan " + slot_text(nodes[static_cast<std::size_t>(st.node)]);
      const auto& n = nodes[static_cast<std::size_t>(st.node)];
      out += st.probe_key ? " via index on " + *st.probe_key
                          : std::string(n.labels.empty() ? " via all nodes" : " via label");
    } else {
      const auto& r = rels[static_cast<std::size_t>(st.rel)];
      out += "Expand " + slot_text(nodes[static_cast<std::size_t>(st.from)]) + " -[:" + r.type + "]- " +
             slot_text(nodes[static_cast<std::size_t>(st.node)]);
    }
    out += " est=" + std::to_string(st.estimate) + "\n";
    for (const auto& f : st.filters) out += "  Filter " + to_cypher(*f) + "\n";
  }
  if (cross_product) out += "warning: disconnected pattern, cross product\n";
  return out;
}

}  // namespace pitchgraph::query
