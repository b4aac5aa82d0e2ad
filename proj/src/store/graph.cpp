#include "pitchgraph/store/graph.hpp"

#include <algorithm>
#include <array>

#include "pitchgraph/error.hpp"

namespace pitchgraph::store {

namespace {

constexpr std::array<std::string_view, 14> kEdgeTypes{
    "PARTICIPATED_IN", "HOME_TEAM", "AWAY_TEAM", "WINNER",  "LOSER",
    "ASSOCIATED_TO",   "IS_PART_OF", "PLAYED_IN", "PLAYS_FOR", "RECEIVED",
    "SCORED",          "COMMITTED",  "ASSISTED_BY", "SUBSTITUTED_WITH",
};

}  // namespace

std::span<const std::string_view> known_edge_types() { return kEdgeTypes; }

bool is_known_edge_type(std::string_view type) {
  return std::find(kEdgeTypes.begin(), kEdgeTypes.end(), type) != kEdgeTypes.end();
}

void Graph::require_mutable() const {
  if (frozen_) throw FrozenGraphError("graph is frozen");
}

void Graph::require_node(NodeId id) const {
  if (!contains(id)) throw UnknownNodeError("unknown node id " + std::to_string(raw(id)));
}

NodeId Graph::add_node(std::string label, PropertyMap props) {
  require_mutable();
  if (label.empty()) throw ValueError("node label must be nonempty");
  const auto id = static_cast<NodeId>(nodes_.size());
  label_index_[label].push_back(id);
  auto& by_key = prop_index_[label];
  for (const auto& [key, value] : props) {
    auto kit = by_key.find(key);
    if (kit == by_key.end()) kit = by_key.emplace(key, ValueIndex{}).first;
    kit->second[value].push_back(id);
  }
  nodes_.push_back(Node{id, std::move(label), std::move(props)});
  out_adj_.emplace_back();
  in_adj_.emplace_back();
  return id;
}

EdgeId Graph::add_edge(NodeId src, NodeId dst, std::string type, PropertyMap props) {
  require_mutable();
  require_node(src);
  require_node(dst);
  const auto id = static_cast<EdgeId>(edges_.size());
  out_adj_[raw(src)].push_back(id);
  in_adj_[raw(dst)].push_back(id);
  ++edge_type_counts_[type];
  edges_.push_back(Edge{id, src, dst, std::move(type), std::move(props)});
  return id;
}

const Node& Graph::node(NodeId id) const {
  require_node(id);
  return nodes_[raw(id)];
}

const Edge& Graph::edge(EdgeId id) const {
  if (raw(id) >= edges_.size()) throw UnknownNodeError("unknown edge id " + std::to_string(raw(id)));
  return edges_[raw(id)];
}

std::span<const EdgeId> Graph::out_edges(NodeId id) const {
  require_node(id);
  return out_adj_[raw(id)];
}

std::span<const EdgeId> Graph::in_edges(NodeId id) const {
  require_node(id);
  return in_adj_[raw(id)];
}

std::vector<NodeId> Graph::nodes_by_label_prop(std::string_view label,
                                               std::optional<std::string_view> key,
                                               const std::optional<PropertyValue>& value) const {
  if (!key) {
    auto it = label_index_.find(label);
    return it == label_index_.end() ? std::vector<NodeId>{} : it->second;
  }
  auto lit = prop_index_.find(label);
  if (lit == prop_index_.end()) return {};
  auto kit = lit->second.find(*key);
  if (kit == lit->second.end()) return {};
  if (value) {
    auto vit = kit->second.find(*value);
    return vit == kit->second.end() ? std::vector<NodeId>{} : vit->second;
  }
  // Key present with any value.
  std::vector<NodeId> out;
  for (const auto& [v, ids] : kit->second) out.insert(out.end(), ids.begin(), ids.end());
  std::sort(out.begin(), out.end());
  return out;
}

std::size_t Graph::count_by_label_prop(std::string_view label, std::optional<std::string_view> key,
                                       const std::optional<PropertyValue>& value) const {
  if (!key) return label_count(label);
  auto lit = prop_index_.find(label);
  if (lit == prop_index_.end()) return 0;
  auto kit = lit->second.find(*key);
  if (kit == lit->second.end()) return 0;
  if (value) {
    auto vit = kit->second.find(*value);
    return vit == kit->second.end() ? 0 : vit->second.size();
  }
  std::size_t n = 0;
  for (const auto& [v, ids] : kit->second) n += ids.size();
  return n;
}

std::vector<Neighbor> Graph::neighbors(NodeId id, std::optional<std::string_view> type,
                                       Direction direction) const {
  require_node(id);
  std::vector<Neighbor> out;
  auto collect = [&](const std::vector<EdgeId>& list, bool outgoing) {
    for (EdgeId e : list) {
      const Edge& edge = edges_[raw(e)];
      if (type && edge.type != *type) continue;
      out.push_back({e, outgoing ? edge.dst : edge.src});
    }
  };
  if (direction != Direction::In) collect(out_adj_[raw(id)], true);
  if (direction != Direction::Out) collect(in_adj_[raw(id)], false);
  // A self-loop shows up once per direction under Both.
  std::stable_sort(out.begin(), out.end(),
                   [](const Neighbor& a, const Neighbor& b) { return a.edge < b.edge; });
  return out;
}

std::vector<std::string> Graph::labels() const {
  std::vector<std::string> out;
  for (const auto& [label, ids] : label_index_) out.push_back(label);
  return out;
}

std::vector<std::string> Graph::edge_types() const {
  std::vector<std::string> out;
  for (const auto& [type, n] : edge_type_counts_) out.push_back(type);
  return out;
}

std::size_t Graph::label_count(std::string_view label) const {
  auto it = label_index_.find(label);
  return it == label_index_.end() ? 0 : it->second.size();
}

std::size_t Graph::edge_type_count(std::string_view type) const {
  auto it = edge_type_counts_.find(type);
  return it == edge_type_counts_.end() ? 0 : it->second;
}

std::vector<std::string> Graph::property_keys(std::string_view label) const {
  std::vector<std::string> out;
  auto it = prop_index_.find(label);
  if (it == prop_index_.end()) return out;
  for (const auto& [key, idx] : it->second) out.push_back(key);
  return out;
}

std::vector<std::string> Graph::edge_property_keys() const {
  std::set<std::string> keys;
  for (const auto& e : edges_)
    for (const auto& [k, v] : e.props) keys.insert(k);
  return {keys.begin(), keys.end()};
}

double density(const Graph& g) {
  const auto v = static_cast<double>(g.node_count());
  if (g.node_count() < 2) throw DegenerateGraphError("density needs at least two nodes");
  return static_cast<double>(g.edge_count()) / (v * (v - 1.0));
}

struct GraphAuditor {
  static std::vector<AuditFinding> run(const Graph& g) {
    std::vector<AuditFinding> out;
    auto report = [&](std::string what) { out.push_back({std::move(what)}); };
    const std::size_t n = g.nodes_.size();

    if (g.out_adj_.size() != n || g.in_adj_.size() != n) {
      report("adjacency tables do not match node table size");
      return out;
    }

    std::size_t out_total = 0;
    std::size_t in_total = 0;
    for (std::size_t i = 0; i < n; ++i) {
      if (raw(g.nodes_[i].id) != i) report("node " + std::to_string(i) + " has mismatched id");
      if (g.nodes_[i].label.empty()) report("node " + std::to_string(i) + " has empty label");
      out_total += g.out_adj_[i].size();
      in_total += g.in_adj_[i].size();
      for (EdgeId e : g.out_adj_[i])
        if (raw(e) >= g.edges_.size() || raw(g.edges_[raw(e)].src) != i)
          report("out-adjacency of node " + std::to_string(i) + " lists foreign edge " +
                 std::to_string(raw(e)));
      for (EdgeId e : g.in_adj_[i])
        if (raw(e) >= g.edges_.size() || raw(g.edges_[raw(e)].dst) != i)
          report("in-adjacency of node " + std::to_string(i) + " lists foreign edge " +
                 std::to_string(raw(e)));
    }
    if (out_total != g.edges_.size() || in_total != g.edges_.size())
      report("adjacency entry totals (" + std::to_string(out_total) + " out, " +
             std::to_string(in_total) + " in) differ from edge count " +
             std::to_string(g.edges_.size()));

    std::map<std::string, std::size_t, std::less<>> type_counts;
    for (std::size_t i = 0; i < g.edges_.size(); ++i) {
      const Edge& e = g.edges_[i];
      if (raw(e.id) != i) report("edge " + std::to_string(i) + " has mismatched id");
      if (raw(e.src) >= n || raw(e.dst) >= n) report("edge " + std::to_string(i) + " has a dangling endpoint");
      if (!is_known_edge_type(e.type)) report("edge " + std::to_string(i) + " has unknown type " + e.type);
      ++type_counts[e.type];
    }
    if (type_counts != g.edge_type_counts_) report("edge type counters disagree with edge table");

    // label index
    std::map<std::string, std::vector<NodeId>, std::less<>> labels;
    for (const auto& node : g.nodes_) labels[node.label].push_back(node.id);
    if (labels != g.label_index_) report("label index disagrees with node table");

    // property index: rebuild and compare bucket by bucket
    std::size_t indexed = 0;
    for (const auto& [label, by_key] : g.prop_index_)
      for (const auto& [key, by_value] : by_key)
        for (const auto& [value, ids] : by_value)
          for (NodeId id : ids) {
            ++indexed;
            if (raw(id) >= n) {
              report("property index references unknown node " + std::to_string(raw(id)));
              continue;
            }
            const Node& node = g.nodes_[raw(id)];
            const PropertyValue* v = node.prop(key);
            if (node.label != label || v == nullptr || v->total_order(value) != 0)
              report("property index entry (" + label + ", " + key + ", " + value.to_string() +
                     ") does not match node " + std::to_string(raw(id)));
          }
    std::size_t props = 0;
    for (const auto& node : g.nodes_) {
      props += node.props.size();
      for (const auto& [key, value] : node.props) {
        const auto ids = g.nodes_by_label_prop(node.label, key, value);
        if (!std::binary_search(ids.begin(), ids.end(), node.id))
          report("node " + std::to_string(raw(node.id)) + " property " + key + " missing from index");
      }
    }
    if (props != indexed) report("property index size differs from node property count");

    if (n >= 2 && density(g) > 1.0) report("density exceeds 1 (parallel edges)");
    return out;
  }
};

std::vector<AuditFinding> audit(const Graph& g) { return GraphAuditor::run(g); }

}  // namespace pitchgraph::store
