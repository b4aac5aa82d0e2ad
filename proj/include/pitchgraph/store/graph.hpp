#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "pitchgraph/store/property.hpp"

namespace pitchgraph::store {

enum class NodeId : std::uint32_t {};
enum class EdgeId : std::uint32_t {};

constexpr std::uint32_t raw(NodeId id) { return static_cast<std::uint32_t>(id); }
constexpr std::uint32_t raw(EdgeId id) { return static_cast<std::uint32_t>(id); }

enum class Direction { Out, In, Both };

struct Node {
  NodeId id;
  std::string label;
  PropertyMap props;

  [[nodiscard]] const PropertyValue* prop(std::string_view key) const {
    auto it = props.find(key);
    return it == props.end() ? nullptr : &it->second;
  }
};

struct Edge {
  EdgeId id;
  NodeId src;
  NodeId dst;
  std::string type;
  PropertyMap props;

  [[nodiscard]] const PropertyValue* prop(std::string_view key) const {
    auto it = props.find(key);
    return it == props.end() ? nullptr : &it->second;
  }
};

struct Neighbor {
  EdgeId edge;
  NodeId node;
  bool operator==(const Neighbor&) const = default;
};

// The closed relationship vocabulary of the two knowledge graphs.
std::span<const std::string_view> known_edge_types();
bool is_known_edge_type(std::string_view type);

// Append-only directed labeled property graph. Node and edge ids are dense
// and assigned in insertion order. Every (label, key, value) triple is
// indexed; lookups on a key never scan.
//
// Mutation is single-threaded. After freeze() the graph is immutable and
// all const members are safe to call concurrently.
class Graph {
 public:
  Graph() = default;

  NodeId add_node(std::string label, PropertyMap props = {});
  EdgeId add_edge(NodeId src, NodeId dst, std::string type, PropertyMap props = {});

  void freeze() { frozen_ = true; }
  [[nodiscard]] bool frozen() const { return frozen_; }

  [[nodiscard]] std::size_t node_count() const { return nodes_.size(); }
  [[nodiscard]] std::size_t edge_count() const { return edges_.size(); }
  [[nodiscard]] bool contains(NodeId id) const { return raw(id) < nodes_.size(); }

  [[nodiscard]] const Node& node(NodeId id) const;
  [[nodiscard]] const Edge& edge(EdgeId id) const;
  [[nodiscard]] std::span<const Node> nodes() const { return nodes_; }
  [[nodiscard]] std::span<const Edge> edges() const { return edges_; }

  [[nodiscard]] std::span<const EdgeId> out_edges(NodeId id) const;
  [[nodiscard]] std::span<const EdgeId> in_edges(NodeId id) const;

  // Ids sorted ascending. Unknown label -> empty. `value` without `key`
  // is ignored.
  [[nodiscard]] std::vector<NodeId> nodes_by_label_prop(
      std::string_view label, std::optional<std::string_view> key = std::nullopt,
      const std::optional<PropertyValue>& value = std::nullopt) const;

  // Size of the candidate set nodes_by_label_prop would return, without
  // materializing it.
  [[nodiscard]] std::size_t count_by_label_prop(std::string_view label,
                                                std::optional<std::string_view> key = std::nullopt,
                                                const std::optional<PropertyValue>& value =
                                                    std::nullopt) const;

  // Ordered by edge id. Throws UnknownNodeError.
  [[nodiscard]] std::vector<Neighbor> neighbors(NodeId id, std::optional<std::string_view> type,
                                                Direction direction) const;

  [[nodiscard]] std::vector<std::string> labels() const;
  [[nodiscard]] std::vector<std::string> edge_types() const;
  [[nodiscard]] std::size_t label_count(std::string_view label) const;
  [[nodiscard]] std::size_t edge_type_count(std::string_view type) const;
  // Property keys seen on nodes of `label`, sorted.
  [[nodiscard]] std::vector<std::string> property_keys(std::string_view label) const;
  [[nodiscard]] std::vector<std::string> edge_property_keys() const;

 private:
  friend struct GraphAuditor;
  friend struct GraphTestAccess;

  using ValueIndex = std::map<PropertyValue, std::vector<NodeId>, PropertyTotalLess>;
  using KeyIndex = std::map<std::string, ValueIndex, std::less<>>;

  void require_mutable() const;
  void require_node(NodeId id) const;

  std::vector<Node> nodes_;
  std::vector<Edge> edges_;
  std::vector<std::vector<EdgeId>> out_adj_;
  std::vector<std::vector<EdgeId>> in_adj_;
  std::map<std::string, std::vector<NodeId>, std::less<>> label_index_;
  std::map<std::string, KeyIndex, std::less<>> prop_index_;
  std::map<std::string, std::size_t, std::less<>> edge_type_counts_;
  bool frozen_ = false;
};

// |E| / (|V| (|V| - 1)). Parallel edges count individually, so multigraphs
// may exceed 1. Throws DegenerateGraphError when |V| < 2.
double density(const Graph& g);

struct AuditFinding {
  std::string what;
};

// Empty iff the adjacency lists, label index and property index agree
// exactly with the node and edge tables, every edge type is known and the
// density does not exceed 1.
std::vector<AuditFinding> audit(const Graph& g);

}  // namespace pitchgraph::store
