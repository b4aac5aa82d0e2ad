#include "pitchgraph/query/value.hpp"

#include <cmath>
#include <sstream>

namespace pitchgraph::query {

namespace {

int rank(Value::Kind k) {
  switch (k) {
    case Value::Kind::Node: return 0;
    case Value::Kind::Edge: return 1;
    case Value::Kind::List: return 2;
    case Value::Kind::Text: return 3;
    case Value::Kind::Bool: return 4;
    case Value::Kind::Int:
    case Value::Kind::Float: return 5;
    case Value::Kind::Null: return 6;
  }
  return 7;
}

store::PropertyValue as_property(const Value& v) {
  if (v.kind() == Value::Kind::Int) return store::PropertyValue(v.as_int());
  return store::PropertyValue(v.as_float());
}

std::string render_props(const store::PropertyMap& props) {
  std::string out = "{";
  bool first = true;
  for (const auto& [k, v] : props) {
    if (!first) out += ", ";
    first = false;
    out += k + ": " + v.to_literal();
  }
  return out + "}";
}

}  // namespace

Value Value::from_property(const store::PropertyValue& p) {
  switch (p.tag()) {
    case store::PropertyValue::Tag::Text: return Value(p.as_text());
    case store::PropertyValue::Tag::Int: return Value(p.as_int());
    case store::PropertyValue::Tag::Float: return Value(p.as_float());
    case store::PropertyValue::Tag::Bool: return Value(p.as_bool());
  }
  return {};
}

std::weak_ordering Value::order(const Value& other) const {
  const int ra = rank(kind());
  const int rb = rank(other.kind());
  if (ra != rb) return ra <=> rb;
  switch (kind()) {
    case Kind::Null: return std::weak_ordering::equivalent;
    case Kind::Bool: return as_bool() <=> other.as_bool();
    case Kind::Int:
    case Kind::Float: return as_property(*this).total_order(as_property(other));
    case Kind::Text: return as_text() <=> other.as_text();
    case Kind::Node: return store::raw(as_node().id) <=> store::raw(other.as_node().id);
    case Kind::Edge: return store::raw(as_edge().id) <=> store::raw(other.as_edge().id);
    case Kind::List: {
      const auto& a = as_list();
      const auto& b = other.as_list();
      for (std::size_t i = 0; i < a.size() && i < b.size(); ++i)
        if (auto c = a[i].order(b[i]); c != 0) return c;
      return a.size() <=> b.size();
    }
  }
  return std::weak_ordering::equivalent;
}

std::optional<std::partial_ordering> compare(const Value& a, const Value& b) {
  using K = Value::Kind;
  if (a.is_null() || b.is_null()) return std::nullopt;
  if (a.is_numeric() && b.is_numeric()) {
    auto pa = a.kind() == K::Int ? store::PropertyValue(a.as_int()) : store::PropertyValue(a.as_float());
    auto pb = b.kind() == K::Int ? store::PropertyValue(b.as_int()) : store::PropertyValue(b.as_float());
    auto c = pa.compare(pb);
    if (!c || *c == std::partial_ordering::unordered) return std::nullopt;
    return c;
  }
  if (a.kind() != b.kind()) return std::nullopt;
  switch (a.kind()) {
    case K::Bool: return a.as_bool() <=> b.as_bool();
    case K::Text: return a.as_text() <=> b.as_text();
    case K::Node:
      return a.as_node() == b.as_node() ? std::partial_ordering::equivalent
                                        : std::partial_ordering::unordered;
    case K::Edge:
      return a.as_edge() == b.as_edge() ? std::partial_ordering::equivalent
                                        : std::partial_ordering::unordered;
    case K::List: {
      const auto& x = a.as_list();
      const auto& y = b.as_list();
      if (x.size() != y.size()) return std::partial_ordering::unordered;
      for (std::size_t i = 0; i < x.size(); ++i) {
        auto c = compare(x[i], y[i]);
        if (!c) return std::nullopt;
        if (*c != 0) return std::partial_ordering::unordered;
      }
      return std::partial_ordering::equivalent;
    }
    default: return std::nullopt;
  }
}

std::string Value::to_literal() const {
  switch (kind()) {
    case Kind::Null: return "null";
    case Kind::Bool: return as_bool() ? "true" : "false";
    case Kind::Int: return std::to_string(as_int());
    case Kind::Float: return store::PropertyValue(as_float()).to_string();
    case Kind::Text: return store::quote_text(as_text());
    case Kind::Node: return "node(" + std::to_string(store::raw(as_node().id)) + ")";
    case Kind::Edge: return "edge(" + std::to_string(store::raw(as_edge().id)) + ")";
    case Kind::List: {
      std::string out = "[";
      for (std::size_t i = 0; i < as_list().size(); ++i) {
        if (i) out += ", ";
        out += as_list()[i].to_literal();
      }
      return out + "]";
    }
  }
  return {};
}

std::string render(const Value& v, const store::Graph* g) {
  switch (v.kind()) {
    case Value::Kind::Text: return v.as_text();
    case Value::Kind::Node: {
      if (g == nullptr || !g->contains(v.as_node().id)) return v.to_literal();
      const auto& n = g->node(v.as_node().id);
      return "(:" + n.label + " " + render_props(n.props) + ")";
    }
    case Value::Kind::Edge: {
      if (g == nullptr || store::raw(v.as_edge().id) >= g->edge_count()) return v.to_literal();
      const auto& e = g->edge(v.as_edge().id);
      return "[:" + e.type + (e.props.empty() ? "" : " " + render_props(e.props)) + "]";
    }
    case Value::Kind::List: {
      std::string out;
      for (std::size_t i = 0; i < v.as_list().size(); ++i) {
        if (i) out += ", ";
        out += render(v.as_list()[i], g);
      }
      return "[" + out + "]";
    }
    default: return v.to_literal();
  }
}

nlohmann::json to_json(const Value& v, const store::Graph* g) {
  using nlohmann::json;
  auto props_json = [](const store::PropertyMap& props) {
    json j = json::object();
    for (const auto& [k, p] : props) j[k] = to_json(Value::from_property(p), nullptr);
    return j;
  };
  switch (v.kind()) {
    case Value::Kind::Null: return nullptr;
    case Value::Kind::Bool: return v.as_bool();
    case Value::Kind::Int: return v.as_int();
    case Value::Kind::Float: return v.as_float();
    case Value::Kind::Text: return v.as_text();
    case Value::Kind::Node: {
      json j = {{"node", store::raw(v.as_node().id)}};
      if (g != nullptr && g->contains(v.as_node().id)) {
        const auto& n = g->node(v.as_node().id);
        j["label"] = n.label;
        j["properties"] = props_json(n.props);
      }
      return j;
    }
    case Value::Kind::Edge: {
      json j = {{"edge", store::raw(v.as_edge().id)}};
      if (g != nullptr && store::raw(v.as_edge().id) < g->edge_count()) {
        const auto& e = g->edge(v.as_edge().id);
        j["type"] = e.type;
        j["src"] = store::raw(e.src);
        j["dst"] = store::raw(e.dst);
        j["properties"] = props_json(e.props);
      }
      return j;
    }
    case Value::Kind::List: {
      json arr = json::array();
      for (const auto& x : v.as_list()) arr.push_back(to_json(x, g));
      return arr;
    }
  }
  return nullptr;
}

}  // namespace pitchgraph::query
