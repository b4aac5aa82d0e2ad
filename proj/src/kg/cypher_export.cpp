#include "pitchgraph/kg/cypher_export.hpp"

#include <ostream>

namespace pitchgraph::kg {

namespace {

void write_props(std::ostream& os, const store::PropertyMap& props, std::string_view graph,
                 const std::uint32_t* id) {
  os << " {";
  bool first = true;
  auto sep = [&] {
    if (!first) os << ", ";
    first = false;
  };
  if (id != nullptr) {
    sep();
    os << "_graph: " << store::quote_text(graph) << ", _id: " << *id;
  }
  for (const auto& [key, value] : props) {
    sep();
    os << '`' << key << "`: " << value.to_literal();
  }
  os << '}';
}

void export_graph(const store::Graph& g, std::string_view name, std::ostream& os) {
  for (const auto& n : g.nodes()) {
    const std::uint32_t id = store::raw(n.id);
    os << "CREATE (:`" << n.label << '`';
    write_props(os, n.props, name, &id);
    os << ");\n";
  }
  for (const auto& e : g.edges()) {
    os << "MATCH (a {_graph: " << store::quote_text(name) << ", _id: " << store::raw(e.src)
       << "}), (b {_graph: " << store::quote_text(name) << ", _id: " << store::raw(e.dst)
       << "}) CREATE (a)-[:`" << e.type << '`';
    if (!e.props.empty()) write_props(os, e.props, name, nullptr);
    os << "]->(b);\n";
  }
}

}  // namespace

void export_cypher(const BuildOutput& out, std::ostream& os) {
  export_graph(out.labels_kg, "labels", os);
  export_graph(out.captions_kg, "captions", os);
}

}  // namespace pitchgraph::kg
