#include "chowring/graph_io.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

namespace chowring {

using nlohmann::json;

OrderedGraph read_graph(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw GraphError(std::string("graph file is not valid JSON: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("vertices") || !doc.contains("edges"))
    throw GraphError("graph file needs the keys \"vertices\" and \"edges\"");

  RawGraph raw;
  const auto& vs = doc.at("vertices");
  if (!vs.is_array()) throw GraphError("\"vertices\" must be a list");
  for (const auto& v : vs) {
    if (!v.is_string()) throw GraphError("vertex labels must be strings");
    raw.vertices.push_back(v.get<std::string>());
  }
  const auto& es = doc.at("edges");
  if (!es.is_array()) throw GraphError("\"edges\" must be a list");
  for (const auto& e : es) {
    if (!e.is_array() || e.size() != 2 || !e[0].is_number_integer() || !e[1].is_number_integer())
      throw GraphError("each edge must be a list of two integers");
    raw.edges.emplace_back(e[0].get<std::int64_t>(), e[1].get<std::int64_t>());
  }
  return validate_graph(std::move(raw));
}

std::string write_graph(const OrderedGraph& g) {
  std::ostringstream out;
  out << "{\n  \"vertices\": [";
  for (std::size_t i = 0; i < g.vertex_count(); ++i) {
    if (i) out << ", ";
    out << json(g.labels()[i]).dump();
  }
  out << "],\n  \"edges\": [";
  for (std::size_t i = 0; i < g.edge_count(); ++i) {
    if (i) out << ", ";
    out << '[' << g.edge(i).low << ", " << g.edge(i).high << ']';
  }
  out << "]\n}\n";
  return out.str();
}

OrderedGraph load_graph(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open graph file " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return read_graph(buf.str());
}

void save_graph(const OrderedGraph& g, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write graph file " + path.string());
  out << write_graph(g);
}

}  // namespace chowring
