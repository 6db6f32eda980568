#include "sbmphase/ingest.hpp"

#include <fstream>
#include <limits>
#include <ostream>
#include <sstream>

namespace sbmphase {
namespace {

std::vector<std::string> split_ws(const std::string& line) {
  std::vector<std::string> tokens;
  std::istringstream iss(line);
  std::string tok;
  while (iss >> tok) tokens.push_back(tok);
  return tokens;
}

std::string at_line(const std::string& path, std::size_t lineno) {
  return path + ":" + std::to_string(lineno);
}

}  // namespace

LabeledGraph read_edge_list(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError(path + ": cannot open");

  std::vector<std::string> ids;
  std::unordered_map<std::string, std::uint32_t> id_map;
  const auto intern = [&](const std::string& tok) {
    const auto [it, fresh] = id_map.try_emplace(tok, std::uint32_t(ids.size()));
    if (fresh) {
      if (ids.size() >= std::numeric_limits<std::uint32_t>::max())
        throw ParseError(path + ": too many distinct node ids");
      ids.push_back(tok);
    }
    return it->second;
  };

  std::vector<Edge> edges;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto tokens = split_ws(line);
    if (tokens.empty() || tokens[0][0] == '#') continue;
    if (tokens.size() < 2)
      throw ParseError(at_line(path, lineno) + ": expected 2 node tokens");
    const std::uint32_t a = intern(tokens[0]);
    const std::uint32_t b = intern(tokens[1]);
    edges.emplace_back(a, b);
  }
  if (ids.empty()) throw ParseError(path + ": no edges found");

  LabeledGraph lg;
  lg.graph = build_graph(std::uint32_t(ids.size()), edges);
  lg.ids = std::move(ids);
  lg.id_map = std::move(id_map);
  return lg;
}

std::vector<std::uint8_t> read_labels(
    const std::string& path, const std::unordered_map<std::string, std::uint32_t>& id_map) {
  std::ifstream in(path);
  if (!in) throw ParseError(path + ": cannot open");

  std::vector<std::uint8_t> labels(id_map.size(), 0);  // 0 = not yet labeled
  std::vector<std::string> value_names;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto tokens = split_ws(line);
    if (tokens.empty() || tokens[0][0] == '#') continue;
    if (tokens.size() < 2)
      throw ParseError(at_line(path, lineno) + ": expected \"id label\"");
    const auto it = id_map.find(tokens[0]);
    if (it == id_map.end())
      throw ParseError(at_line(path, lineno) + ": unknown node id '" + tokens[0] + "'");
    std::uint8_t value = 0;
    for (std::size_t k = 0; k < value_names.size(); ++k)
      if (value_names[k] == tokens[1]) value = std::uint8_t(k + 1);
    if (value == 0) {
      if (value_names.size() == 2)
        throw ParseError(at_line(path, lineno) + ": more than two distinct label values ('" +
                         tokens[1] + "')");
      value_names.push_back(tokens[1]);
      value = std::uint8_t(value_names.size());
    }
    if (labels[it->second] != 0 && labels[it->second] != value)
      throw ParseError(at_line(path, lineno) + ": conflicting label for node '" + tokens[0] + "'");
    labels[it->second] = value;
  }
  if (value_names.size() != 2)
    throw ParseError(path + ": expected exactly 2 distinct label values, found " +
                     std::to_string(value_names.size()));
  for (const auto& [name, idx] : id_map)
    if (labels[idx] == 0)
      throw ParseError(path + ": missing label for node '" + name + "'");
  return labels;
}

LabeledGraph preprocess(const LabeledGraph& lg, bool drop_isolated) {
  if (!drop_isolated) return lg;
  const std::uint32_t n = lg.graph.n();
  std::vector<std::uint32_t> remap(n, 0);
  std::uint32_t kept = 0;
  for (std::uint32_t v = 0; v < n; ++v)
    if (lg.graph.degree(v) > 0) remap[v] = kept++;
  if (kept == n) return lg;
  if (kept == 0)
    throw std::invalid_argument("preprocess: graph has no edges, nothing would remain");

  std::vector<Edge> edges;
  edges.reserve(lg.graph.edge_count());
  for (const auto& [a, b] : edge_set(lg.graph)) edges.emplace_back(remap[a], remap[b]);

  LabeledGraph out;
  out.graph = build_graph(kept, edges);
  out.ids.resize(kept);
  out.has_labels = lg.has_labels;
  if (lg.has_labels) out.labels.resize(kept);
  for (std::uint32_t v = 0; v < n; ++v) {
    if (lg.graph.degree(v) == 0) continue;
    out.ids[remap[v]] = lg.ids[v];
    out.id_map.emplace(lg.ids[v], remap[v]);
    if (lg.has_labels) out.labels[remap[v]] = lg.labels[v];
  }
  return out;
}

void write_canonical_edge_list(std::ostream& os, const Graph& g) {
  for (const auto& [a, b] : edge_set(g)) os << a << ' ' << b << '\n';
}

}  // namespace sbmphase
