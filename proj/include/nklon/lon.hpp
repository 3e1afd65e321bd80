#pragma once

#include <algorithm>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <unordered_map>
#include <vector>

#include "nklon/basin.hpp"
#include "nklon/errors.hpp"

namespace nklon {

struct lon_node {
  config_t config = 0;
  double fitness = 0.0;
  std::uint64_t basin_size = 0;
};

struct lon_edge {
  std::uint32_t dst = 0;
  double weight = 0.0;
};

// Weighted directed graph over local optima.  w[i][j] is the probability
// that a uniform one-bit flip of a uniform configuration of basin i lands
// in basin j; self-loops carry the stay-inside probability, and every
// node's outgoing weights (self-loop included) sum to 1.
struct local_optima_network {
  instance_key instance;
  std::vector<lon_node> nodes;             // ascending optimum encoding
  std::vector<std::vector<lon_edge>> out;  // sorted by dst, self-loops included
  std::size_t global_optimum = 0;

  std::size_t size() const { return nodes.size(); }

  double weight(std::size_t i, std::size_t j) const {
    const auto& edges = out[i];
    const auto it = std::lower_bound(
        edges.begin(), edges.end(), static_cast<std::uint32_t>(j),
        [](const lon_edge& e, std::uint32_t d) { return e.dst < d; });
    return (it != edges.end() && it->dst == j) ? it->weight : 0.0;
  }

  double self_weight(std::size_t i) const { return weight(i, i); }

  bool has_edge(std::size_t i, std::size_t j) const { return weight(i, j) > 0.0; }

  // off-diagonal directed edge count
  std::uint64_t offdiag_edge_count() const {
    std::uint64_t count = 0;
    for (std::size_t i = 0; i < out.size(); ++i)
      for (const lon_edge& e : out[i])
        if (e.dst != i) ++count;
    return count;
  }

  // nodes that keep a positive stay-inside probability
  std::uint64_t self_loop_count() const {
    std::uint64_t count = 0;
    for (std::size_t i = 0; i < out.size(); ++i)
      if (self_weight(i) > 0.0) ++count;
    return count;
  }
};

// Exact single pass over all 2^n configurations and their n neighbors.
// Transition counts are accumulated in integers and divided once, so the
// result does not depend on traversal order.
inline local_optima_network build_lon(const nk_instance& inst,
                                      const basin_partition& part) {
  local_optima_network lon;
  lon.instance = part.instance;
  lon.global_optimum = part.global_optimum;
  lon.nodes.resize(part.optima.size());
  for (std::size_t i = 0; i < part.optima.size(); ++i)
    lon.nodes[i] = lon_node{part.optima[i], part.optimum_fitness[i],
                            part.basin_sizes[i]};

  const std::uint64_t size = inst.space_size();
  std::vector<std::uint32_t> node_of(size);
  for (std::uint64_t c = 0; c < size; ++c)
    node_of[c] = static_cast<std::uint32_t>(part.optimum_index(part.assignment[c]));

  std::vector<std::unordered_map<std::uint32_t, std::uint64_t>> counts(lon.size());
  for (std::uint64_t c = 0; c < size; ++c) {
    auto& row = counts[node_of[c]];
    for (int b = 0; b < inst.n; ++b) ++row[node_of[c ^ (config_t{1} << b)]];
  }

  lon.out.resize(lon.size());
  for (std::size_t i = 0; i < lon.size(); ++i) {
    const double denom = static_cast<double>(inst.n) *
                         static_cast<double>(part.basin_sizes[i]);
    auto& edges = lon.out[i];
    edges.reserve(counts[i].size());
    for (const auto& [dst, cnt] : counts[i])
      edges.push_back(lon_edge{dst, static_cast<double>(cnt) / denom});
    std::sort(edges.begin(), edges.end(),
              [](const lon_edge& a, const lon_edge& b) { return a.dst < b.dst; });
  }
  return lon;
}

namespace detail {

inline std::string full_precision(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace detail

// nodes CSV: id,config,fitness,basin_size ; edges CSV: src,dst,weight
// (self-loops included).  Weights keep full round-trip precision.
inline void export_edge_list(const local_optima_network& lon,
                             const std::string& nodes_path,
                             const std::string& edges_path) {
  std::ofstream nodes(nodes_path);
  if (!nodes) throw io_error("cannot open '" + nodes_path + "' for writing");
  nodes << "id,config,fitness,basin_size\n";
  for (std::size_t i = 0; i < lon.size(); ++i)
    nodes << i << ',' << lon.nodes[i].config << ','
          << detail::full_precision(lon.nodes[i].fitness) << ','
          << lon.nodes[i].basin_size << '\n';
  if (!nodes) throw io_error("failed writing '" + nodes_path + "'");

  std::ofstream edges(edges_path);
  if (!edges) throw io_error("cannot open '" + edges_path + "' for writing");
  edges << "src,dst,weight\n";
  for (std::size_t i = 0; i < lon.size(); ++i)
    for (const lon_edge& e : lon.out[i])
      edges << i << ',' << e.dst << ',' << detail::full_precision(e.weight) << '\n';
  if (!edges) throw io_error("failed writing '" + edges_path + "'");
}

inline void export_graphml(const local_optima_network& lon, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw io_error("cannot open '" + path + "' for writing");
  out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
         "<graphml xmlns=\"http://graphml.graphdrawing.org/xmlns\">\n"
         "  <key id=\"config\" for=\"node\" attr.name=\"config\" attr.type=\"long\"/>\n"
         "  <key id=\"fitness\" for=\"node\" attr.name=\"fitness\" attr.type=\"double\"/>\n"
         "  <key id=\"basin_size\" for=\"node\" attr.name=\"basin_size\" attr.type=\"long\"/>\n"
         "  <key id=\"weight\" for=\"edge\" attr.name=\"weight\" attr.type=\"double\"/>\n"
         "  <graph id=\"lon\" edgedefault=\"directed\">\n";
  for (std::size_t i = 0; i < lon.size(); ++i)
    out << "    <node id=\"n" << i << "\">"
        << "<data key=\"config\">" << lon.nodes[i].config << "</data>"
        << "<data key=\"fitness\">" << detail::full_precision(lon.nodes[i].fitness)
        << "</data>"
        << "<data key=\"basin_size\">" << lon.nodes[i].basin_size << "</data>"
        << "</node>\n";
  for (std::size_t i = 0; i < lon.size(); ++i)
    for (const lon_edge& e : lon.out[i])
      out << "    <edge source=\"n" << i << "\" target=\"n" << e.dst << "\">"
          << "<data key=\"weight\">" << detail::full_precision(e.weight)
          << "</data></edge>\n";
  out << "  </graph>\n</graphml>\n";
  if (!out) throw io_error("failed writing '" + path + "'");
}

// Rebuilds a network from the CSV pair written by export_edge_list.
// The instance key is not stored in the CSVs and is left empty.
inline local_optima_network import_edge_list(const std::string& nodes_path,
                                             const std::string& edges_path) {
  local_optima_network lon;
  std::ifstream nodes(nodes_path);
  if (!nodes) throw io_error("cannot open '" + nodes_path + "' for reading");
  std::string line;
  std::getline(nodes, line);  // header
  while (std::getline(nodes, line)) {
    if (line.empty()) continue;
    std::istringstream row(line);
    std::string field;
    lon_node node;
    std::getline(row, field, ',');
    std::getline(row, field, ',');
    node.config = static_cast<config_t>(std::stoul(field));
    std::getline(row, field, ',');
    node.fitness = std::stod(field);
    std::getline(row, field, ',');
    node.basin_size = std::stoull(field);
    lon.nodes.push_back(node);
  }
  lon.out.resize(lon.size());

  std::ifstream edges(edges_path);
  if (!edges) throw io_error("cannot open '" + edges_path + "' for reading");
  std::getline(edges, line);  // header
  while (std::getline(edges, line)) {
    if (line.empty()) continue;
    std::istringstream row(line);
    std::string field;
    std::getline(row, field, ',');
    const std::size_t src = std::stoull(field);
    lon_edge edge;
    std::getline(row, field, ',');
    edge.dst = static_cast<std::uint32_t>(std::stoul(field));
    std::getline(row, field, ',');
    edge.weight = std::stod(field);
    if (src >= lon.size() || edge.dst >= lon.size())
      throw format_error("edge endpoint outside node table in '" + edges_path + "'");
    lon.out[src].push_back(edge);
  }
  for (auto& row : lon.out)
    std::sort(row.begin(), row.end(),
              [](const lon_edge& a, const lon_edge& b) { return a.dst < b.dst; });
  for (std::size_t i = 1; i < lon.size(); ++i)
    if (lon.nodes[i].fitness > lon.nodes[lon.global_optimum].fitness)
      lon.global_optimum = i;
  return lon;
}

}  // namespace nklon
