#pragma once

#include <cmath>
#include <cstdint>
#include <deque>
#include <string>
#include <vector>

#include "nklon/basin.hpp"
#include "nklon/lon.hpp"
#include "nklon/metrics.hpp"
#include "nklon/nk_model.hpp"

namespace nklon {

// Structural checks that must hold on every exhaustively extracted
// partition and optima network.  Returns human-readable violations;
// empty means everything holds.
inline std::vector<std::string> check_invariants(const nk_instance& inst,
                                                 const basin_partition& part,
                                                 const local_optima_network& lon) {
  std::vector<std::string> bad;
  const auto complain = [&bad](const std::string& msg) { bad.push_back(msg); };

  // basins partition the configuration space
  std::uint64_t total = 0;
  for (std::uint64_t s : part.basin_sizes) total += s;
  if (total != inst.space_size())
    complain("basin sizes sum to " + std::to_string(total) + ", expected " +
             std::to_string(inst.space_size()));

  // every optimum is a fixed point and a strict local maximum
  for (std::size_t i = 0; i < part.optima.size(); ++i) {
    const config_t opt = part.optima[i];
    if (part.assignment[opt] != opt)
      complain("optimum " + std::to_string(opt) + " does not map to itself");
    const double f = evaluate(inst, opt);
    for (int b = 0; b < inst.n; ++b)
      if (!(evaluate(inst, opt ^ (config_t{1} << b)) < f)) {
        complain("optimum " + std::to_string(opt) +
                 " is not a strict local maximum (flip bit " + std::to_string(b) + ")");
        break;
      }
    if (part.optimum_fitness[part.global_optimum] < part.optimum_fitness[i])
      complain("global optimum is not the fittest node");
  }

  // each row of the transition matrix is a probability distribution
  for (std::size_t i = 0; i < lon.size(); ++i) {
    double row = 0.0;
    for (const lon_edge& e : lon.out[i]) {
      row += e.weight;
      if (!(e.weight > 0.0))
        complain("stored weight (" + std::to_string(i) + "," +
                 std::to_string(e.dst) + ") is not positive");
    }
    if (std::abs(row - 1.0) > 1e-9)
      complain("outgoing weights of node " + std::to_string(i) + " sum to " +
               std::to_string(row));
  }

  // bit-flip reversibility: off-diagonal support is symmetric
  for (std::size_t i = 0; i < lon.size(); ++i)
    for (const lon_edge& e : lon.out[i])
      if (e.dst != i && !lon.has_edge(e.dst, i)) {
        complain("adjacency support is not symmetric at (" + std::to_string(i) +
                 "," + std::to_string(e.dst) + ")");
        break;
      }

  // strongly connected ignoring self-loops (holds because the hypercube is
  // connected and support is symmetric)
  if (lon.size() > 1) {
    std::vector<bool> seen(lon.size(), false);
    std::deque<std::uint32_t> frontier{0};
    seen[0] = true;
    std::size_t reached = 1;
    while (!frontier.empty()) {
      const std::uint32_t u = frontier.front();
      frontier.pop_front();
      for (const lon_edge& e : lon.out[u])
        if (e.dst != u && !seen[e.dst]) {
          seen[e.dst] = true;
          ++reached;
          frontier.push_back(e.dst);
        }
    }
    if (reached != lon.size())
      complain("network is not connected: reached " + std::to_string(reached) +
               " of " + std::to_string(lon.size()) + " nodes");
  }

  // metric bounds
  const auto cw = weighted_clustering(lon);
  for (std::size_t i = 0; i < lon.size(); ++i)
    if (cw.per_node[i] < -1e-12 || cw.per_node[i] > 1.0 + 1e-12) {
      complain("clustering coefficient of node " + std::to_string(i) +
               " outside [0,1]: " + std::to_string(cw.per_node[i]));
      break;
    }
  const auto ds = disparity(lon);
  for (std::size_t i = 0; i < lon.size(); ++i) {
    const auto degree = detail::offdiag_neighbors(lon, i).size();
    if (degree == 0) continue;
    const double floor = 1.0 / static_cast<double>(degree);
    if (ds.per_node[i] < floor - 1e-12 || ds.per_node[i] > 1.0 + 1e-12) {
      complain("disparity of node " + std::to_string(i) + " outside [1/k,1]: " +
               std::to_string(ds.per_node[i]));
      break;
    }
  }

  return bad;
}

}  // namespace nklon
