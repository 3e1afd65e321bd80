#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <queue>
#include <string>
#include <thread>
#include <vector>

#include <json.hpp>

#include "nklon/basin.hpp"
#include "nklon/errors.hpp"
#include "nklon/lon.hpp"

namespace nklon {

namespace detail {

// Off-diagonal out-neighborhood of node i, ascending dst.
inline std::vector<std::uint32_t> offdiag_neighbors(const local_optima_network& lon,
                                                    std::size_t i) {
  std::vector<std::uint32_t> nb;
  nb.reserve(lon.out[i].size());
  for (const lon_edge& e : lon.out[i])
    if (e.dst != i) nb.push_back(e.dst);
  return nb;
}

inline double offdiag_strength(const local_optima_network& lon, std::size_t i) {
  double s = 0.0;
  for (const lon_edge& e : lon.out[i])
    if (e.dst != i) s += e.weight;
  return s;
}

}  // namespace detail

// c^w(i) = 1/(s_i (k_i - 1)) * sum over connected ordered pairs (j,h) of
// neighbors of i of (w_ij + w_ih)/2.  Adjacency support is symmetric, so
// each triangle contributes both orientations.
//
// Two variants are reported.  per_node/mean use the off-diagonal form:
// self-loops ignored, degree-<2 nodes take c^w = 0, values stay in [0,1].
// mean_with_self instead treats the self-loop as an ordinary edge (the
// node sits in its own neighborhood, strength is the full unit row); that
// is the form the reference ensemble statistics follow.
struct clustering_stats {
  std::vector<double> per_node;
  double mean = 0.0;
  double mean_with_self = 0.0;
};

inline clustering_stats weighted_clustering(const local_optima_network& lon) {
  clustering_stats cs;
  const std::size_t n = lon.size();
  cs.per_node.assign(n, 0.0);
  double total = 0.0, total_self = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const auto nb = detail::offdiag_neighbors(lon, i);
    if (nb.size() >= 2) {
      const double s = detail::offdiag_strength(lon, i);
      double sum = 0.0;
      for (std::size_t a = 0; a < nb.size(); ++a) {
        const double w_ij = lon.weight(i, nb[a]);
        for (std::size_t b = a + 1; b < nb.size(); ++b) {
          if (!lon.has_edge(nb[a], nb[b])) continue;
          sum += w_ij + lon.weight(i, nb[b]);  // both orderings of (j,h)
        }
      }
      cs.per_node[i] = sum / (s * static_cast<double>(nb.size() - 1));
      total += cs.per_node[i];

      // self-inclusive form: every reciprocal neighbor closes a "triangle"
      // through the self-loop, contributing the pairs (i,h) and (j,i)
      double sum_self = sum;
      const double w_ii = lon.self_weight(i);
      std::size_t degree = nb.size();
      if (w_ii > 0.0) {
        ++degree;
        for (std::uint32_t j : nb)
          if (lon.has_edge(j, i)) sum_self += w_ii + lon.weight(i, j);
      }
      double row = w_ii;
      for (std::uint32_t j : nb) row += lon.weight(i, j);
      if (degree >= 2)
        total_self += sum_self / (row * static_cast<double>(degree - 1));
    } else if (nb.size() == 1 && lon.self_weight(i) > 0.0 &&
               lon.has_edge(nb[0], i)) {
      // one neighbor plus the self-loop: the single triangle carries the
      // whole row, c = 1
      total_self += 1.0;
    }
  }
  cs.mean = n == 0 ? 0.0 : total / static_cast<double>(n);
  cs.mean_with_self = n == 0 ? 0.0 : total_self / static_cast<double>(n);
  return cs;
}

// Y2(i) = sum_j ((w_ij / s_i))^2 over off-diagonal edges: 1/k for perfectly
// even weights, up to 1 for a single dominant edge.  Nodes with no
// off-diagonal edges are skipped and counted.
//
// mean_with_self scores each node's full outgoing distribution instead,
// self-loop included (the whole row sums to 1); the reference ensemble
// statistics follow that form.
struct disparity_stats {
  std::vector<double> per_node;           // 0 for skipped nodes
  std::optional<double> mean;             // absent when every node is skipped
  double mean_with_self = 0.0;
  std::map<int, double> by_degree;        // degree -> mean Y2
  int skipped = 0;
};

inline disparity_stats disparity(const local_optima_network& lon) {
  disparity_stats ds;
  const std::size_t n = lon.size();
  ds.per_node.assign(n, 0.0);
  std::map<int, std::pair<double, int>> acc;
  double total = 0.0, total_self = 0.0;
  int counted = 0;
  for (std::size_t i = 0; i < n; ++i) {
    double row = 0.0, row_sq = 0.0;
    for (const lon_edge& e : lon.out[i]) {
      row += e.weight;
      row_sq += e.weight * e.weight;
    }
    total_self += row_sq / (row * row);

    const auto nb = detail::offdiag_neighbors(lon, i);
    if (nb.empty()) {
      ++ds.skipped;
      continue;
    }
    const double s = detail::offdiag_strength(lon, i);
    double y2 = 0.0;
    for (std::uint32_t j : nb) {
      const double frac = lon.weight(i, j) / s;
      y2 += frac * frac;
    }
    ds.per_node[i] = y2;
    total += y2;
    ++counted;
    auto& slot = acc[static_cast<int>(nb.size())];
    slot.first += y2;
    ++slot.second;
  }
  if (counted > 0) ds.mean = total / counted;
  if (n > 0) ds.mean_with_self = total_self / static_cast<double>(n);
  for (const auto& [deg, slot] : acc)
    ds.by_degree[deg] = slot.first / slot.second;
  return ds;
}

// Distances follow d_ij = 1/w_ij on directed off-diagonal edges.
struct path_stats {
  std::optional<double> mean_path_length;     // mean over ordered pairs i != j
  std::optional<double> mean_path_to_global;  // mean over i != g of d(i -> g)
};

inline path_stats shortest_paths(const local_optima_network& lon, int threads = 1) {
  path_stats ps;
  const std::size_t n = lon.size();
  if (n < 2) return ps;

  // CSR of off-diagonal edges with precomputed lengths
  std::vector<std::size_t> offsets(n + 1, 0);
  for (std::size_t i = 0; i < n; ++i)
    offsets[i + 1] = offsets[i] + detail::offdiag_neighbors(lon, i).size();
  std::vector<std::uint32_t> adj(offsets[n]);
  std::vector<double> len(offsets[n]);
  for (std::size_t i = 0, at = 0; i < n; ++i)
    for (const lon_edge& e : lon.out[i]) {
      if (e.dst == i) continue;
      adj[at] = e.dst;
      len[at] = 1.0 / e.weight;
      ++at;
    }

  const std::size_t g = lon.global_optimum;
  std::vector<double> sum_from(n, 0.0);
  std::vector<double> dist_to_global(n, 0.0);
  std::vector<char> complete(n, 1);  // per-source flags; plain bytes so
                                     // workers never share an element

  const int workers = std::max(1, threads);
  auto run_sources = [&](std::size_t begin, std::size_t end) {
    std::vector<double> dist(n);
    using entry = std::pair<double, std::uint32_t>;
    std::priority_queue<entry, std::vector<entry>, std::greater<entry>> queue;
    for (std::size_t src = begin; src < end; ++src) {
      std::fill(dist.begin(), dist.end(), std::numeric_limits<double>::infinity());
      dist[src] = 0.0;
      queue.push({0.0, static_cast<std::uint32_t>(src)});
      while (!queue.empty()) {
        const auto [d, u] = queue.top();
        queue.pop();
        if (d > dist[u]) continue;
        for (std::size_t e = offsets[u]; e < offsets[u + 1]; ++e) {
          const double nd = d + len[e];
          if (nd < dist[adj[e]]) {
            dist[adj[e]] = nd;
            queue.push({nd, adj[e]});
          }
        }
      }
      double total = 0.0;
      for (std::size_t j = 0; j < n; ++j) {
        if (j == src) continue;
        if (!std::isfinite(dist[j])) {
          complete[src] = 0;
          break;
        }
        total += dist[j];
      }
      sum_from[src] = total;
      dist_to_global[src] = dist[g];
    }
  };

  if (workers == 1 || n < 64) {
    run_sources(0, n);
  } else {
    std::vector<std::thread> pool;
    const std::size_t chunk = (n + workers - 1) / workers;
    for (int w = 0; w < workers; ++w) {
      const std::size_t begin = static_cast<std::size_t>(w) * chunk;
      const std::size_t end = std::min(n, begin + chunk);
      if (begin >= end) break;
      pool.emplace_back(run_sources, begin, end);
    }
    for (auto& t : pool) t.join();
  }

  for (std::size_t i = 0; i < n; ++i)
    if (!complete[i])
      throw invariant_violation("node " + std::to_string(i) +
                                " cannot reach the whole network");

  double all = 0.0, to_global = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    all += sum_from[i];
    if (i != g) to_global += dist_to_global[i];
  }
  const double pairs = static_cast<double>(n) * static_cast<double>(n - 1);
  ps.mean_path_length = all / pairs;
  ps.mean_path_to_global = to_global / static_cast<double>(n - 1);
  return ps;
}

// Log-binned empirical pdf of the off-diagonal weights.  Bin edges sit on
// the absolute grid 10^(j / bins_per_decade), so histograms of different
// networks align bin-for-bin and can be averaged pointwise.
struct histogram_bin {
  int index = 0;       // grid index j; edges are 10^(j/bpd) .. 10^((j+1)/bpd)
  double lower = 0.0;
  double upper = 0.0;
  double center = 0.0;  // geometric mean of the edges
  std::uint64_t count = 0;
  double pdf = 0.0;
};

namespace detail {

inline int decade_bin_index(double w, int bins_per_decade) {
  int j = static_cast<int>(std::floor(std::log10(w) * bins_per_decade));
  // guard against rounding at the edges
  while (std::pow(10.0, static_cast<double>(j) / bins_per_decade) > w) --j;
  while (std::pow(10.0, static_cast<double>(j + 1) / bins_per_decade) <= w) ++j;
  return j;
}

}  // namespace detail

inline std::vector<histogram_bin> weight_histogram(const local_optima_network& lon,
                                                   int bins_per_decade = 10) {
  if (bins_per_decade < 1) throw domain_error("bins_per_decade must be positive");
  std::vector<double> weights;
  for (std::size_t i = 0; i < lon.size(); ++i)
    for (const lon_edge& e : lon.out[i])
      if (e.dst != i) weights.push_back(e.weight);
  if (weights.empty()) return {};

  int lo = detail::decade_bin_index(weights.front(), bins_per_decade);
  int hi = lo;
  for (double w : weights) {
    const int j = detail::decade_bin_index(w, bins_per_decade);
    lo = std::min(lo, j);
    hi = std::max(hi, j);
  }

  std::vector<histogram_bin> bins(static_cast<std::size_t>(hi - lo + 1));
  for (int j = lo; j <= hi; ++j) {
    histogram_bin& bin = bins[static_cast<std::size_t>(j - lo)];
    bin.index = j;
    bin.lower = std::pow(10.0, static_cast<double>(j) / bins_per_decade);
    bin.upper = std::pow(10.0, static_cast<double>(j + 1) / bins_per_decade);
    bin.center = std::sqrt(bin.lower * bin.upper);
  }
  for (double w : weights)
    ++bins[static_cast<std::size_t>(detail::decade_bin_index(w, bins_per_decade) - lo)]
          .count;
  const double total = static_cast<double>(weights.size());
  for (histogram_bin& bin : bins)
    bin.pdf = static_cast<double>(bin.count) / (total * (bin.upper - bin.lower));
  return bins;
}

// Mean self-loop weight over nodes; a missing self-loop counts as 0.
inline double self_weight_mean(const local_optima_network& lon) {
  double sum = 0.0;
  for (std::size_t i = 0; i < lon.size(); ++i) sum += lon.self_weight(i);
  return lon.size() == 0 ? 0.0 : sum / static_cast<double>(lon.size());
}

// Every scalar and array the analysis reports for one instance.
// mean_clustering / mean_disparity are the self-inclusive forms the
// summary tables use; the *_offdiag twins follow the printed formulas.
struct network_stats {
  instance_key instance;
  std::uint64_t n_v = 0;
  std::uint64_t n_e = 0;             // off-diagonal directed edges
  std::uint64_t self_loop_count = 0;  // n_e + self_loop_count = total edges
  double mean_clustering = 0.0;
  double mean_clustering_offdiag = 0.0;
  double mean_disparity = 0.0;
  std::optional<double> mean_disparity_offdiag;
  std::optional<double> mean_path_length;
  std::optional<double> mean_path_to_global;
  double mean_self_weight = 0.0;
  double global_basin_fraction = 0.0;
  double mean_interior_fraction = 0.0;
  std::optional<double> fitness_size_corr;
  std::optional<size_regression> regression;
  std::map<int, double> disparity_by_degree;
  std::vector<histogram_bin> weight_histogram_bins;
  int isolated_nodes = 0;
};

inline network_stats compute_all(const nk_instance& inst,
                                 const basin_partition& part,
                                 const local_optima_network& lon,
                                 int threads = 1, int bins_per_decade = 10) {
  network_stats st;
  st.instance = lon.instance;
  st.n_v = lon.size();
  st.n_e = lon.offdiag_edge_count();
  st.self_loop_count = lon.self_loop_count();
  const auto cs = weighted_clustering(lon);
  st.mean_clustering = cs.mean_with_self;
  st.mean_clustering_offdiag = cs.mean;
  const auto ds = disparity(lon);
  st.mean_disparity = ds.mean_with_self;
  st.mean_disparity_offdiag = ds.mean;
  st.disparity_by_degree = ds.by_degree;
  st.isolated_nodes = ds.skipped;
  const auto paths = shortest_paths(lon, threads);
  st.mean_path_length = paths.mean_path_length;
  st.mean_path_to_global = paths.mean_path_to_global;
  st.mean_self_weight = self_weight_mean(lon);
  st.global_basin_fraction = global_optimum_basin_fraction(part);
  st.mean_interior_fraction = compute_basin_geometry(inst, part).mean_interior_fraction;
  st.fitness_size_corr = fitness_size_correlation(part);
  st.regression = basin_size_regression(part);
  st.weight_histogram_bins = weight_histogram(lon, bins_per_decade);
  return st;
}

namespace detail {

inline void put_optional(nlohmann::json& j, const std::string& key,
                         const std::optional<double>& v) {
  if (v)
    j[key] = *v;
  else
    j[key] = nullptr;
}

inline std::optional<double> get_optional(const nlohmann::json& j,
                                          const std::string& key) {
  if (!j.contains(key) || j.at(key).is_null()) return std::nullopt;
  return j.at(key).get<double>();
}

}  // namespace detail

inline nlohmann::json to_json(const network_stats& st) {
  nlohmann::json j;
  j["instance"] = {{"n", st.instance.n},
                   {"k", st.instance.k},
                   {"model", to_string(st.instance.model)},
                   {"seed", st.instance.seed}};
  j["n_v"] = st.n_v;
  j["n_e"] = st.n_e;
  j["self_loop_count"] = st.self_loop_count;
  j["mean_clustering"] = st.mean_clustering;
  j["mean_clustering_offdiag"] = st.mean_clustering_offdiag;
  j["mean_disparity"] = st.mean_disparity;
  detail::put_optional(j, "mean_disparity_offdiag", st.mean_disparity_offdiag);
  detail::put_optional(j, "mean_path_length", st.mean_path_length);
  detail::put_optional(j, "mean_path_to_global", st.mean_path_to_global);
  j["mean_self_weight"] = st.mean_self_weight;
  j["global_basin_fraction"] = st.global_basin_fraction;
  j["mean_interior_fraction"] = st.mean_interior_fraction;
  detail::put_optional(j, "fitness_size_correlation", st.fitness_size_corr);
  if (st.regression) {
    j["regression"] = {{"rho", st.regression->rho},
                       {"alpha", st.regression->alpha},
                       {"beta", st.regression->beta}};
  } else {
    j["regression"] = nullptr;
  }
  j["isolated_nodes"] = st.isolated_nodes;
  auto by_degree = nlohmann::json::array();
  for (const auto& [deg, y2] : st.disparity_by_degree)
    by_degree.push_back({{"degree", deg}, {"mean_y2", y2}});
  j["disparity_by_degree"] = by_degree;
  auto hist = nlohmann::json::array();
  for (const histogram_bin& bin : st.weight_histogram_bins)
    hist.push_back({{"index", bin.index},
                    {"lower", bin.lower},
                    {"upper", bin.upper},
                    {"center", bin.center},
                    {"count", bin.count},
                    {"pdf", bin.pdf}});
  j["weight_histogram"] = hist;
  return j;
}

inline network_stats stats_from_json(const nlohmann::json& j) {
  network_stats st;
  try {
    const auto& key = j.at("instance");
    st.instance.n = key.at("n").get<int>();
    st.instance.k = key.at("k").get<int>();
    st.instance.model = neighborhood_from_string(key.at("model").get<std::string>());
    st.instance.seed = key.at("seed").get<std::uint64_t>();
    st.n_v = j.at("n_v").get<std::uint64_t>();
    st.n_e = j.at("n_e").get<std::uint64_t>();
    st.self_loop_count = j.at("self_loop_count").get<std::uint64_t>();
    st.mean_clustering = j.at("mean_clustering").get<double>();
    st.mean_clustering_offdiag = j.at("mean_clustering_offdiag").get<double>();
    st.mean_disparity = j.at("mean_disparity").get<double>();
    st.mean_disparity_offdiag = detail::get_optional(j, "mean_disparity_offdiag");
    st.mean_path_length = detail::get_optional(j, "mean_path_length");
    st.mean_path_to_global = detail::get_optional(j, "mean_path_to_global");
    st.mean_self_weight = j.at("mean_self_weight").get<double>();
    st.global_basin_fraction = j.at("global_basin_fraction").get<double>();
    st.mean_interior_fraction = j.at("mean_interior_fraction").get<double>();
    st.fitness_size_corr = detail::get_optional(j, "fitness_size_correlation");
    if (!j.at("regression").is_null()) {
      const auto& r = j.at("regression");
      st.regression = size_regression{r.at("rho").get<double>(),
                                      r.at("alpha").get<double>(),
                                      r.at("beta").get<double>()};
    }
    st.isolated_nodes = j.at("isolated_nodes").get<int>();
    for (const auto& entry : j.at("disparity_by_degree"))
      st.disparity_by_degree[entry.at("degree").get<int>()] =
          entry.at("mean_y2").get<double>();
    for (const auto& entry : j.at("weight_histogram")) {
      histogram_bin bin;
      bin.index = entry.at("index").get<int>();
      bin.lower = entry.at("lower").get<double>();
      bin.upper = entry.at("upper").get<double>();
      bin.center = entry.at("center").get<double>();
      bin.count = entry.at("count").get<std::uint64_t>();
      bin.pdf = entry.at("pdf").get<double>();
      st.weight_histogram_bins.push_back(bin);
    }
  } catch (const nlohmann::json::exception& e) {
    throw format_error(std::string("malformed stats record: ") + e.what());
  }
  return st;
}

}  // namespace nklon
