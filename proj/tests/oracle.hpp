// Naive re-implementations of the whole pipeline, kept deliberately
// independent of the library code paths they check: no memoization, dense
// matrices, literal formulas, Floyd-Warshall instead of Dijkstra.

#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "nklon/nk_model.hpp"

namespace naive {

using nklon::config_t;
using nklon::nk_instance;

double evaluate(const nk_instance& inst, config_t c);
config_t hill_climb(const nk_instance& inst, config_t start);

struct partition {
  std::vector<config_t> assignment;
  std::vector<config_t> optima;  // ascending encodings
  std::vector<double> fitness;   // parallel to optima
  std::vector<std::uint64_t> sizes;
  std::size_t global = 0;
};

partition map_basins(const nk_instance& inst);

// dense (n_v x n_v) transition matrix, self-loops on the diagonal
std::vector<std::vector<double>> lon_weights(const nk_instance& inst,
                                             const partition& part);

struct metrics {
  std::vector<int> degree;
  std::vector<double> strength;
  std::vector<double> clustering;
  std::vector<double> disparity;
  double mean_clustering = 0.0;
  double mean_clustering_self = 0.0;  // diagonal treated as an ordinary edge
  std::optional<double> mean_disparity;
  double mean_disparity_self = 0.0;
  std::optional<double> mean_path_length;
  std::optional<double> mean_path_to_global;
  double mean_self_weight = 0.0;
  double global_basin_fraction = 0.0;
  std::vector<double> interior_fractions;
  double mean_interior_fraction = 0.0;
  std::optional<double> fitness_size_corr;
  std::optional<double> reg_rho, reg_alpha, reg_beta;
  std::map<int, double> disparity_by_degree;
  std::map<int, std::uint64_t> histogram_counts;  // decade-grid index -> count
  std::map<int, double> histogram_pdf;
};

metrics compute_metrics(const nk_instance& inst, const partition& part,
                        const std::vector<std::vector<double>>& w,
                        int bins_per_decade);

}  // namespace naive
