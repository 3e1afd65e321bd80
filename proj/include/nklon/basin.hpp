#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <thread>
#include <vector>

#include "nklon/nk_model.hpp"
#include "nklon/stats.hpp"

namespace nklon {

// 2^n assignment entries must fit comfortably in memory.
inline constexpr int max_exhaustive_genes = 26;

struct instance_key {
  int n = 0;
  int k = 0;
  neighborhood model = neighborhood::random;
  std::uint64_t seed = 0;

  bool operator==(const instance_key&) const = default;
};

inline instance_key key_of(const nk_instance& inst) {
  return instance_key{inst.n, inst.k, inst.model, inst.seed};
}

// Exhaustive map from every configuration to the local optimum reached
// by deterministic best-improvement hill climbing.  The basins partition
// the configuration space.
struct basin_partition {
  instance_key instance;
  std::vector<config_t> assignment;     // size 2^n, config -> optimum encoding
  std::vector<config_t> optima;         // distinct optima, ascending encoding
  std::vector<double> optimum_fitness;  // parallel to optima
  std::vector<std::uint64_t> basin_sizes;
  std::size_t global_optimum = 0;       // index into optima

  std::size_t optimum_index(config_t opt) const {
    const auto it = std::lower_bound(optima.begin(), optima.end(), opt);
    return static_cast<std::size_t>(it - optima.begin());
  }
};

namespace detail {

// Best improving neighbor, or c itself at a local optimum.  Neighbors are
// scanned in flipped-bit order and only a strictly greater fitness wins,
// so equal-fitness ties resolve to the lowest flipped bit.
inline config_t best_successor(const nk_instance& inst, config_t c,
                               const std::vector<double>& fitness) {
  config_t best = c;
  double best_f = fitness[c];
  for (int b = 0; b < inst.n; ++b) {
    const config_t nb = c ^ (config_t{1} << b);
    if (fitness[nb] > best_f) {
      best = nb;
      best_f = fitness[nb];
    }
  }
  return best;
}

template <typename Fn>
inline void parallel_over_configs(std::uint64_t count, int threads, Fn&& fn) {
  const int workers = std::max(1, threads);
  if (workers == 1 || count < 1024) {
    fn(config_t{0}, static_cast<config_t>(count));
    return;
  }
  std::vector<std::thread> pool;
  const std::uint64_t chunk = (count + static_cast<std::uint64_t>(workers) - 1) /
                              static_cast<std::uint64_t>(workers);
  for (int w = 0; w < workers; ++w) {
    const std::uint64_t begin = static_cast<std::uint64_t>(w) * chunk;
    const std::uint64_t end = std::min(count, begin + chunk);
    if (begin >= end) break;
    pool.emplace_back([&fn, begin, end] {
      fn(static_cast<config_t>(begin), static_cast<config_t>(end));
    });
  }
  for (auto& t : pool) t.join();
}

}  // namespace detail

// Best-improvement hill climbing from one start; deterministic.
inline config_t hill_climb(const nk_instance& inst, config_t start) {
  detail::require_config(inst.n, start);
  config_t cur = start;
  double cur_f = evaluate(inst, cur);
  for (;;) {
    config_t best = cur;
    double best_f = cur_f;
    for (int b = 0; b < inst.n; ++b) {
      const config_t nb = cur ^ (config_t{1} << b);
      const double f = evaluate(inst, nb);
      if (f > best_f) {
        best = nb;
        best_f = f;
      }
    }
    if (best == cur) return cur;
    cur = best;
    cur_f = best_f;
  }
}

// Runs the climber from every configuration.  Internally the climb is
// memoized through the successor graph; the result is bit-identical to
// climbing each start independently, and independent of thread count.
inline basin_partition map_basins(const nk_instance& inst, int threads = 1) {
  if (inst.n > max_exhaustive_genes)
    throw capacity_error("n = " + std::to_string(inst.n) +
                         " exceeds the exhaustive limit of " +
                         std::to_string(max_exhaustive_genes));
  const std::uint64_t size = inst.space_size();

  std::vector<double> fitness(size);
  detail::parallel_over_configs(size, threads, [&](config_t begin, config_t end) {
    for (std::uint64_t c = begin; c < end; ++c)
      fitness[c] = evaluate(inst, static_cast<config_t>(c));
  });

  std::vector<config_t> succ(size);
  detail::parallel_over_configs(size, threads, [&](config_t begin, config_t end) {
    for (std::uint64_t c = begin; c < end; ++c)
      succ[c] = detail::best_successor(inst, static_cast<config_t>(c), fitness);
  });

  // Resolve every successor chain to its endpoint with path compression.
  // Chains strictly increase in fitness, so they cannot cycle.
  constexpr config_t unset = std::numeric_limits<config_t>::max();
  std::vector<config_t> root(size, unset);
  std::vector<config_t> path;
  for (std::uint64_t c = 0; c < size; ++c) {
    if (root[c] != unset) continue;
    path.clear();
    config_t x = static_cast<config_t>(c);
    config_t r;
    for (;;) {
      if (root[x] != unset) {
        r = root[x];
        break;
      }
      const config_t s = succ[x];
      if (s == x) {
        r = x;
        break;
      }
      path.push_back(x);
      x = s;
    }
    root[x] = r;
    for (config_t p : path) root[p] = r;
  }

  basin_partition part;
  part.instance = key_of(inst);
  for (std::uint64_t c = 0; c < size; ++c)
    if (root[c] == static_cast<config_t>(c)) {
      part.optima.push_back(static_cast<config_t>(c));
      part.optimum_fitness.push_back(fitness[c]);
    }

  part.basin_sizes.assign(part.optima.size(), 0);
  for (std::uint64_t c = 0; c < size; ++c)
    ++part.basin_sizes[part.optimum_index(root[c])];

  part.global_optimum = 0;
  for (std::size_t i = 1; i < part.optima.size(); ++i)
    if (part.optimum_fitness[i] > part.optimum_fitness[part.global_optimum])
      part.global_optimum = i;

  part.assignment = std::move(root);
  return part;
}

inline double global_optimum_basin_fraction(const basin_partition& part) {
  return static_cast<double>(part.basin_sizes[part.global_optimum]) /
         static_cast<double>(part.assignment.size());
}

// Interior configurations have all n neighbors inside their own basin;
// the rest form the basin boundary.
struct basin_geometry {
  std::vector<std::uint64_t> interior_counts;  // per optimum
  std::vector<double> interior_fractions;      // interior / basin size
  double mean_interior_fraction = 0.0;         // mean over basins
};

inline basin_geometry compute_basin_geometry(const nk_instance& inst,
                                             const basin_partition& part) {
  basin_geometry geo;
  geo.interior_counts.assign(part.optima.size(), 0);
  const std::uint64_t size = inst.space_size();
  for (std::uint64_t c = 0; c < size; ++c) {
    const config_t r = part.assignment[c];
    bool interior = true;
    for (int b = 0; b < inst.n && interior; ++b)
      interior = part.assignment[c ^ (config_t{1} << b)] == r;
    if (interior) ++geo.interior_counts[part.optimum_index(r)];
  }
  geo.interior_fractions.resize(part.optima.size());
  double sum = 0.0;
  for (std::size_t i = 0; i < part.optima.size(); ++i) {
    geo.interior_fractions[i] = static_cast<double>(geo.interior_counts[i]) /
                                static_cast<double>(part.basin_sizes[i]);
    sum += geo.interior_fractions[i];
  }
  geo.mean_interior_fraction = sum / static_cast<double>(part.optima.size());
  return geo;
}

// Pearson correlation between optimum fitness and ln(basin size).
// Absent below two optima or under zero variance.
inline std::optional<double> fitness_size_correlation(const basin_partition& part) {
  if (part.optima.size() < 2) return std::nullopt;
  std::vector<double> log_sizes(part.basin_sizes.size());
  for (std::size_t i = 0; i < part.basin_sizes.size(); ++i)
    log_sizes[i] = std::log(static_cast<double>(part.basin_sizes[i]));
  return pearson(part.optimum_fitness, log_sizes);
}

// Fit of ln C(s) = alpha + beta * s where C(s) counts basins of size >= s,
// evaluated at each distinct observed size.
struct size_regression {
  double rho = 0.0;
  double alpha = 0.0;
  double beta = 0.0;
};

inline std::optional<size_regression> basin_size_regression(const basin_partition& part) {
  std::vector<std::uint64_t> sizes = part.basin_sizes;
  std::sort(sizes.begin(), sizes.end());
  std::vector<double> xs, ys;
  for (std::size_t i = 0; i < sizes.size(); ++i) {
    if (i > 0 && sizes[i] == sizes[i - 1]) continue;
    xs.push_back(static_cast<double>(sizes[i]));
    ys.push_back(std::log(static_cast<double>(sizes.size() - i)));
  }
  if (xs.size() < 3) return std::nullopt;
  const auto rho = pearson(xs, ys);
  const auto fit = least_squares(xs, ys);
  if (!rho || !fit) return std::nullopt;
  return size_regression{*rho, fit->alpha, fit->beta};
}

}  // namespace nklon
