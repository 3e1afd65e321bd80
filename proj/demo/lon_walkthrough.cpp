// End-to-end walkthrough: generate a small landscape, map its basins,
// build the optima network, and print the headline statistics.

#include <cstdio>

#include "nklon/nklon.hpp"

int main() {
  const auto inst =
      nklon::generate_instance(12, 4, nklon::neighborhood::random, 7);
  std::printf("landscape %s: %llu configurations\n",
              nklon::instance_id(inst).c_str(),
              static_cast<unsigned long long>(inst.space_size()));

  // one deterministic climb
  const nklon::config_t start = 0;
  const nklon::config_t top = nklon::hill_climb(inst, start);
  std::printf("climb from %u reaches optimum %u (fitness %.4f)\n", start, top,
              nklon::evaluate(inst, top));

  // the exhaustive picture
  const auto part = nklon::map_basins(inst);
  const auto lon = nklon::build_lon(inst, part);
  const auto stats = nklon::compute_all(inst, part, lon);

  std::printf("local optima: %llu   directed edges: %llu\n",
              static_cast<unsigned long long>(stats.n_v),
              static_cast<unsigned long long>(stats.n_e));
  std::printf("global optimum basin: %.1f%% of the space\n",
              100.0 * stats.global_basin_fraction);
  std::printf("mean self-loop weight: %.3f\n", stats.mean_self_weight);
  std::printf("weighted clustering: %.3f   disparity: %.3f\n",
              stats.mean_clustering, stats.mean_disparity);
  if (stats.mean_path_length)
    std::printf("mean path length (d = 1/w): %.1f   to the global optimum: %.1f\n",
                *stats.mean_path_length, *stats.mean_path_to_global);

  const auto violations = nklon::check_invariants(inst, part, lon);
  std::printf("invariant checks: %s\n",
              violations.empty() ? "all hold" : "VIOLATED");
  return violations.empty() ? 0 : 1;
}
