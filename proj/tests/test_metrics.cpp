#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "nklon/metrics.hpp"
#include "nklon/validate.hpp"
#include "oracle.hpp"

using nklon::generate_instance;
using nklon::neighborhood;

namespace {

// hand-built network: edges as (src, dst, weight); fitness by node index
nklon::local_optima_network make_lon(
    std::size_t nodes, const std::vector<std::tuple<std::size_t, std::size_t, double>>& edges,
    std::size_t global = 0) {
  nklon::local_optima_network lon;
  lon.nodes.resize(nodes);
  lon.out.resize(nodes);
  for (std::size_t i = 0; i < nodes; ++i) {
    lon.nodes[i].config = static_cast<nklon::config_t>(i);
    lon.nodes[i].fitness = 0.5 + 0.01 * static_cast<double>(i);
    lon.nodes[i].basin_size = 1;
  }
  for (const auto& [src, dst, w] : edges)
    lon.out[src].push_back({static_cast<std::uint32_t>(dst), w});
  for (auto& row : lon.out)
    std::sort(row.begin(), row.end(),
              [](const nklon::lon_edge& a, const nklon::lon_edge& b) {
                return a.dst < b.dst;
              });
  lon.global_optimum = global;
  return lon;
}

struct pipeline {
  nklon::nk_instance inst;
  nklon::basin_partition part;
  nklon::local_optima_network lon;
};

pipeline run_pipeline(int n, int k, std::uint64_t seed) {
  pipeline p;
  p.inst = generate_instance(n, k, neighborhood::random, seed);
  p.part = nklon::map_basins(p.inst);
  p.lon = nklon::build_lon(p.inst, p.part);
  return p;
}

}  // namespace

TEST_CASE("uniform complete triangle has clustering 1 everywhere") {
  std::vector<std::tuple<std::size_t, std::size_t, double>> edges;
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j)
      if (i != j) edges.emplace_back(i, j, 0.2);
  const auto lon = make_lon(3, edges);
  const auto cs = nklon::weighted_clustering(lon);
  for (double c : cs.per_node) CHECK(c == Catch::Approx(1.0).margin(1e-12));
  CHECK(cs.mean == Catch::Approx(1.0).margin(1e-12));
}

TEST_CASE("a path graph has no triangles and zero clustering") {
  std::vector<std::tuple<std::size_t, std::size_t, double>> edges;
  for (std::size_t i = 0; i + 1 < 4; ++i) {
    edges.emplace_back(i, i + 1, 0.3);
    edges.emplace_back(i + 1, i, 0.3);
  }
  const auto lon = make_lon(4, edges);
  const auto cs = nklon::weighted_clustering(lon);
  for (double c : cs.per_node) CHECK(c == 0.0);
  CHECK(cs.mean == 0.0);
}

TEST_CASE("equal out-weights give disparity exactly 1/k") {
  std::vector<std::tuple<std::size_t, std::size_t, double>> edges;
  for (std::size_t j = 1; j <= 4; ++j) {
    edges.emplace_back(0, j, 0.25);
    edges.emplace_back(j, 0, 1.0);
  }
  const auto lon = make_lon(5, edges);
  const auto ds = nklon::disparity(lon);
  CHECK(ds.per_node[0] == Catch::Approx(0.25).margin(1e-12));
  CHECK(ds.by_degree.at(4) == Catch::Approx(0.25).margin(1e-12));
  CHECK(ds.by_degree.at(1) == Catch::Approx(1.0).margin(1e-12));
}

TEST_CASE("hand-computed disparity for weights 0.6/0.2/0.2") {
  const auto lon = make_lon(4, {{0, 1, 0.6},
                                {0, 2, 0.2},
                                {0, 3, 0.2},
                                {1, 0, 1.0},
                                {2, 0, 1.0},
                                {3, 0, 1.0}});
  const auto ds = nklon::disparity(lon);
  CHECK(ds.per_node[0] == Catch::Approx(0.44).margin(1e-12));
}

TEST_CASE("two-node distances are the inverse weights") {
  const auto lon = make_lon(2, {{0, 1, 0.5}, {1, 0, 0.25},
                                {0, 0, 0.5}, {1, 1, 0.75}},
                            /*global=*/1);
  const auto ps = nklon::shortest_paths(lon);
  REQUIRE(ps.mean_path_length.has_value());
  CHECK(*ps.mean_path_length == Catch::Approx(3.0).margin(1e-12));  // (2 + 4) / 2
  REQUIRE(ps.mean_path_to_global.has_value());
  CHECK(*ps.mean_path_to_global == Catch::Approx(2.0).margin(1e-12));  // d(0 -> 1)
}

TEST_CASE("a two-hop route beats a weak direct edge") {
  const auto lon = make_lon(3, {{0, 2, 0.01}, {2, 0, 0.01},
                                {0, 1, 0.5}, {1, 0, 0.5},
                                {1, 2, 0.2}, {2, 1, 0.2}},
                            /*global=*/2);
  const auto ps = nklon::shortest_paths(lon);
  // d(0 -> 2) = min(1/0.01, 1/0.5 + 1/0.2) = 7
  REQUIRE(ps.mean_path_to_global.has_value());
  CHECK(*ps.mean_path_to_global == Catch::Approx((7.0 + 5.0) / 2.0).margin(1e-12));
}

TEST_CASE("identical weights occupy a single histogram bin") {
  std::vector<std::tuple<std::size_t, std::size_t, double>> edges;
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j)
      if (i != j) edges.emplace_back(i, j, 0.037);
  const auto bins = nklon::weight_histogram(make_lon(3, edges), 10);
  REQUIRE(bins.size() == 1);
  CHECK(bins[0].count == 6);
  CHECK(bins[0].pdf * (bins[0].upper - bins[0].lower) == Catch::Approx(1.0).margin(1e-12));
  CHECK(bins[0].lower <= 0.037);
  CHECK(bins[0].upper > 0.037);
}

TEST_CASE("histograms integrate to one and match naive binning") {
  const auto p = run_pipeline(8, 4, 81);
  const auto bins = nklon::weight_histogram(p.lon, 10);
  double integral = 0.0;
  for (const auto& bin : bins) integral += bin.pdf * (bin.upper - bin.lower);
  CHECK(integral == Catch::Approx(1.0).margin(1e-9));

  const auto ref = naive::map_basins(p.inst);
  const auto stats = naive::compute_metrics(p.inst, ref, naive::lon_weights(p.inst, ref), 10);
  for (const auto& bin : bins) {
    const auto it = stats.histogram_counts.find(bin.index);
    const std::uint64_t expected = it == stats.histogram_counts.end() ? 0 : it->second;
    CHECK(bin.count == expected);
    if (expected > 0)
      CHECK(bin.pdf == Catch::Approx(stats.histogram_pdf.at(bin.index)).margin(1e-9));
  }
}

TEST_CASE("self-weight mean is 1 on a single-basin landscape") {
  const auto p = run_pipeline(6, 0, 82);
  CHECK(nklon::self_weight_mean(p.lon) == 1.0);
}

TEST_CASE("every metric matches the naive oracle") {
  for (const auto [n, k, seed] : {std::tuple{8, 4, 83}, {9, 2, 84}, {9, 8, 85}}) {
    const auto p = run_pipeline(n, k, static_cast<std::uint64_t>(seed));
    const auto ref = naive::map_basins(p.inst);
    const auto w = naive::lon_weights(p.inst, ref);
    const auto expected = naive::compute_metrics(p.inst, ref, w, 10);

    const auto cs = nklon::weighted_clustering(p.lon);
    const auto ds = nklon::disparity(p.lon);
    REQUIRE(cs.per_node.size() == expected.clustering.size());
    for (std::size_t i = 0; i < cs.per_node.size(); ++i) {
      CHECK(cs.per_node[i] == Catch::Approx(expected.clustering[i]).margin(1e-9));
      CHECK(ds.per_node[i] == Catch::Approx(expected.disparity[i]).margin(1e-9));
    }
    CHECK(cs.mean == Catch::Approx(expected.mean_clustering).margin(1e-9));
    CHECK(cs.mean_with_self ==
          Catch::Approx(expected.mean_clustering_self).margin(1e-9));
    REQUIRE(ds.mean.has_value());
    CHECK(*ds.mean == Catch::Approx(*expected.mean_disparity).margin(1e-9));
    CHECK(ds.mean_with_self ==
          Catch::Approx(expected.mean_disparity_self).margin(1e-9));
    for (const auto& [deg, y2] : expected.disparity_by_degree)
      CHECK(ds.by_degree.at(deg) == Catch::Approx(y2).margin(1e-9));

    const auto ps = nklon::shortest_paths(p.lon, 2);
    REQUIRE(ps.mean_path_length.has_value());
    CHECK(*ps.mean_path_length ==
          Catch::Approx(*expected.mean_path_length).margin(1e-9));
    CHECK(*ps.mean_path_to_global ==
          Catch::Approx(*expected.mean_path_to_global).margin(1e-9));

    CHECK(nklon::self_weight_mean(p.lon) ==
          Catch::Approx(expected.mean_self_weight).margin(1e-9));
  }
}

TEST_CASE("compute_all composes the individual operations") {
  const auto p = run_pipeline(8, 3, 86);
  const auto st = nklon::compute_all(p.inst, p.part, p.lon);
  CHECK(st.n_v == p.lon.size());
  CHECK(st.n_e == p.lon.offdiag_edge_count());
  CHECK(st.self_loop_count == p.lon.self_loop_count());
  const auto cs = nklon::weighted_clustering(p.lon);
  CHECK(st.mean_clustering == cs.mean_with_self);
  CHECK(st.mean_clustering_offdiag == cs.mean);
  const auto dsp = nklon::disparity(p.lon);
  CHECK(st.mean_disparity == dsp.mean_with_self);
  CHECK(st.mean_disparity_offdiag == dsp.mean);
  const auto ps = nklon::shortest_paths(p.lon);
  CHECK(st.mean_path_length == ps.mean_path_length);
  CHECK(st.mean_path_to_global == ps.mean_path_to_global);
  CHECK(st.mean_self_weight == nklon::self_weight_mean(p.lon));
  CHECK(st.global_basin_fraction == nklon::global_optimum_basin_fraction(p.part));
  CHECK(st.fitness_size_corr == nklon::fitness_size_correlation(p.part));
}

TEST_CASE("a single-node network reports absent path and disparity stats") {
  const auto p = run_pipeline(6, 0, 87);
  const auto st = nklon::compute_all(p.inst, p.part, p.lon);
  CHECK(st.n_v == 1);
  CHECK(st.n_e == 0);
  CHECK(st.self_loop_count == 1);
  CHECK(st.mean_self_weight == 1.0);
  CHECK_FALSE(st.mean_path_length.has_value());
  CHECK_FALSE(st.mean_path_to_global.has_value());
  CHECK(st.mean_disparity == 1.0);  // the unit row is all self-loop
  CHECK_FALSE(st.mean_disparity_offdiag.has_value());
  CHECK(st.mean_clustering == 0.0);
  CHECK_FALSE(st.fitness_size_corr.has_value());
  CHECK_FALSE(st.regression.has_value());
  CHECK(st.isolated_nodes == 1);
}

TEST_CASE("stats serialization round-trips") {
  const auto p = run_pipeline(8, 5, 88);
  const auto st = nklon::compute_all(p.inst, p.part, p.lon);
  const auto back = nklon::stats_from_json(nklon::to_json(st));
  CHECK(back.n_v == st.n_v);
  CHECK(back.n_e == st.n_e);
  CHECK(back.self_loop_count == st.self_loop_count);
  CHECK(back.mean_clustering == st.mean_clustering);
  CHECK(back.mean_clustering_offdiag == st.mean_clustering_offdiag);
  CHECK(back.mean_disparity == st.mean_disparity);
  CHECK(back.mean_disparity_offdiag == st.mean_disparity_offdiag);
  CHECK(back.mean_path_length == st.mean_path_length);
  CHECK(back.mean_path_to_global == st.mean_path_to_global);
  CHECK(back.mean_self_weight == st.mean_self_weight);
  CHECK(back.global_basin_fraction == st.global_basin_fraction);
  CHECK(back.mean_interior_fraction == st.mean_interior_fraction);
  CHECK(back.fitness_size_corr == st.fitness_size_corr);
  REQUIRE(back.regression.has_value() == st.regression.has_value());
  if (st.regression) {
    CHECK(back.regression->rho == st.regression->rho);
    CHECK(back.regression->alpha == st.regression->alpha);
    CHECK(back.regression->beta == st.regression->beta);
  }
  CHECK(back.disparity_by_degree == st.disparity_by_degree);
  REQUIRE(back.weight_histogram_bins.size() == st.weight_histogram_bins.size());
  for (std::size_t i = 0; i < st.weight_histogram_bins.size(); ++i) {
    CHECK(back.weight_histogram_bins[i].index == st.weight_histogram_bins[i].index);
    CHECK(back.weight_histogram_bins[i].count == st.weight_histogram_bins[i].count);
    CHECK(back.weight_histogram_bins[i].pdf == st.weight_histogram_bins[i].pdf);
  }
}

TEST_CASE("metric bounds hold across random instances") {
  for (const auto [n, k, seed] : {std::tuple{8, 2, 91}, {8, 6, 92}, {9, 5, 93}}) {
    const auto p = run_pipeline(n, k, static_cast<std::uint64_t>(seed));
    CHECK(nklon::check_invariants(p.inst, p.part, p.lon).empty());
  }
}
