#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "nklon/basin.hpp"
#include "oracle.hpp"

using nklon::config_t;
using nklon::generate_instance;
using nklon::neighborhood;

namespace {

nklon::nk_instance random_instance(int n, int k, std::uint64_t seed) {
  return generate_instance(n, k, neighborhood::random, seed);
}

}  // namespace

TEST_CASE("a local optimum climbs to itself") {
  const auto inst = random_instance(7, 3, 21);
  const auto part = nklon::map_basins(inst);
  for (config_t opt : part.optima) CHECK(nklon::hill_climb(inst, opt) == opt);
}

TEST_CASE("climbing is idempotent and never decreases fitness") {
  const auto inst = random_instance(7, 4, 22);
  for (config_t c = 0; c < inst.space_size(); ++c) {
    const config_t opt = nklon::hill_climb(inst, c);
    CHECK(nklon::hill_climb(inst, opt) == opt);
    CHECK(nklon::evaluate(inst, opt) >= nklon::evaluate(inst, c));
  }
}

TEST_CASE("k = 0 landscapes are unimodal") {
  const auto inst = random_instance(8, 0, 23);
  const auto part = nklon::map_basins(inst);
  REQUIRE(part.optima.size() == 1);
  CHECK(part.basin_sizes[0] == inst.space_size());
  CHECK(nklon::global_optimum_basin_fraction(part) == 1.0);
  // with independent genes the optimum picks the better entry per gene
  config_t expected = 0;
  for (int i = 0; i < inst.n; ++i)
    if (inst.tables[static_cast<std::size_t>(i)][1] >
        inst.tables[static_cast<std::size_t>(i)][0])
      expected |= config_t{1} << i;
  CHECK(part.optima[0] == expected);
}

TEST_CASE("climbs agree with the naive climber from every start") {
  const auto inst = random_instance(8, 3, 24);
  for (config_t c = 0; c < inst.space_size(); ++c)
    CHECK(nklon::hill_climb(inst, c) == naive::hill_climb(inst, c));
}

TEST_CASE("the partition matches brute force exactly") {
  const auto inst = random_instance(8, 7, 25);
  const auto part = nklon::map_basins(inst);
  const auto ref = naive::map_basins(inst);
  CHECK(part.assignment == ref.assignment);
  CHECK(part.optima == ref.optima);
  CHECK(part.basin_sizes == ref.sizes);
  CHECK(part.global_optimum == ref.global);
}

TEST_CASE("the partition is independent of worker count") {
  const auto inst = random_instance(9, 4, 26);
  const auto serial = nklon::map_basins(inst, 1);
  const auto threaded = nklon::map_basins(inst, 4);
  CHECK(serial.assignment == threaded.assignment);
  CHECK(serial.optima == threaded.optima);
  CHECK(serial.basin_sizes == threaded.basin_sizes);
  CHECK(serial.global_optimum == threaded.global_optimum);
}

TEST_CASE("basins partition the configuration space") {
  for (std::uint64_t seed : {31, 32, 33}) {
    const auto inst = random_instance(8, 5, seed);
    const auto part = nklon::map_basins(inst);
    std::uint64_t total = 0;
    for (std::uint64_t s : part.basin_sizes) total += s;
    CHECK(total == inst.space_size());
    for (config_t opt : part.optima) CHECK(part.assignment[opt] == opt);
    for (std::size_t i = 0; i < part.optima.size(); ++i)
      CHECK(part.optimum_fitness[part.global_optimum] >= part.optimum_fitness[i]);
  }
}

TEST_CASE("the exhaustive mapper refuses oversized spaces") {
  const auto inst = random_instance(27, 2, 1);
  CHECK_THROWS_AS(nklon::map_basins(inst), nklon::capacity_error);
}

TEST_CASE("global optimum basin fraction matches brute force") {
  const auto inst = random_instance(8, 4, 27);
  const auto part = nklon::map_basins(inst);
  const auto ref = naive::map_basins(inst);
  std::uint64_t count = 0;
  for (config_t c : ref.assignment)
    if (c == ref.optima[ref.global]) ++count;
  CHECK(nklon::global_optimum_basin_fraction(part) ==
        Catch::Approx(static_cast<double>(count) / 256.0).margin(1e-15));
}

TEST_CASE("a single basin is all interior") {
  const auto inst = random_instance(6, 0, 28);
  const auto part = nklon::map_basins(inst);
  const auto geo = nklon::compute_basin_geometry(inst, part);
  REQUIRE(geo.interior_fractions.size() == 1);
  CHECK(geo.interior_fractions[0] == 1.0);
  CHECK(geo.mean_interior_fraction == 1.0);
}

TEST_CASE("singleton basins have an empty interior") {
  // scan seeds until an instance produces a size-1 basin
  for (std::uint64_t seed = 40;; ++seed) {
    REQUIRE(seed < 90);
    const auto inst = random_instance(8, 7, seed);
    const auto part = nklon::map_basins(inst);
    bool found = false;
    const auto geo = nklon::compute_basin_geometry(inst, part);
    for (std::size_t i = 0; i < part.basin_sizes.size(); ++i)
      if (part.basin_sizes[i] == 1) {
        found = true;
        CHECK(geo.interior_counts[i] == 0);
      }
    if (found) break;
  }
}

TEST_CASE("interior fractions match brute force") {
  const auto inst = random_instance(8, 5, 29);
  const auto part = nklon::map_basins(inst);
  const auto geo = nklon::compute_basin_geometry(inst, part);
  const auto ref = naive::map_basins(inst);
  const auto stats = naive::compute_metrics(inst, ref, naive::lon_weights(inst, ref), 10);
  REQUIRE(geo.interior_fractions.size() == stats.interior_fractions.size());
  for (std::size_t i = 0; i < geo.interior_fractions.size(); ++i)
    CHECK(geo.interior_fractions[i] ==
          Catch::Approx(stats.interior_fractions[i]).margin(1e-12));
  CHECK(geo.mean_interior_fraction ==
        Catch::Approx(stats.mean_interior_fraction).margin(1e-12));
}

TEST_CASE("two optima with the fitter owning the larger basin correlate at +1") {
  for (std::uint64_t seed = 50;; ++seed) {
    REQUIRE(seed < 200);
    const auto inst = random_instance(6, 1, seed);
    const auto part = nklon::map_basins(inst);
    if (part.optima.size() != 2) continue;
    const std::size_t fitter = part.global_optimum;
    if (part.basin_sizes[fitter] <= part.basin_sizes[1 - fitter]) continue;
    const auto corr = nklon::fitness_size_correlation(part);
    REQUIRE(corr.has_value());
    CHECK(*corr == Catch::Approx(1.0).margin(1e-12));
    break;
  }
}

TEST_CASE("fitness/size correlation matches an independent computation") {
  const auto inst = random_instance(10, 3, 51);
  const auto part = nklon::map_basins(inst);
  const auto ref = naive::map_basins(inst);
  const auto stats = naive::compute_metrics(inst, ref, naive::lon_weights(inst, ref), 10);
  const auto corr = nklon::fitness_size_correlation(part);
  REQUIRE(corr.has_value());
  REQUIRE(stats.fitness_size_corr.has_value());
  CHECK(*corr == Catch::Approx(*stats.fitness_size_corr).margin(1e-9));
}

TEST_CASE("correlation is absent without two optima") {
  const auto inst = random_instance(6, 0, 52);
  const auto part = nklon::map_basins(inst);
  CHECK_FALSE(nklon::fitness_size_correlation(part).has_value());
}

TEST_CASE("cumulative size regression reproduces the closed-form fit") {
  nklon::basin_partition part;
  part.basin_sizes = {1, 2, 4};
  const auto reg = nklon::basin_size_regression(part);
  REQUIRE(reg.has_value());
  // points (1, ln 3), (2, ln 2), (4, ln 1); least squares by hand
  CHECK(reg->rho == Catch::Approx(-0.999197013747223).margin(1e-9));
  CHECK(reg->alpha == Catch::Approx(1.44518587894808).margin(1e-9));
  CHECK(reg->beta == Catch::Approx(-0.363399738230885).margin(1e-9));
}

TEST_CASE("regression needs three distinct sizes") {
  nklon::basin_partition part;
  part.basin_sizes = {2, 2, 4};
  CHECK_FALSE(nklon::basin_size_regression(part).has_value());
}

TEST_CASE("regression matches an independent computation") {
  const auto inst = random_instance(10, 5, 53);
  const auto part = nklon::map_basins(inst);
  const auto ref = naive::map_basins(inst);
  const auto stats = naive::compute_metrics(inst, ref, naive::lon_weights(inst, ref), 10);
  const auto reg = nklon::basin_size_regression(part);
  REQUIRE(reg.has_value());
  REQUIRE(stats.reg_rho.has_value());
  CHECK(reg->rho == Catch::Approx(*stats.reg_rho).margin(1e-9));
  CHECK(reg->alpha == Catch::Approx(*stats.reg_alpha).margin(1e-9));
  CHECK(reg->beta == Catch::Approx(*stats.reg_beta).margin(1e-9));
}

TEST_CASE("regression intercept tracks the optimum count") {
  // exp(alpha) stays within a small factor of n_v: C(s) extrapolated to
  // s = 0 is anchored by C(smallest size) = n_v
  for (const auto [n, k, seed] : {std::tuple{10, 5, 61}, {10, 8, 62}, {9, 6, 63}}) {
    const auto inst = random_instance(n, k, static_cast<std::uint64_t>(seed));
    const auto part = nklon::map_basins(inst);
    const auto reg = nklon::basin_size_regression(part);
    REQUIRE(reg.has_value());
    const double ratio =
        std::exp(reg->alpha) / static_cast<double>(part.optima.size());
    CHECK(ratio > 0.4);
    CHECK(ratio < 2.5);
  }
}
