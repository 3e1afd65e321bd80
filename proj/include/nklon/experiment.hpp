#pragma once

#include <atomic>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include <json.hpp>

#include "nklon/basin.hpp"
#include "nklon/lon.hpp"
#include "nklon/metrics.hpp"
#include "nklon/nk_model.hpp"
#include "nklon/stats.hpp"
#include "nklon/validate.hpp"

namespace nklon {

struct plan_cell {
  int n = 0;
  int k = 0;
};

// One batch: an ensemble of independently seeded instances per (n, k) cell.
struct experiment_plan {
  std::vector<plan_cell> cells;
  int replicates = 30;
  std::uint64_t base_seed = 1;
  neighborhood model = neighborhood::random;
  std::string out_dir;
  int jobs = 0;  // 0 = hardware concurrency
  int bins_per_decade = 10;
  bool export_lon = false;
};

inline constexpr const char* seed_derivation_note =
    "instance_seed = splitmix64(base_seed XOR splitmix64(cell_index * 2^32 + "
    "replicate_index)); collision-free across the plan";

inline constexpr const char* edge_count_note =
    "n_e counts directed off-diagonal edges; n_e_total additionally counts "
    "self-loops, the convention the published reference tables follow";

// Injective for cell_index, replicate < 2^32: both mixes are bijections.
inline std::uint64_t derive_seed(std::uint64_t base_seed, std::size_t cell_index,
                                 int replicate) {
  const std::uint64_t tag = (static_cast<std::uint64_t>(cell_index) << 32) |
                            static_cast<std::uint32_t>(replicate);
  return splitmix64(base_seed ^ splitmix64(tag));
}

inline nlohmann::json to_json(const experiment_plan& plan) {
  auto cells = nlohmann::json::array();
  for (const plan_cell& c : plan.cells) cells.push_back({{"n", c.n}, {"k", c.k}});
  return nlohmann::json{{"cells", cells},
                        {"replicates", plan.replicates},
                        {"base_seed", plan.base_seed},
                        {"model", to_string(plan.model)},
                        {"out", plan.out_dir},
                        {"jobs", plan.jobs},
                        {"bins_per_decade", plan.bins_per_decade},
                        {"export_lon", plan.export_lon}};
}

inline experiment_plan plan_from_json(const nlohmann::json& j) {
  experiment_plan plan;
  try {
    for (const auto& cell : j.at("cells"))
      plan.cells.push_back({cell.at("n").get<int>(), cell.at("k").get<int>()});
    plan.replicates = j.value("replicates", 30);
    plan.base_seed = j.value("base_seed", std::uint64_t{1});
    plan.model = neighborhood_from_string(j.value("model", std::string("random")));
    plan.out_dir = j.value("out", std::string());
    plan.jobs = j.value("jobs", 0);
    plan.bins_per_decade = j.value("bins_per_decade", 10);
    plan.export_lon = j.value("export_lon", false);
  } catch (const nlohmann::json::exception& e) {
    throw format_error(std::string("malformed plan: ") + e.what());
  }
  if (plan.replicates < 1) throw format_error("plan needs at least one replicate");
  for (const plan_cell& c : plan.cells)
    if (c.n < 1 || c.k < 0 || c.k > c.n - 1)
      throw format_error("plan cell (n=" + std::to_string(c.n) +
                         ", k=" + std::to_string(c.k) + ") is invalid");
  return plan;
}

inline experiment_plan load_plan(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw io_error("cannot open '" + path + "' for reading");
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw format_error("malformed plan file '" + path + "': " + e.what());
  }
  return plan_from_json(j);
}

// Mean / sample-std over the replicates where a statistic was defined;
// undefined values are excluded and counted, never folded in as zeros.
struct agg_scalar {
  int count = 0;
  int excluded = 0;
  double mean = 0.0;
  std::optional<double> stddev;
};

inline agg_scalar aggregate_samples(const std::vector<std::optional<double>>& samples) {
  agg_scalar agg;
  std::vector<double> present;
  for (const auto& s : samples) {
    if (s)
      present.push_back(*s);
    else
      ++agg.excluded;
  }
  agg.count = static_cast<int>(present.size());
  if (!present.empty()) agg.mean = mean(present);
  agg.stddev = sample_std(present);
  return agg;
}

struct cell_aggregate {
  int n = 0;
  int k = 0;
  int replicates = 0;  // completed replicates
  int failures = 0;
  std::uint64_t invariant_violations = 0;
  std::map<std::string, agg_scalar> scalars;
  std::map<int, agg_scalar> disparity_by_degree;
  std::vector<histogram_bin> mean_histogram;  // pdf averaged bin-for-bin
  std::vector<std::string> artifacts;         // stats paths relative to out dir
};

struct aggregate_report {
  std::uint64_t base_seed = 0;
  neighborhood model = neighborhood::random;
  int replicates = 0;
  int bins_per_decade = 10;
  std::string seed_derivation = seed_derivation_note;
  std::string edge_conventions = edge_count_note;
  std::vector<cell_aggregate> cells;  // ascending (n, k)
  std::vector<std::string> failures;
};

// The scalar columns every report row carries, in a fixed order.
inline const std::vector<std::string>& report_scalar_names() {
  static const std::vector<std::string> names = {
      "n_v",
      "n_e",
      "n_e_total",
      "self_loops",
      "clustering",
      "clustering_offdiag",
      "disparity",
      "disparity_offdiag",
      "path_length",
      "path_to_global",
      "self_weight",
      "global_basin_fraction",
      "interior_fraction",
      "fitness_size_correlation",
      "regression_rho",
      "regression_alpha",
      "regression_beta"};
  return names;
}

inline std::map<std::string, std::optional<double>> named_scalars(const network_stats& st) {
  std::map<std::string, std::optional<double>> out;
  out["n_v"] = static_cast<double>(st.n_v);
  out["n_e"] = static_cast<double>(st.n_e);
  // the published convention for total edge counts includes self-loops
  out["n_e_total"] = static_cast<double>(st.n_e + st.self_loop_count);
  out["self_loops"] = static_cast<double>(st.self_loop_count);
  out["clustering"] = st.mean_clustering;
  out["clustering_offdiag"] = st.mean_clustering_offdiag;
  out["disparity"] = st.mean_disparity;
  out["disparity_offdiag"] = st.mean_disparity_offdiag;
  out["path_length"] = st.mean_path_length;
  out["path_to_global"] = st.mean_path_to_global;
  out["self_weight"] = st.mean_self_weight;
  out["global_basin_fraction"] = st.global_basin_fraction;
  out["interior_fraction"] = st.mean_interior_fraction;
  out["fitness_size_correlation"] = st.fitness_size_corr;
  out["regression_rho"] =
      st.regression ? std::optional<double>(st.regression->rho) : std::nullopt;
  out["regression_alpha"] =
      st.regression ? std::optional<double>(st.regression->alpha) : std::nullopt;
  out["regression_beta"] =
      st.regression ? std::optional<double>(st.regression->beta) : std::nullopt;
  return out;
}

namespace detail {

inline void write_stats_file(const std::string& path, const network_stats& st,
                             const std::vector<std::string>& violations) {
  nlohmann::json j = to_json(st);
  j["invariant_violations"] = violations;
  std::ofstream out(path);
  if (!out) throw io_error("cannot open '" + path + "' for writing");
  out << j.dump(2) << '\n';
  if (!out) throw io_error("failed writing '" + path + "'");
}

struct stats_record {
  network_stats stats;
  std::vector<std::string> violations;
};

inline stats_record load_stats_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw io_error("cannot open '" + path + "' for reading");
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw format_error("malformed stats file '" + path + "': " + e.what());
  }
  stats_record rec;
  rec.stats = stats_from_json(j);
  if (j.contains("invariant_violations"))
    rec.violations = j.at("invariant_violations").get<std::vector<std::string>>();
  return rec;
}

inline std::string cell_dir_name(const plan_cell& cell) {
  return "n" + std::to_string(cell.n) + "_k" + std::to_string(cell.k);
}

inline std::string replicate_stem(int replicate) {
  char buf[16];
  std::snprintf(buf, sizeof buf, "rep%03d", replicate);
  return buf;
}

inline histogram_bin grid_bin(int index, int bins_per_decade) {
  histogram_bin bin;
  bin.index = index;
  bin.lower = std::pow(10.0, static_cast<double>(index) / bins_per_decade);
  bin.upper = std::pow(10.0, static_cast<double>(index + 1) / bins_per_decade);
  bin.center = std::sqrt(bin.lower * bin.upper);
  return bin;
}

}  // namespace detail

// Runs every (cell, replicate) task, persisting one instance file and one
// stats file per replicate, then aggregates.  Replicates whose stats file
// already parses are skipped, so an interrupted run resumes to the same
// bytes.  Failures are recorded and the run continues.
inline aggregate_report run_plan(const experiment_plan& plan, bool quiet = false) {
  namespace fs = std::filesystem;
  if (plan.out_dir.empty()) throw domain_error("plan has no output directory");
  if (plan.replicates < 1) throw domain_error("plan needs at least one replicate");
  fs::create_directories(plan.out_dir);

  struct task_result {
    bool done = false;
    std::string error;
  };
  std::vector<std::vector<task_result>> results(
      plan.cells.size(), std::vector<task_result>(static_cast<std::size_t>(plan.replicates)));

  struct task_ref {
    std::size_t cell;
    int replicate;
  };
  std::vector<task_ref> tasks;
  for (std::size_t c = 0; c < plan.cells.size(); ++c) {
    fs::create_directories(fs::path(plan.out_dir) / detail::cell_dir_name(plan.cells[c]));
    for (int r = 0; r < plan.replicates; ++r) tasks.push_back({c, r});
  }

  std::atomic<std::size_t> next{0};
  std::mutex log_mutex;
  const int jobs = plan.jobs > 0
                       ? plan.jobs
                       : std::max(1u, std::thread::hardware_concurrency());

  auto worker = [&] {
    for (;;) {
      const std::size_t t = next.fetch_add(1);
      if (t >= tasks.size()) return;
      const auto [cell_idx, rep] = tasks[t];
      const plan_cell cell = plan.cells[cell_idx];
      const fs::path dir = fs::path(plan.out_dir) / detail::cell_dir_name(cell);
      const std::string stem = detail::replicate_stem(rep);
      const fs::path stats_path = dir / (stem + ".stats.json");
      const fs::path instance_path = dir / (stem + ".instance.json");
      try {
        bool have = false;
        if (fs::exists(stats_path)) {
          try {
            detail::load_stats_file(stats_path.string());
            have = true;
          } catch (const std::exception&) {
            have = false;  // recompute a truncated or stale file
          }
        }
        if (!have) {
          const std::uint64_t seed = derive_seed(plan.base_seed, cell_idx, rep);
          const nk_instance inst = generate_instance(cell.n, cell.k, plan.model, seed);
          if (!fs::exists(instance_path)) save_instance(inst, instance_path.string());
          const basin_partition part = map_basins(inst);
          const local_optima_network lon = build_lon(inst, part);
          const network_stats stats =
              compute_all(inst, part, lon, 1, plan.bins_per_decade);
          const auto violations = check_invariants(inst, part, lon);
          if (plan.export_lon) {
            export_edge_list(lon, (dir / (stem + ".nodes.csv")).string(),
                             (dir / (stem + ".edges.csv")).string());
            export_graphml(lon, (dir / (stem + ".graphml")).string());
          }
          detail::write_stats_file(stats_path.string(), stats, violations);
        }
        results[cell_idx][static_cast<std::size_t>(rep)].done = true;
        if (!quiet) {
          std::lock_guard<std::mutex> lock(log_mutex);
          std::cerr << detail::cell_dir_name(cell) << " " << stem
                    << (have ? " (cached)" : " done") << "\n";
        }
      } catch (const std::exception& e) {
        results[cell_idx][static_cast<std::size_t>(rep)].error = e.what();
        if (!quiet) {
          std::lock_guard<std::mutex> lock(log_mutex);
          std::cerr << detail::cell_dir_name(cell) << " " << stem
                    << " FAILED: " << e.what() << "\n";
        }
      }
    }
  };

  std::vector<std::thread> pool;
  for (int w = 0; w < jobs; ++w) pool.emplace_back(worker);
  for (auto& t : pool) t.join();

  aggregate_report report;
  report.base_seed = plan.base_seed;
  report.model = plan.model;
  report.replicates = plan.replicates;
  report.bins_per_decade = plan.bins_per_decade;

  // aggregate in ascending (n, k) order regardless of plan order
  std::vector<std::size_t> order(plan.cells.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    const plan_cell &ca = plan.cells[a], &cb = plan.cells[b];
    return ca.n != cb.n ? ca.n < cb.n : ca.k < cb.k;
  });

  for (const std::size_t cell_idx : order) {
    const plan_cell cell = plan.cells[cell_idx];
    cell_aggregate agg;
    agg.n = cell.n;
    agg.k = cell.k;

    std::map<std::string, std::vector<std::optional<double>>> samples;
    std::map<int, std::vector<std::optional<double>>> disparity_samples;
    std::map<int, std::pair<double, std::uint64_t>> hist_acc;  // index -> (pdf sum, count sum)
    int hist_replicates = 0;

    for (int rep = 0; rep < plan.replicates; ++rep) {
      const auto& res = results[cell_idx][static_cast<std::size_t>(rep)];
      if (!res.done) {
        ++agg.failures;
        report.failures.push_back(detail::cell_dir_name(cell) + " " +
                                  detail::replicate_stem(rep) + ": " + res.error);
        continue;
      }
      const std::string rel = detail::cell_dir_name(cell) + "/" +
                              detail::replicate_stem(rep) + ".stats.json";
      const auto rec =
          detail::load_stats_file((std::filesystem::path(plan.out_dir) / rel).string());
      ++agg.replicates;
      agg.invariant_violations += rec.violations.size();
      agg.artifacts.push_back(rel);
      for (const auto& [name, value] : named_scalars(rec.stats))
        samples[name].push_back(value);
      for (const auto& [deg, y2] : rec.stats.disparity_by_degree)
        disparity_samples[deg].push_back(y2);
      ++hist_replicates;
      for (const histogram_bin& bin : rec.stats.weight_histogram_bins) {
        auto& slot = hist_acc[bin.index];
        slot.first += bin.pdf;
        slot.second += bin.count;
      }
    }

    for (const std::string& name : report_scalar_names())
      agg.scalars[name] = aggregate_samples(samples[name]);
    for (auto& [deg, vals] : disparity_samples) {
      // degrees absent from a replicate have no nodes there: excluded, not zero
      agg.disparity_by_degree[deg] = aggregate_samples(vals);
      agg.disparity_by_degree[deg].excluded = agg.replicates -
          agg.disparity_by_degree[deg].count;
    }
    if (hist_replicates > 0) {
      for (const auto& [index, slot] : hist_acc) {
        histogram_bin bin = detail::grid_bin(index, plan.bins_per_decade);
        bin.count = slot.second;
        bin.pdf = slot.first / hist_replicates;  // replicates without the bin hold pdf 0
        agg.mean_histogram.push_back(bin);
      }
    }
    report.cells.push_back(std::move(agg));
  }
  return report;
}

inline nlohmann::json to_json(const aggregate_report& report) {
  nlohmann::json j;
  j["base_seed"] = report.base_seed;
  j["model"] = to_string(report.model);
  j["replicates"] = report.replicates;
  j["bins_per_decade"] = report.bins_per_decade;
  j["seed_derivation"] = report.seed_derivation;
  j["edge_conventions"] = report.edge_conventions;
  j["failures"] = report.failures;
  auto cells = nlohmann::json::array();
  for (const cell_aggregate& cell : report.cells) {
    nlohmann::json c;
    c["n"] = cell.n;
    c["k"] = cell.k;
    c["replicates"] = cell.replicates;
    c["failures"] = cell.failures;
    c["invariant_violations"] = cell.invariant_violations;
    c["artifacts"] = cell.artifacts;
    nlohmann::json scalars;
    for (const auto& [name, agg] : cell.scalars) {
      nlohmann::json s;
      s["count"] = agg.count;
      s["excluded"] = agg.excluded;
      s["mean"] = agg.mean;
      detail::put_optional(s, "std", agg.stddev);
      scalars[name] = s;
    }
    c["stats"] = scalars;
    auto by_degree = nlohmann::json::array();
    for (const auto& [deg, agg] : cell.disparity_by_degree)
      by_degree.push_back({{"degree", deg},
                           {"mean_y2", agg.mean},
                           {"replicates", agg.count}});
    c["disparity_by_degree"] = by_degree;
    auto hist = nlohmann::json::array();
    for (const histogram_bin& bin : cell.mean_histogram)
      hist.push_back({{"index", bin.index},
                      {"lower", bin.lower},
                      {"upper", bin.upper},
                      {"center", bin.center},
                      {"count", bin.count},
                      {"pdf", bin.pdf}});
    c["weight_histogram"] = hist;
    cells.push_back(std::move(c));
  }
  j["cells"] = cells;
  return j;
}

inline aggregate_report report_from_json(const nlohmann::json& j) {
  aggregate_report report;
  try {
    report.base_seed = j.at("base_seed").get<std::uint64_t>();
    report.model = neighborhood_from_string(j.at("model").get<std::string>());
    report.replicates = j.at("replicates").get<int>();
    report.bins_per_decade = j.at("bins_per_decade").get<int>();
    report.seed_derivation = j.at("seed_derivation").get<std::string>();
    report.edge_conventions = j.value("edge_conventions", std::string());
    report.failures = j.at("failures").get<std::vector<std::string>>();
    for (const auto& c : j.at("cells")) {
      cell_aggregate cell;
      cell.n = c.at("n").get<int>();
      cell.k = c.at("k").get<int>();
      cell.replicates = c.at("replicates").get<int>();
      cell.failures = c.at("failures").get<int>();
      cell.invariant_violations = c.at("invariant_violations").get<std::uint64_t>();
      cell.artifacts = c.at("artifacts").get<std::vector<std::string>>();
      for (const auto& [name, s] : c.at("stats").items()) {
        agg_scalar agg;
        agg.count = s.at("count").get<int>();
        agg.excluded = s.at("excluded").get<int>();
        agg.mean = s.at("mean").get<double>();
        agg.stddev = detail::get_optional(s, "std");
        cell.scalars[name] = agg;
      }
      for (const auto& entry : c.at("disparity_by_degree")) {
        agg_scalar agg;
        agg.mean = entry.at("mean_y2").get<double>();
        agg.count = entry.at("replicates").get<int>();
        cell.disparity_by_degree[entry.at("degree").get<int>()] = agg;
      }
      for (const auto& entry : c.at("weight_histogram")) {
        histogram_bin bin;
        bin.index = entry.at("index").get<int>();
        bin.lower = entry.at("lower").get<double>();
        bin.upper = entry.at("upper").get<double>();
        bin.center = entry.at("center").get<double>();
        bin.count = entry.at("count").get<std::uint64_t>();
        bin.pdf = entry.at("pdf").get<double>();
        cell.mean_histogram.push_back(bin);
      }
      report.cells.push_back(std::move(cell));
    }
  } catch (const nlohmann::json::exception& e) {
    throw format_error(std::string("malformed report: ") + e.what());
  }
  return report;
}

inline void save_report(const aggregate_report& report, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw io_error("cannot open '" + path + "' for writing");
  out << to_json(report).dump(2) << '\n';
  if (!out) throw io_error("failed writing '" + path + "'");
}

inline aggregate_report load_report(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw io_error("cannot open '" + path + "' for reading");
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw format_error("malformed report file '" + path + "': " + e.what());
  }
  return report_from_json(j);
}

namespace detail {

inline std::string csv_value(const agg_scalar& agg) {
  if (agg.count == 0) return "";
  return full_precision(agg.mean);
}

inline std::string csv_std(const agg_scalar& agg) {
  if (!agg.stddev) return "";
  return full_precision(*agg.stddev);
}

}  // namespace detail

// Emits the summary tables and the plot-ready per-figure data files.
// Rows are ordered by ascending (n, k); an empty report emits headers only.
inline void render_tables(const aggregate_report& report, const std::string& dir) {
  namespace fs = std::filesystem;
  fs::create_directories(dir);
  const auto path = [&dir](const char* name) { return (fs::path(dir) / name).string(); };
  const auto open = [](const std::string& p) {
    std::ofstream out(p);
    if (!out) throw io_error("cannot open '" + p + "' for writing");
    return out;
  };
  const auto cell_scalar = [](const cell_aggregate& cell, const std::string& name) {
    const auto it = cell.scalars.find(name);
    return it == cell.scalars.end() ? agg_scalar{} : it->second;
  };

  {
    auto out = open(path("network_stats.csv"));
    out << "n,k,replicates,n_v_mean,n_v_std,n_e_mean,n_e_std,"
           "n_e_total_mean,n_e_total_std,clustering_mean,"
           "clustering_std,disparity_mean,disparity_std,path_length_mean,"
           "path_length_std,path_length_excluded\n";
    for (const cell_aggregate& cell : report.cells) {
      const auto d = cell_scalar(cell, "path_length");
      out << cell.n << ',' << cell.k << ',' << cell.replicates << ','
          << detail::csv_value(cell_scalar(cell, "n_v")) << ','
          << detail::csv_std(cell_scalar(cell, "n_v")) << ','
          << detail::csv_value(cell_scalar(cell, "n_e")) << ','
          << detail::csv_std(cell_scalar(cell, "n_e")) << ','
          << detail::csv_value(cell_scalar(cell, "n_e_total")) << ','
          << detail::csv_std(cell_scalar(cell, "n_e_total")) << ','
          << detail::csv_value(cell_scalar(cell, "clustering")) << ','
          << detail::csv_std(cell_scalar(cell, "clustering")) << ','
          << detail::csv_value(cell_scalar(cell, "disparity")) << ','
          << detail::csv_std(cell_scalar(cell, "disparity")) << ','
          << detail::csv_value(d) << ',' << detail::csv_std(d) << ','
          << d.excluded << '\n';
    }
  }
  {
    auto out = open(path("basin_regression.csv"));
    out << "n,k,replicates,rho_mean,rho_std,alpha_mean,alpha_std,beta_mean,"
           "beta_std,excluded\n";
    for (const cell_aggregate& cell : report.cells) {
      const auto rho = cell_scalar(cell, "regression_rho");
      out << cell.n << ',' << cell.k << ',' << cell.replicates << ','
          << detail::csv_value(rho) << ',' << detail::csv_std(rho) << ','
          << detail::csv_value(cell_scalar(cell, "regression_alpha")) << ','
          << detail::csv_std(cell_scalar(cell, "regression_alpha")) << ','
          << detail::csv_value(cell_scalar(cell, "regression_beta")) << ','
          << detail::csv_std(cell_scalar(cell, "regression_beta")) << ','
          << rho.excluded << '\n';
    }
  }
  {
    auto out = open(path("basin_interiors.csv"));
    out << "n,k,replicates,interior_fraction_mean,interior_fraction_std\n";
    for (const cell_aggregate& cell : report.cells)
      out << cell.n << ',' << cell.k << ',' << cell.replicates << ','
          << detail::csv_value(cell_scalar(cell, "interior_fraction")) << ','
          << detail::csv_std(cell_scalar(cell, "interior_fraction")) << '\n';
  }
  {
    auto out = open(path("global_basin_fraction.csv"));
    out << "n,k,replicates,fraction_mean,fraction_std\n";
    for (const cell_aggregate& cell : report.cells)
      out << cell.n << ',' << cell.k << ',' << cell.replicates << ','
          << detail::csv_value(cell_scalar(cell, "global_basin_fraction")) << ','
          << detail::csv_std(cell_scalar(cell, "global_basin_fraction")) << '\n';
  }
  {
    auto out = open(path("path_lengths.csv"));
    out << "n,k,replicates,path_length_mean,path_length_std,"
           "path_to_global_mean,path_to_global_std\n";
    for (const cell_aggregate& cell : report.cells)
      out << cell.n << ',' << cell.k << ',' << cell.replicates << ','
          << detail::csv_value(cell_scalar(cell, "path_length")) << ','
          << detail::csv_std(cell_scalar(cell, "path_length")) << ','
          << detail::csv_value(cell_scalar(cell, "path_to_global")) << ','
          << detail::csv_std(cell_scalar(cell, "path_to_global")) << '\n';
  }
  {
    auto out = open(path("self_weights.csv"));
    out << "n,k,replicates,self_weight_mean,self_weight_std\n";
    for (const cell_aggregate& cell : report.cells)
      out << cell.n << ',' << cell.k << ',' << cell.replicates << ','
          << detail::csv_value(cell_scalar(cell, "self_weight")) << ','
          << detail::csv_std(cell_scalar(cell, "self_weight")) << '\n';
  }
  {
    auto out = open(path("weight_distribution.csv"));
    out << "n,k,bin_index,bin_center,pdf\n";
    for (const cell_aggregate& cell : report.cells)
      for (const histogram_bin& bin : cell.mean_histogram)
        out << cell.n << ',' << cell.k << ',' << bin.index << ','
            << detail::full_precision(bin.center) << ','
            << detail::full_precision(bin.pdf) << '\n';
  }
  {
    auto out = open(path("disparity_by_degree.csv"));
    out << "n,k,degree,mean_y2,reference_1_over_k\n";
    for (const cell_aggregate& cell : report.cells)
      for (const auto& [deg, agg] : cell.disparity_by_degree)
        out << cell.n << ',' << cell.k << ',' << deg << ','
            << detail::full_precision(agg.mean) << ','
            << detail::full_precision(1.0 / deg) << '\n';
  }

  // human-readable mirrors
  const auto md_cell = [](const agg_scalar& agg) {
    if (agg.count == 0) return std::string("-");
    char buf[64];
    if (agg.stddev)
      std::snprintf(buf, sizeof buf, "%.4g ± %.3g", agg.mean, *agg.stddev);
    else
      std::snprintf(buf, sizeof buf, "%.4g", agg.mean);
    return std::string(buf);
  };
  {
    auto out = open(path("network_stats.md"));
    out << "| n | k | n_v | n_e | C^w | Y | d |\n"
        << "|---|---|-----|-----|-----|---|---|\n";
    for (const cell_aggregate& cell : report.cells)
      out << "| " << cell.n << " | " << cell.k << " | "
          << md_cell(cell_scalar(cell, "n_v")) << " | "
          << md_cell(cell_scalar(cell, "n_e_total")) << " | "
          << md_cell(cell_scalar(cell, "clustering")) << " | "
          << md_cell(cell_scalar(cell, "disparity")) << " | "
          << md_cell(cell_scalar(cell, "path_length")) << " |\n";
  }
  {
    auto out = open(path("basin_regression.md"));
    out << "| n | k | rho | alpha | beta |\n|---|---|-----|-------|------|\n";
    for (const cell_aggregate& cell : report.cells)
      out << "| " << cell.n << " | " << cell.k << " | "
          << md_cell(cell_scalar(cell, "regression_rho")) << " | "
          << md_cell(cell_scalar(cell, "regression_alpha")) << " | "
          << md_cell(cell_scalar(cell, "regression_beta")) << " |\n";
  }
  {
    auto out = open(path("basin_interiors.md"));
    out << "| n | k | interior fraction |\n|---|---|-------------------|\n";
    for (const cell_aggregate& cell : report.cells)
      out << "| " << cell.n << " | " << cell.k << " | "
          << md_cell(cell_scalar(cell, "interior_fraction")) << " |\n";
  }
}

}  // namespace nklon
