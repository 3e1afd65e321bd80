// Command-line front end: generate instances, analyze single instances,
// run batch plans, and render summary tables from a batch report.

#include <cstdint>
#include <filesystem>
#include <iostream>
#include <string>
#include <thread>

#include <CLI11.hpp>

#include "nklon/nklon.hpp"

namespace fs = std::filesystem;

namespace {

constexpr int exit_ok = 0;
constexpr int exit_error = 1;
constexpr int exit_invariant_failure = 2;

int run_generate(int n, int k, const std::string& model, std::uint64_t seed,
                 std::string out) {
  const auto inst =
      nklon::generate_instance(n, k, nklon::neighborhood_from_string(model), seed);
  if (out.empty()) out = nklon::instance_id(inst) + ".json";
  nklon::save_instance(inst, out);
  std::cout << "wrote " << out << "\n";
  return exit_ok;
}

int run_analyze(const std::string& instance_path, std::string out_dir, int jobs,
                int bins_per_decade, bool graphml) {
  const auto inst = nklon::load_instance(instance_path);
  if (out_dir.empty()) out_dir = ".";
  fs::create_directories(out_dir);

  const auto part = nklon::map_basins(inst, jobs);
  const auto lon = nklon::build_lon(inst, part);
  const auto stats = nklon::compute_all(inst, part, lon, jobs, bins_per_decade);
  const auto violations = nklon::check_invariants(inst, part, lon);

  const std::string stem = (fs::path(out_dir) / nklon::instance_id(inst)).string();
  nklon::export_edge_list(lon, stem + ".nodes.csv", stem + ".edges.csv");
  if (graphml) nklon::export_graphml(lon, stem + ".graphml");
  nklon::detail::write_stats_file(stem + ".stats.json", stats, violations);

  std::cout << "nodes: " << stats.n_v << "  edges: " << stats.n_e
            << "  global basin fraction: " << stats.global_basin_fraction << "\n"
            << "wrote " << stem << ".{stats.json,nodes.csv,edges.csv"
            << (graphml ? ",graphml" : "") << "}\n";

  if (!violations.empty()) {
    std::cerr << "invariant checks FAILED:\n";
    for (const auto& v : violations) std::cerr << "  " << v << "\n";
    return exit_invariant_failure;
  }
  return exit_ok;
}

int run_batch(const std::string& plan_path, const std::string& out_override,
              int jobs_override, int replicates_override, bool quiet) {
  auto plan = nklon::load_plan(plan_path);
  if (!out_override.empty()) plan.out_dir = out_override;
  if (jobs_override > 0) plan.jobs = jobs_override;
  if (replicates_override > 0) plan.replicates = replicates_override;
  if (plan.out_dir.empty())
    throw nklon::domain_error("no output directory: set \"out\" in the plan or pass --out");

  const auto report = nklon::run_plan(plan, quiet);
  const std::string report_path = (fs::path(plan.out_dir) / "report.json").string();
  nklon::save_report(report, report_path);
  std::cout << "wrote " << report_path << "\n";

  std::uint64_t violations = 0;
  int failures = 0;
  for (const auto& cell : report.cells) {
    violations += cell.invariant_violations;
    failures += cell.failures;
  }
  if (failures > 0)
    std::cerr << failures << " replicate(s) failed; see report failures\n";
  if (violations > 0) {
    std::cerr << violations << " invariant violation(s) recorded\n";
    return exit_invariant_failure;
  }
  return failures > 0 ? exit_error : exit_ok;
}

int run_tables(const std::string& report_path, std::string out_dir) {
  const auto report = nklon::load_report(report_path);
  if (out_dir.empty()) out_dir = fs::path(report_path).parent_path().string();
  if (out_dir.empty()) out_dir = ".";
  nklon::render_tables(report, out_dir);
  std::cout << "wrote tables under " << out_dir << "\n";
  return exit_ok;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"NK landscape generator and local-optima-network analyzer"};
  app.require_subcommand(1);

  int n = 14, k = 2, jobs = 0, bins_per_decade = 10, replicates = 0;
  std::uint64_t seed = 1;
  std::string model = "random", out, instance_path, plan_path, report_path;
  bool graphml = true, quiet = false;

  auto* generate = app.add_subcommand("generate", "generate one instance file");
  generate->add_option("--n", n, "gene count")->required();
  generate->add_option("--k", k, "epistasis degree")->required();
  generate->add_option("--model", model, "random|adjacent");
  generate->add_option("--seed", seed, "generation seed");
  generate->add_option("--out", out, "output file (default <id>.json)");

  auto* analyze = app.add_subcommand(
      "analyze", "map basins, build the optima network, compute statistics");
  analyze->add_option("instance", instance_path, "instance JSON file")->required();
  analyze->add_option("--out", out, "output directory (default .)");
  analyze->add_option("--jobs", jobs, "worker threads (default: all cores)");
  analyze->add_option("--bins-per-decade", bins_per_decade, "weight histogram resolution");
  analyze->add_flag("!--no-graphml", graphml, "skip the GraphML export");

  auto* batch = app.add_subcommand("batch", "run an ensemble plan file");
  batch->add_option("plan", plan_path, "plan JSON file")->required();
  batch->add_option("--out", out, "override the plan's output directory");
  batch->add_option("--jobs", jobs, "override the plan's worker count");
  batch->add_option("--replicates", replicates, "override the plan's replicate count");
  batch->add_flag("--quiet", quiet, "suppress progress lines");

  auto* tables = app.add_subcommand("tables", "render summary tables from a report");
  tables->add_option("report", report_path, "report JSON file")->required();
  tables->add_option("--out", out, "output directory (default: report's directory)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (generate->parsed()) return run_generate(n, k, model, seed, out);
    if (analyze->parsed()) {
      const int workers =
          jobs > 0 ? jobs : static_cast<int>(std::thread::hardware_concurrency());
      return run_analyze(instance_path, out, std::max(1, workers), bins_per_decade,
                         graphml);
    }
    if (batch->parsed()) return run_batch(plan_path, out, jobs, replicates, quiet);
    if (tables->parsed()) return run_tables(report_path, out);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_error;
  }
  return exit_error;
}
