#pragma once

#include <cstdint>
#include <fstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "nklon/errors.hpp"
#include "nklon/rng.hpp"

namespace nklon {

// A configuration is a bit string of length n encoded as an unsigned
// integer: gene i lives in bit i.
using config_t = std::uint32_t;

enum class neighborhood { random, adjacent };

inline std::string to_string(neighborhood m) {
  return m == neighborhood::random ? "random" : "adjacent";
}

inline neighborhood neighborhood_from_string(const std::string& s) {
  if (s == "random") return neighborhood::random;
  if (s == "adjacent") return neighborhood::adjacent;
  throw format_error("unknown neighborhood model '" + s + "'");
}

// Encodings are 32-bit and the toolkit targets exhaustive analysis.
inline constexpr int max_genes = 30;

// A fully materialized NK landscape: the epistatic links and the
// contribution table of every gene, plus the seed it was grown from.
// Immutable once built; evaluation is pure and thread-safe.
struct nk_instance {
  int n = 0;
  int k = 0;
  neighborhood model = neighborhood::random;
  std::uint64_t seed = 0;
  std::vector<std::vector<int>> links;      // k context genes per gene, ordered
  std::vector<std::vector<double>> tables;  // 2^(k+1) contributions per gene

  std::uint64_t space_size() const { return std::uint64_t{1} << n; }
};

inline std::string instance_id(const nk_instance& inst) {
  return "nk_n" + std::to_string(inst.n) + "_k" + std::to_string(inst.k) +
         "_" + to_string(inst.model) + "_s" + std::to_string(inst.seed);
}

namespace detail {

inline void require_config(int n, config_t c) {
  if (n < 32 && (c >> n) != 0)
    throw domain_error("configuration " + std::to_string(c) +
                       " does not fit " + std::to_string(n) + " genes");
}

// Deterministic adjacent pattern: the k genes nearest to i in circular
// order, taken alternately left/right starting left.
inline std::vector<int> adjacent_links(int n, int k, int gene) {
  std::vector<int> out;
  out.reserve(static_cast<std::size_t>(k));
  for (int step = 1; static_cast<int>(out.size()) < k; ++step) {
    out.push_back(((gene - step) % n + n) % n);
    if (static_cast<int>(out.size()) < k) out.push_back((gene + step) % n);
  }
  return out;
}

}  // namespace detail

// Validates every structural invariant; throws format_error naming the
// first violated one.  Used on load and after generation.
inline void validate_instance(const nk_instance& inst) {
  if (inst.n < 1 || inst.n > max_genes)
    throw format_error("n = " + std::to_string(inst.n) +
                       " outside [1, " + std::to_string(max_genes) + "]");
  if (inst.k < 0 || inst.k > inst.n - 1)
    throw format_error("k = " + std::to_string(inst.k) +
                       " outside [0, n-1]");
  const std::size_t genes = static_cast<std::size_t>(inst.n);
  if (inst.links.size() != genes)
    throw format_error("links must hold one list per gene");
  if (inst.tables.size() != genes)
    throw format_error("tables must hold one table per gene");
  const std::size_t rows = std::size_t{1} << (inst.k + 1);
  for (int i = 0; i < inst.n; ++i) {
    const auto& ls = inst.links[static_cast<std::size_t>(i)];
    if (ls.size() != static_cast<std::size_t>(inst.k))
      throw format_error("links[" + std::to_string(i) + "] has " +
                         std::to_string(ls.size()) + " entries, expected k = " +
                         std::to_string(inst.k));
    std::vector<bool> seen(genes, false);
    for (int j : ls) {
      if (j < 0 || j >= inst.n || j == i)
        throw format_error("links[" + std::to_string(i) +
                           "] contains invalid gene index " + std::to_string(j));
      if (seen[static_cast<std::size_t>(j)])
        throw format_error("links[" + std::to_string(i) +
                           "] contains duplicate gene index " + std::to_string(j));
      seen[static_cast<std::size_t>(j)] = true;
    }
    if (inst.model == neighborhood::adjacent &&
        ls != detail::adjacent_links(inst.n, inst.k, i))
      throw format_error("links[" + std::to_string(i) +
                         "] does not follow the adjacent pattern");
    const auto& table = inst.tables[static_cast<std::size_t>(i)];
    if (table.size() != rows)
      throw format_error("tables[" + std::to_string(i) + "] has " +
                         std::to_string(table.size()) + " entries, expected 2^(k+1) = " +
                         std::to_string(rows));
    for (double v : table)
      if (!(v >= 0.0 && v < 1.0))
        throw format_error("tables[" + std::to_string(i) +
                           "] entry " + std::to_string(v) + " outside [0,1)");
  }
}

// Pure function of (n, k, model, seed): identical arguments reproduce a
// bit-identical instance.
inline nk_instance generate_instance(int n, int k, neighborhood model,
                                     std::uint64_t seed) {
  if (n < 1 || n > max_genes)
    throw domain_error("n = " + std::to_string(n) + " outside [1, " +
                       std::to_string(max_genes) + "]");
  if (k < 0 || k > n - 1)
    throw domain_error("k = " + std::to_string(k) + " outside [0, n-1]");

  nk_instance inst;
  inst.n = n;
  inst.k = k;
  inst.model = model;
  inst.seed = seed;
  inst.links.resize(static_cast<std::size_t>(n));
  inst.tables.resize(static_cast<std::size_t>(n));

  std::mt19937_64 rng(seed);

  for (int i = 0; i < n; ++i) {
    if (model == neighborhood::adjacent) {
      inst.links[static_cast<std::size_t>(i)] = detail::adjacent_links(n, k, i);
      continue;
    }
    // uniform sample of k distinct genes from {0..n-1} \ {i}
    std::vector<int> pool;
    pool.reserve(static_cast<std::size_t>(n - 1));
    for (int j = 0; j < n; ++j)
      if (j != i) pool.push_back(j);
    std::vector<int>& ls = inst.links[static_cast<std::size_t>(i)];
    ls.reserve(static_cast<std::size_t>(k));
    for (int t = 0; t < k; ++t) {
      const std::size_t pick =
          static_cast<std::size_t>(t) +
          static_cast<std::size_t>(uniform_below(rng, pool.size() - static_cast<std::size_t>(t)));
      std::swap(pool[static_cast<std::size_t>(t)], pool[pick]);
      ls.push_back(pool[static_cast<std::size_t>(t)]);
    }
  }

  const std::size_t rows = std::size_t{1} << (k + 1);
  for (int i = 0; i < n; ++i) {
    auto& table = inst.tables[static_cast<std::size_t>(i)];
    table.resize(rows);
    for (std::size_t r = 0; r < rows; ++r) table[r] = uniform_unit(rng);
  }
  return inst;
}

// Table row for gene i: the gene's own bit is the most significant,
// followed by the bits at links[i] in stored order.
inline std::size_t table_row(const nk_instance& inst, int gene, config_t c) {
  const auto& ls = inst.links[static_cast<std::size_t>(gene)];
  std::size_t row = static_cast<std::size_t>((c >> gene) & 1u) << inst.k;
  for (int j = 0; j < inst.k; ++j)
    row |= static_cast<std::size_t>((c >> ls[static_cast<std::size_t>(j)]) & 1u)
           << (inst.k - 1 - j);
  return row;
}

// f(s) = (1/n) * sum_i tables[i][row(i, s)]; always in [0,1).
inline double evaluate(const nk_instance& inst, config_t c) {
  detail::require_config(inst.n, c);
  double sum = 0.0;
  for (int i = 0; i < inst.n; ++i)
    sum += inst.tables[static_cast<std::size_t>(i)][table_row(inst, i, c)];
  return sum / static_cast<double>(inst.n);
}

// The n configurations at Hamming distance 1, ordered by flipped-bit
// index ascending.  The order is load-bearing: it breaks hill-climbing ties.
inline std::vector<config_t> neighbors(config_t c, int n) {
  detail::require_config(n, c);
  std::vector<config_t> out(static_cast<std::size_t>(n));
  for (int b = 0; b < n; ++b)
    out[static_cast<std::size_t>(b)] = c ^ (config_t{1} << b);
  return out;
}

inline nlohmann::json to_json(const nk_instance& inst) {
  return nlohmann::json{{"n", inst.n},
                        {"k", inst.k},
                        {"model", to_string(inst.model)},
                        {"seed", inst.seed},
                        {"links", inst.links},
                        {"tables", inst.tables}};
}

inline nk_instance instance_from_json(const nlohmann::json& j) {
  nk_instance inst;
  try {
    inst.n = j.at("n").get<int>();
    inst.k = j.at("k").get<int>();
    inst.model = neighborhood_from_string(j.at("model").get<std::string>());
    inst.seed = j.at("seed").get<std::uint64_t>();
    inst.links = j.at("links").get<std::vector<std::vector<int>>>();
    inst.tables = j.at("tables").get<std::vector<std::vector<double>>>();
  } catch (const nlohmann::json::exception& e) {
    throw format_error(std::string("malformed instance file: ") + e.what());
  }
  validate_instance(inst);
  return inst;
}

inline void save_instance(const nk_instance& inst, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw io_error("cannot open '" + path + "' for writing");
  out << to_json(inst).dump(2) << '\n';
  if (!out) throw io_error("failed writing '" + path + "'");
}

inline nk_instance load_instance(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw io_error("cannot open '" + path + "' for reading");
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw format_error("malformed instance file '" + path + "': " + e.what());
  }
  return instance_from_json(j);
}

}  // namespace nklon
