#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace weylchar::cli {

/// Everything a run depends on. Thread count is deliberately absent: it
/// never changes the emitted bytes.
struct RunConfig {
  std::string subcommand;  // roots, weyl, dim, char, sweep, certificate, spectral
  std::string group;       // "A2", or a product such as "A1xA1"
  std::vector<std::string> weights;          // per factor, Dynkin labels "1,0,2"
  std::vector<std::string> weights_ambient;  // per factor, rationals "1/2,-1/2"
  std::vector<std::string> points;           // per factor, torus grammar
  std::int64_t k_min = 1;
  std::int64_t k_max = 20;
  std::string format = "json";
  std::optional<std::uint64_t> seed;

  std::uint64_t weyl_cap = 0;  // 0 resolves to the environment default
  std::uint64_t word_cap = 0;  // 0 resolves to kDefaultWordCap

  // weyl
  bool order_only = false;
  // sweep
  std::optional<std::size_t> carrier;
  bool grow_all = false;
  bool plot_data = false;
  // spectral
  std::optional<std::string> spin;  // --l, spin of the A1 representation
  std::string gens;                 // path; empty selects the catalog pair
  std::optional<nlohmann::json> generators;
  int moments = 6;
  std::uint64_t samples = 0;

  nlohmann::json to_json() const;
  /// Accepts a bare config or a full emitted document with a "config" key.
  static RunConfig from_json(const nlohmann::json& j);
};

struct RunResult {
  int exit_code = 0;
  std::string document;
};

/// Fills defaults (caps, generator set) so the config alone reproduces the run.
RunConfig resolve(RunConfig config);

/// Runs a subcommand and renders the document. Never throws; module errors
/// become {"error": {code, kind, message, field}} with exit 2, 3 or 4.
RunResult run(const RunConfig& config, int threads = 1);

/// Splits "a|b|c" on '|'.
std::vector<std::string> split_factors(const std::string& text);

}  // namespace weylchar::cli
