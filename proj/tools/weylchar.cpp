#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "weylchar/cli.hpp"
#include "weylchar/error.hpp"

using weylchar::cli::RunConfig;

namespace {

struct Flags {
  std::string weight;
  std::string weight_ambient;
  std::string point;
  std::string spin;
  std::uint64_t seed = 0;
  std::size_t carrier = 0;
};

void add_common(CLI::App* sub, RunConfig& c, Flags& f, int& threads) {
  sub->add_option("--group", c.group, "root system, e.g. A2, G2, or a product A1xA1")->required();
  sub->add_option("--format", c.format, "json, csv or table")->check(CLI::IsMember({"json", "csv", "table"}));
  sub->add_option("--threads", threads, "worker threads (0 = all cores); never changes the output");
  sub->add_option("--cap-weyl", c.weyl_cap, "Weyl-group order cap (default: WEYLCHAR_CAP_WEYL or 3000000)");
}

void add_weight(CLI::App* sub, Flags& f) {
  sub->add_option("--weight", f.weight, "Dynkin labels, comma separated; '|' between factors");
  sub->add_option("--weight-ambient", f.weight_ambient, "ambient rational coordinates; '|' between factors");
}

void add_point(CLI::App* sub, Flags& f) {
  sub->add_option("--point", f.point,
                  "colon-separated torus coordinates such as pi/5:pi/5:-2pi/5, or simple-root angles; "
                  "'|' between factors");
}

void add_schedule(CLI::App* sub, RunConfig& c) {
  sub->add_option("--k-min", c.k_min, "first multiple of the base weight");
  sub->add_option("--k-max", c.k_max, "last multiple of the base weight");
  sub->add_flag("--plot-data", c.plot_data, "emit (log k, log ratio) pairs");
}

void emit_error(const weylchar::Error& e) {
  nlohmann::json doc;
  doc["error"] = {{"code", 2}, {"kind", weylchar::to_string(e.kind())}, {"message", e.what()}, {"field", e.field()}};
  std::cout << doc.dump(2) << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact characters of compact Lie groups at regular and singular torus points"};
  app.require_subcommand(0, 1);
  RunConfig c;
  Flags f;
  int threads = 1;
  std::string config_path;
  app.add_option("--config", config_path, "re-run the config stored in a JSON document");
  app.add_option("--threads", threads, "worker threads (0 = all cores)");

  auto* roots = app.add_subcommand("roots", "positive roots, Cartan matrix and simple roots");
  add_common(roots, c, f, threads);

  auto* weyl = app.add_subcommand("weyl", "Weyl-group order and length distribution");
  add_common(weyl, c, f, threads);
  weyl->add_flag("--order", c.order_only, "report classification order and cap without generating the group");

  auto* dim = app.add_subcommand("dim", "dimension of an irreducible representation");
  add_common(dim, c, f, threads);
  add_weight(dim, f);

  auto* chr = app.add_subcommand("char", "character value at a torus point");
  add_common(chr, c, f, threads);
  add_weight(chr, f);
  add_point(chr, f);

  auto* sweep = app.add_subcommand("sweep", "normalized characters along k * base weight");
  add_common(sweep, c, f, threads);
  add_weight(sweep, f);
  add_point(sweep, f);
  add_schedule(sweep, c);
  auto* carrier = sweep->add_option("--carrier", f.carrier, "product harness: factor carrying g (0-based)");
  sweep->add_flag("--grow-all", c.grow_all, "product harness: grow every factor");

  auto* cert = app.add_subcommand("certificate", "root whose pairing with k * base + rho diverges");
  add_common(cert, c, f, threads);
  add_weight(cert, f);
  add_point(cert, f);
  add_schedule(cert, c);

  auto* spectral = app.add_subcommand("spectral", "moments of the generator-averaging operator");
  add_common(spectral, c, f, threads);
  add_weight(spectral, f);
  auto* spin = spectral->add_option("--l", f.spin, "spin l of the A1 representation (Dynkin label 2l)");
  spectral->add_option("--gens", c.gens, "generator-set JSON (default: built-in free pair)");
  spectral->add_option("--moments", c.moments, "highest moment order");
  spectral->add_option("--samples", c.samples, "Monte-Carlo words per moment above the word cap");
  auto* seed = spectral->add_option("--seed", f.seed, "sampling seed (required with --samples)");
  spectral->add_option("--cap-words", c.word_cap, "exact-enumeration word cap");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    emit_error(weylchar::Error(weylchar::ErrorKind::Config, e.what()));
    return 2;
  }

  try {
    if (!config_path.empty()) {
      if (!app.get_subcommands().empty()) {
        throw weylchar::Error(weylchar::ErrorKind::Config, "--config replaces the subcommand", "config");
      }
      std::ifstream in(config_path);
      if (!in) throw weylchar::Error(weylchar::ErrorKind::Config, "cannot read " + config_path, "config");
      nlohmann::json doc;
      try {
        doc = nlohmann::json::parse(in);
      } catch (const nlohmann::json::exception& e) {
        throw weylchar::Error(weylchar::ErrorKind::Config, e.what(), "config");
      }
      c = RunConfig::from_json(doc);
    } else {
      if (app.get_subcommands().empty()) {
        std::cout << app.help();
        return 2;
      }
      c.subcommand = app.get_subcommands().front()->get_name();
      c.weights = weylchar::cli::split_factors(f.weight);
      c.weights_ambient = weylchar::cli::split_factors(f.weight_ambient);
      c.points = weylchar::cli::split_factors(f.point);
      if (!spin->empty()) c.spin = f.spin;
      if (!seed->empty()) c.seed = f.seed;
      if (!carrier->empty()) c.carrier = f.carrier;
    }
  } catch (const weylchar::Error& e) {
    emit_error(e);
    return 2;
  }

  const auto result = weylchar::cli::run(c, threads);
  std::cout << result.document;
  return result.exit_code;
}
