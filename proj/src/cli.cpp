#include "weylchar/cli.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <utility>

#include "weylchar/asymptotics.hpp"
#include "weylchar/charcalc.hpp"
#include "weylchar/error.hpp"
#include "weylchar/rootsys.hpp"
#include "weylchar/spectral.hpp"
#include "weylchar/weylgroup.hpp"

namespace weylchar::cli {

using nlohmann::json;

namespace {

const std::vector<std::string> kSubcommands = {"roots", "weyl", "dim", "char", "sweep", "certificate", "spectral"};

std::string trim(std::string s) {
  auto not_space = [](unsigned char c) { return !std::isspace(c); };
  s.erase(s.begin(), std::find_if(s.begin(), s.end(), not_space));
  s.erase(std::find_if(s.rbegin(), s.rend(), not_space).base(), s.end());
  return s;
}

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : text) {
    if (c == sep) {
      out.push_back(trim(cur));
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  out.push_back(trim(cur));
  return out;
}

json bigint_json(const BigInt& z) {
  if (z.fits_slong_p()) return json(z.get_si());
  return json(z.get_str());
}

// Folds -0.0 into 0.0 so signs of exact zeros never leak into output.
double clean(double x) { return x == 0.0 ? 0.0 : x; }

json complex_json(std::complex<double> z) { return json{{"re", clean(z.real())}, {"im", clean(z.imag())}}; }

// Shortest round-trip text for a double; "null" for NaN.
std::string num(double x) { return json(clean(x)).dump(); }

std::string join(const std::vector<std::string>& parts, const char* sep) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i) out += sep;
    out += parts[i];
  }
  return out;
}

std::string dynkin_text(const Dynkin& d) {
  std::vector<std::string> parts;
  for (auto v : d) parts.push_back(std::to_string(v));
  return join(parts, ",");
}

struct Report {
  json result;
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;
  std::vector<std::pair<std::string, std::string>> footer;
};

struct Context {
  const RunConfig& config;
  int threads;
  std::vector<RootSystem> factors;
};

std::vector<RootSystem> parse_group(const std::string& group) {
  if (trim(group).empty()) fail(ErrorKind::Config, "missing --group", "group");
  std::vector<RootSystem> out;
  for (const auto& name : split(group, 'x')) {
    RootSystemSpec spec = RootSystemSpec::parse(name);
    if (!spec.valid()) fail(ErrorKind::Config, "invalid root system '" + name + "'", "group");
    out.push_back(RootSystem::build(spec));
  }
  return out;
}

Dynkin parse_dynkin(const RootSystem& rs, const std::string& text) {
  Dynkin out;
  for (const auto& entry : split(text, ',')) {
    std::int64_t v = 0;
    auto [ptr, ec] = std::from_chars(entry.data(), entry.data() + entry.size(), v);
    if (entry.empty() || ec != std::errc() || ptr != entry.data() + entry.size()) {
      fail(ErrorKind::Config, "malformed Dynkin label '" + entry + "'", "weight");
    }
    out.push_back(v);
  }
  if (out.size() != static_cast<std::size_t>(rs.rank())) {
    fail(ErrorKind::Config,
         rs.name() + " needs " + std::to_string(rs.rank()) + " Dynkin labels, got " + std::to_string(out.size()),
         "weight");
  }
  for (auto v : out) {
    if (v < 0) fail(ErrorKind::Domain, "weight " + text + " is not dominant", "weight");
  }
  return out;
}

Dynkin parse_ambient_weight(const RootSystem& rs, const std::string& text) {
  std::vector<Rational> coords;
  for (const auto& entry : split(text, ',')) coords.push_back(parse_rational(entry));
  if (coords.size() != rs.ambient_dim()) {
    fail(ErrorKind::Config,
         rs.name() + " weights have " + std::to_string(rs.ambient_dim()) + " ambient coordinates, got " +
             std::to_string(coords.size()),
         "weight_ambient");
  }
  WeightVec w(std::move(coords));
  rs.check_ambient(w, "weight_ambient");
  return rs.require_dominant(w, "weight_ambient");
}

// Weight of factor f; nullopt when neither flag was given.
std::optional<Dynkin> factor_weight(const Context& ctx, std::size_t f) {
  const auto& c = ctx.config;
  if (!c.weights.empty() && !c.weights_ambient.empty()) {
    fail(ErrorKind::Config, "give either --weight or --weight-ambient, not both", "weight");
  }
  const std::size_t n = ctx.factors.size();
  if (!c.weights.empty()) {
    if (c.weights.size() != n) {
      fail(ErrorKind::Config, "expected " + std::to_string(n) + " '|'-separated weights", "weight");
    }
    return parse_dynkin(ctx.factors[f], c.weights[f]);
  }
  if (!c.weights_ambient.empty()) {
    if (c.weights_ambient.size() != n) {
      fail(ErrorKind::Config, "expected " + std::to_string(n) + " '|'-separated weights", "weight_ambient");
    }
    return parse_ambient_weight(ctx.factors[f], c.weights_ambient[f]);
  }
  return std::nullopt;
}

Dynkin required_weight(const Context& ctx, std::size_t f) {
  auto w = factor_weight(ctx, f);
  if (!w) fail(ErrorKind::Config, "missing --weight", "weight");
  return *w;
}

// With rank < ambient dimension and exactly rank entries, the entries are the
// simple-root angles (alpha_i | h); otherwise ambient coordinates.
TorusPoint resolve_point(const RootSystem& rs, const std::string& text) {
  TorusPoint p = TorusPoint::parse(text);
  const std::size_t r = static_cast<std::size_t>(rs.rank());
  if (p.dim() == r && r < rs.ambient_dim()) {
    if (p.is_exact()) {
      WeightVec h(rs.ambient_dim());
      for (std::size_t j = 0; j < r; ++j) {
        const Rational scale = 2 * p.coords_over_pi()[j] / rs.root_norm2(rs.simple_root_index(static_cast<int>(j)));
        h += scale * rs.fundamental_weights()[j];
      }
      p = TorusPoint::exact(h.coords());
    } else {
      const auto theta = p.radians();
      std::vector<double> h(rs.ambient_dim(), 0.0);
      for (std::size_t j = 0; j < r; ++j) {
        const double scale = 2 * theta[j] / rs.root_norm2(rs.simple_root_index(static_cast<int>(j))).get_d();
        const auto w = rs.fundamental_weights()[j].to_doubles();
        for (std::size_t i = 0; i < h.size(); ++i) h[i] += scale * w[i];
      }
      p = TorusPoint::floating(std::move(h));
    }
  } else if (p.dim() != rs.ambient_dim()) {
    fail(ErrorKind::Config,
         rs.name() + " points take " + std::to_string(rs.ambient_dim()) + " ambient coordinates or " +
             std::to_string(r) + " simple-root angles, got " + std::to_string(p.dim()),
         "point");
  }
  rs.check_point(p);
  return p;
}

TorusPoint required_point(const Context& ctx, std::size_t f) {
  const auto& pts = ctx.config.points;
  if (pts.empty()) fail(ErrorKind::Config, "missing --point", "point");
  if (pts.size() != ctx.factors.size()) {
    fail(ErrorKind::Config, "expected " + std::to_string(ctx.factors.size()) + " '|'-separated points", "point");
  }
  return resolve_point(ctx.factors[f], pts[f]);
}

const RootSystem& single_factor(const Context& ctx) {
  if (ctx.factors.size() != 1) {
    fail(ErrorKind::Config, ctx.config.subcommand + " needs a single simple factor", "group");
  }
  return ctx.factors[0];
}

WeylGroup make_group(const Context& ctx, const RootSystem& rs) { return WeylGroup::generate(rs, ctx.config.weyl_cap); }

void check_schedule(const RunConfig& c) {
  if (c.k_min < 1) fail(ErrorKind::Config, "k_min must be at least 1", "k_min");
  if (c.k_max < c.k_min) fail(ErrorKind::Config, "k_max must be at least k_min", "k_max");
  if (c.k_max > 100000) fail(ErrorKind::Config, "k_max above 100000", "k_max");
}

Report cmd_roots(const Context& ctx) {
  Report rep;
  rep.columns = {"factor", "index", "height", "coefficients", "vector", "norm2"};
  json factors = json::array();
  for (std::size_t f = 0; f < ctx.factors.size(); ++f) {
    const auto& rs = ctx.factors[f];
    factors.push_back(rs.to_json());
    for (std::size_t k = 0; k < rs.num_positive_roots(); ++k) {
      const auto& co = rs.root_coefficients(k);
      int height = 0;
      std::vector<std::string> cs;
      for (int c : co) {
        height += c;
        cs.push_back(std::to_string(c));
      }
      rep.rows.push_back({rs.name(), std::to_string(k), std::to_string(height), join(cs, ","),
                          join(rs.positive_roots()[k].to_strings(), ","), to_string(rs.root_norm2(k))});
    }
  }
  rep.result = ctx.factors.size() == 1 ? factors[0] : json{{"factors", factors}};
  return rep;
}

Report cmd_weyl(const Context& ctx) {
  Report rep;
  json factors = json::array();
  rep.columns = {"factor", "length", "count"};
  std::uint64_t total = 1;
  for (const auto& rs : ctx.factors) {
    const std::uint64_t expected = classification_weyl_order(rs.spec());
    json j{{"group", rs.name()}, {"classification_order", expected}, {"cap", ctx.config.weyl_cap},
           {"within_cap", expected <= ctx.config.weyl_cap}};
    total = (total > 0 && expected > UINT64_MAX / total) ? UINT64_MAX : total * expected;
    if (!ctx.config.order_only) {
      WeylGroup W = make_group(ctx, rs);
      std::vector<std::uint64_t> counts;
      for (std::size_t i = 0; i < W.order(); ++i) {
        const auto len = static_cast<std::size_t>(W.length(i));
        if (counts.size() <= len) counts.resize(len + 1, 0);
        ++counts[len];
      }
      j["order"] = W.order();
      j["longest_length"] = counts.size() - 1;
      j["length_counts"] = counts;
      for (std::size_t len = 0; len < counts.size(); ++len) {
        rep.rows.push_back({rs.name(), std::to_string(len), std::to_string(counts[len])});
      }
    } else {
      rep.rows.push_back({rs.name(), std::to_string(expected), expected <= ctx.config.weyl_cap ? "true" : "false"});
    }
    factors.push_back(j);
  }
  if (ctx.config.order_only) rep.columns = {"factor", "classification_order", "within_cap"};
  rep.result = ctx.factors.size() == 1 ? factors[0] : json{{"factors", factors}, {"classification_order", total}};
  for (const auto& f : factors) {
    rep.footer.emplace_back(f["group"].get<std::string>() + ".classification_order",
                            std::to_string(f["classification_order"].get<std::uint64_t>()));
    if (f.contains("order")) {
      rep.footer.emplace_back(f["group"].get<std::string>() + ".order", std::to_string(f["order"].get<std::uint64_t>()));
    }
  }
  return rep;
}

Report cmd_dim(const Context& ctx) {
  Report rep;
  rep.columns = {"factor", "weight", "dim"};
  BigInt total = 1;
  json factors = json::array();
  for (std::size_t f = 0; f < ctx.factors.size(); ++f) {
    const auto& rs = ctx.factors[f];
    const Dynkin w = required_weight(ctx, f);
    const BigInt d = dim_irrep(rs, w);
    total *= d;
    factors.push_back({{"group", rs.name()},
                       {"weight", w},
                       {"weight_ambient", rs.from_dynkin(w).to_strings()},
                       {"dim", bigint_json(d)}});
    rep.rows.push_back({rs.name(), dynkin_text(w), d.get_str()});
  }
  rep.result = {{"dim", bigint_json(total)}, {"factors", factors}};
  rep.footer.emplace_back("dim", total.get_str());
  return rep;
}

Report cmd_char(const Context& ctx) {
  Report rep;
  rep.columns = {"factor", "weight", "point", "re", "im", "dim", "degenerate_roots", "condition"};
  std::complex<double> value = 1.0;
  BigInt dim = 1;
  std::size_t degenerate = 0;
  std::vector<CharacterValue> parts;
  json factors = json::array();
  for (std::size_t f = 0; f < ctx.factors.size(); ++f) {
    const auto& rs = ctx.factors[f];
    const Dynkin w = required_weight(ctx, f);
    const TorusPoint h = required_point(ctx, f);
    WeylGroup W = make_group(ctx, rs);
    CharacterValue cv = character(rs, W, w, h, ctx.threads);
    const BigInt d = dim_irrep(rs, w);
    value *= cv.value;
    dim *= d;
    degenerate += cv.degenerate_roots;
    json j{{"group", rs.name()},
           {"weight", w},
           {"point", h.to_string()},
           {"value", complex_json(cv.value)},
           {"dim", bigint_json(d)},
           {"degenerate_roots", cv.degenerate_roots},
           {"condition", cv.condition}};
    if (cv.snapped && !h.is_exact()) j["snapped_point"] = cv.snapped->to_string();
    factors.push_back(j);
    rep.rows.push_back({rs.name(), dynkin_text(w), h.to_string(), num(cv.value.real()), num(cv.value.imag()),
                        d.get_str(), std::to_string(cv.degenerate_roots), num(cv.condition)});
    parts.push_back(std::move(cv));
  }
  // First-order error propagation through the product.
  double condition = 0.0;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    double term = parts[i].condition;
    for (std::size_t j = 0; j < parts.size(); ++j) {
      if (j != i) term *= std::abs(parts[j].value);
    }
    condition += term;
  }
  const double ratio = std::abs(value) / dim.get_d();
  rep.result = {{"value", complex_json(value)},
                {"dim", bigint_json(dim)},
                {"degenerate_roots", degenerate},
                {"condition", condition},
                {"ratio_abs", ratio},
                {"factors", factors}};
  rep.footer = {{"re", num(value.real())}, {"im", num(value.imag())}, {"dim", dim.get_str()},
                {"degenerate_roots", std::to_string(degenerate)}, {"condition", num(condition)}};
  return rep;
}

json entries_json(const DecayReport& report) {
  json out = json::array();
  for (const auto& e : report.entries) {
    out.push_back({{"k", e.k},
                   {"weight", e.weight},
                   {"dim", bigint_json(e.dim)},
                   {"character", complex_json(e.character)},
                   {"ratio_abs", e.ratio},
                   {"bound", e.bound}});
  }
  return out;
}

json plot_json(const DecayReport& report) {
  json out = json::array();
  for (const auto& e : report.entries) {
    if (e.k > 0 && e.ratio > 0) out.push_back({std::log(static_cast<double>(e.k)), std::log(e.ratio)});
  }
  return out;
}

void decay_table(Report& rep, const DecayReport& report, bool plot) {
  if (plot) {
    rep.columns = {"log_k", "log_ratio"};
    for (const auto& p : plot_json(report)) rep.rows.push_back({num(p[0].get<double>()), num(p[1].get<double>())});
    return;
  }
  rep.columns = {"k", "dim", "ratio_abs", "bound"};
  for (const auto& e : report.entries) {
    rep.rows.push_back({std::to_string(e.k), e.dim.get_str(), num(e.ratio), num(e.bound)});
  }
}

std::size_t pick_carrier(const Context& ctx) {
  const auto& c = ctx.config;
  const std::size_t n = ctx.factors.size();
  if (c.points.size() == 1) return c.carrier.value_or(0);
  if (c.points.size() != n) fail(ErrorKind::Config, "expected 1 or " + std::to_string(n) + " points", "point");
  std::optional<std::size_t> found;
  for (std::size_t f = 0; f < n; ++f) {
    if (resolve_point(ctx.factors[f], c.points[f]).is_zero()) continue;
    if (found) fail(ErrorKind::Config, "the harness takes g on a single carrier factor", "point");
    found = f;
  }
  if (!found) fail(ErrorKind::Domain, "g is the identity on every factor", "point");
  if (c.carrier && *c.carrier != *found) fail(ErrorKind::Config, "--carrier disagrees with the point", "carrier");
  return *found;
}

Report cmd_sweep_product(const Context& ctx) {
  const auto& c = ctx.config;
  if (c.points.empty()) fail(ErrorKind::Config, "missing --point", "point");
  const std::size_t carrier = pick_carrier(ctx);
  if (carrier >= ctx.factors.size()) fail(ErrorKind::Config, "carrier index out of range", "carrier");
  const std::string& text = c.points.size() == 1 ? c.points[0] : c.points[carrier];
  const TorusPoint g = resolve_point(ctx.factors[carrier], text);
  DecayReport report = nonsimple_counterexample(ctx.factors, carrier, g, c.k_max, c.grow_all);
  Report rep;
  bool all_one = true;
  for (const auto& e : report.entries) all_one = all_one && e.ratio == 1.0;
  // No envelope is fitted for the harness.
  json entries = entries_json(report);
  for (auto& e : entries) e.erase("bound");
  rep.result = {{"harness", c.grow_all ? "grow_all" : "carrier_trivial"},
                {"carrier", carrier},
                {"point", g.to_string()},
                {"ratio_identically_one", all_one},
                {"entries", entries}};
  if (c.plot_data) rep.result["plot_data"] = plot_json(report);
  decay_table(rep, report, c.plot_data);
  if (!c.plot_data) {
    for (auto& row : rep.rows) row[3].clear();
  }
  rep.footer = {{"carrier", std::to_string(carrier)}, {"ratio_identically_one", all_one ? "true" : "false"}};
  return rep;
}

Report cmd_sweep(const Context& ctx) {
  const auto& c = ctx.config;
  check_schedule(c);
  if (ctx.factors.size() > 1) return cmd_sweep_product(ctx);
  const auto& rs = ctx.factors[0];
  const Dynkin base = factor_weight(ctx, 0).value_or(Dynkin(rs.rank(), 1));
  const TorusPoint h = required_point(ctx, 0);
  WeylGroup W = make_group(ctx, rs);
  DecayReport report = normalized_char_sweep(rs, W, WeightPath::multiples(base, c.k_min, c.k_max), h, ctx.threads);
  double slope = std::nan("");
  if (report.entries.size() >= 5) slope = decay_exponent(report);
  Report rep;
  rep.result = {{"group", rs.name()},
                {"base_weight", base},
                {"point", h.to_string()},
                {"entries", entries_json(report)},
                {"fitted_slope", std::isnan(slope) ? json(nullptr) : json(slope)},
                {"m", report.decay_roots},
                {"degenerate_roots", report.degenerate_roots},
                {"central", report.central},
                {"bound_constant", report.bound_constant},
                {"envelope_holds", report.envelope_holds}};
  if (c.plot_data) rep.result["plot_data"] = plot_json(report);
  decay_table(rep, report, c.plot_data);
  rep.footer = {{"fitted_slope", num(slope)},
                {"m", std::to_string(report.decay_roots)},
                {"bound_constant", num(report.bound_constant)},
                {"envelope_holds", report.envelope_holds ? "true" : "false"}};
  return rep;
}

Report cmd_certificate(const Context& ctx) {
  const auto& c = ctx.config;
  check_schedule(c);
  const RootSystem& rs = single_factor(ctx);
  const Dynkin base = factor_weight(ctx, 0).value_or(Dynkin(rs.rank(), 1));
  TorusPoint h = required_point(ctx, 0);
  if (!rs.is_simple()) {
    fail(ErrorKind::Structural,
         rs.name() + " is not simple: its Dynkin diagram is disconnected, so no chain links the factors", "group");
  }
  if (!h.is_exact()) {
    if (auto snapped = snap_to_stratum(rs, h)) h = *snapped;
  }
  const DegenerateSplit split = rs.degenerate_split(h);
  const DivergenceCertificate cert = divergence_certificate(rs, split, base);
  WeylGroup W = make_group(ctx, rs);
  DecayReport report = normalized_char_sweep(rs, W, WeightPath::multiples(base, c.k_min, c.k_max), h, ctx.threads);

  Report rep;
  rep.columns = {"k", "dim", "ratio_abs", "bound", "pairing"};
  json entries = entries_json(report);
  bool increasing = true;
  Rational prev;
  for (std::size_t i = 0; i < report.entries.size(); ++i) {
    const auto& e = report.entries[i];
    const Rational g = cert.growth_at(e.k);
    if (i > 0 && !(g > prev)) increasing = false;
    prev = g;
    entries[i]["pairing"] = to_string(g);
    rep.rows.push_back({std::to_string(e.k), e.dim.get_str(), num(e.ratio), num(e.bound), to_string(g)});
  }
  std::vector<int> chain;
  for (int v : cert.chain) chain.push_back(v + 1);
  const auto& co = rs.root_coefficients(cert.root);
  rep.result = {{"group", rs.name()},
                {"base_weight", base},
                {"point", h.to_string()},
                {"degenerate_roots", split.deg.size()},
                {"root", cert.root_vector.to_strings()},
                {"root_coefficients", co},
                {"pairing", to_string(cert.pairing)},
                {"rho_pairing", to_string(cert.rho_pairing)},
                {"construction", cert.construction},
                {"chain", chain},
                {"strictly_increasing", increasing},
                {"entries", entries}};
  if (c.plot_data) rep.result["plot_data"] = plot_json(report);
  rep.footer = {{"construction", cert.construction},
                {"root", join(cert.root_vector.to_strings(), ",")},
                {"pairing", to_string(cert.pairing)},
                {"strictly_increasing", increasing ? "true" : "false"}};
  return rep;
}

Report cmd_spectral(const Context& ctx) {
  const auto& c = ctx.config;
  const RootSystem& rs = single_factor(ctx);
  if (rs.spec().family != Family::A) fail(ErrorKind::Domain, "spectral moments need a type-A group", "group");
  if (c.moments < 2 || c.moments > 24) fail(ErrorKind::Config, "--moments must lie in [2, 24]", "moments");
  if (c.samples > 0 && !c.seed) fail(ErrorKind::Config, "sampling needs an explicit --seed", "seed");
  Dynkin lambda;
  if (c.spin) {
    if (rs.rank() != 1) fail(ErrorKind::Config, "--l applies to A1 only", "l");
    if (!c.weights.empty() || !c.weights_ambient.empty()) {
      fail(ErrorKind::Config, "give either --l or a weight", "l");
    }
    const Rational two_l = 2 * parse_rational(*c.spin);
    if (two_l.get_den() != 1 || sgn(two_l) < 0) fail(ErrorKind::Domain, "spin must be a nonnegative half-integer", "l");
    lambda = {to_int64(two_l.get_num())};
  } else {
    lambda = required_weight(ctx, 0);
  }
  if (!c.generators) fail(ErrorKind::Config, "generator set unresolved", "gens");
  const GeneratorSet S = GeneratorSet::from_json(*c.generators);
  WeylGroup W = make_group(ctx, rs);
  const SpectrumEstimate est =
      spectrum_estimate(rs, W, lambda, S, c.moments, c.word_cap, c.samples, c.seed.value_or(0), ctx.threads);
  const auto s = static_cast<std::int64_t>(S.size());
  const double dopt = s >= 2 ? delta_opt(s) : std::nan("");

  Report rep;
  rep.columns = {"m", "moment", "km", "|diff|"};
  json moments = json::array();
  for (std::size_t m = 0; m < est.moments.size(); ++m) {
    const auto& mv = est.moments[m];
    const double km = est.km_reference[m].get_d();
    const double diff = std::abs(mv.value - km);
    moments.push_back({{"m", mv.m},
                       {"moment", mv.value},
                       {"stderr", mv.stderr_},
                       {"exact", mv.exact},
                       {"km", to_string(est.km_reference[m])},
                       {"abs_diff", diff}});
    rep.rows.push_back({std::to_string(mv.m), num(mv.value), num(km), num(diff)});
  }
  rep.result = {{"group", rs.name()},
                {"lambda", lambda},
                {"dim", bigint_json(dim_irrep(rs, lambda))},
                {"s", S.size()},
                {"provenance", S.provenance},
                {"moments", moments},
                {"delta_opt", dopt},
                {"norm_estimate", est.norm_estimate},
                {"warnings", est.warnings}};
  rep.footer = {{"delta_opt", num(dopt)}, {"norm_estimate", num(est.norm_estimate)}};
  for (const auto& w : est.warnings) rep.footer.emplace_back("warning", w);
  return rep;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + "\"";
}

std::string csv_row(std::vector<std::string> fields, std::size_t width) {
  fields.resize(std::max(width, fields.size()));
  std::string out;
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i) out += ',';
    out += csv_field(fields[i]);
  }
  return out + "\r\n";
}

std::string render_csv(const Report& rep, const json& config) {
  const std::size_t width = std::max<std::size_t>(rep.columns.size(), 2);
  std::string out = csv_row(rep.columns, width);
  for (const auto& row : rep.rows) out += csv_row(row, width);
  for (const auto& [k, v] : rep.footer) out += csv_row({k, v}, width);
  out += csv_row({"config", config.dump()}, width);
  return out;
}

std::string render_table(const Report& rep, const json& config) {
  std::vector<std::size_t> w(rep.columns.size(), 0);
  for (std::size_t i = 0; i < w.size(); ++i) w[i] = rep.columns[i].size();
  for (const auto& row : rep.rows) {
    for (std::size_t i = 0; i < row.size() && i < w.size(); ++i) w[i] = std::max(w[i], row[i].size());
  }
  auto line = [&](const std::vector<std::string>& cells) {
    std::string out;
    for (std::size_t i = 0; i < w.size(); ++i) {
      std::string cell = i < cells.size() ? cells[i] : "";
      if (i + 1 < w.size()) cell.resize(w[i], ' ');
      out += cell;
      if (i + 1 < w.size()) out += "  ";
    }
    while (!out.empty() && out.back() == ' ') out.pop_back();
    return out + "\n";
  };
  std::string out = line(rep.columns);
  for (const auto& row : rep.rows) out += line(row);
  if (!rep.footer.empty()) out += "\n";
  for (const auto& [k, v] : rep.footer) out += k + ": " + v + "\n";
  out += "config: " + config.dump() + "\n";
  return out;
}

int exit_code(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Config: return 2;
    case ErrorKind::Capacity: return 3;
    default: return 4;
  }
}

RunResult error_result(const Error& e, const std::optional<json>& config) {
  json doc;
  if (config) doc["config"] = *config;
  doc["error"] = {{"code", exit_code(e.kind())}, {"kind", to_string(e.kind())}, {"message", e.what()},
                  {"field", e.field()}};
  return {exit_code(e.kind()), doc.dump(2) + "\n"};
}

}  // namespace

std::vector<std::string> split_factors(const std::string& text) {
  if (text.empty()) return {};
  return split(text, '|');
}

json RunConfig::to_json() const {
  return {{"subcommand", subcommand},
          {"group", group},
          {"weight", weights},
          {"weight_ambient", weights_ambient},
          {"point", points},
          {"k_min", k_min},
          {"k_max", k_max},
          {"format", format},
          {"seed", seed ? json(*seed) : json(nullptr)},
          {"caps", {{"weyl", weyl_cap}, {"words", word_cap}}},
          {"order_only", order_only},
          {"carrier", carrier ? json(*carrier) : json(nullptr)},
          {"grow_all", grow_all},
          {"plot_data", plot_data},
          {"l", spin ? json(*spin) : json(nullptr)},
          {"gens", gens},
          {"generators", generators ? *generators : json(nullptr)},
          {"moments", moments},
          {"samples", samples}};
}

RunConfig RunConfig::from_json(const json& doc) {
  const json& j = doc.contains("config") ? doc.at("config") : doc;
  if (!j.is_object()) fail(ErrorKind::Config, "config must be a JSON object", "config");
  RunConfig c;
  try {
    c.subcommand = j.at("subcommand").get<std::string>();
    c.group = j.value("group", std::string());
    c.weights = j.value("weight", std::vector<std::string>());
    c.weights_ambient = j.value("weight_ambient", std::vector<std::string>());
    c.points = j.value("point", std::vector<std::string>());
    c.k_min = j.value("k_min", c.k_min);
    c.k_max = j.value("k_max", c.k_max);
    c.format = j.value("format", c.format);
    if (j.contains("seed") && !j["seed"].is_null()) c.seed = j["seed"].get<std::uint64_t>();
    if (j.contains("caps")) {
      c.weyl_cap = j["caps"].value("weyl", std::uint64_t{0});
      c.word_cap = j["caps"].value("words", std::uint64_t{0});
    }
    c.order_only = j.value("order_only", false);
    if (j.contains("carrier") && !j["carrier"].is_null()) c.carrier = j["carrier"].get<std::size_t>();
    c.grow_all = j.value("grow_all", false);
    c.plot_data = j.value("plot_data", false);
    if (j.contains("l") && !j["l"].is_null()) c.spin = j["l"].get<std::string>();
    c.gens = j.value("gens", std::string());
    if (j.contains("generators") && !j["generators"].is_null()) c.generators = j["generators"];
    c.moments = j.value("moments", c.moments);
    c.samples = j.value("samples", c.samples);
  } catch (const json::exception& e) {
    fail(ErrorKind::Config, std::string("malformed config: ") + e.what(), "config");
  }
  return c;
}

RunConfig resolve(RunConfig c) {
  if (std::find(kSubcommands.begin(), kSubcommands.end(), c.subcommand) == kSubcommands.end()) {
    fail(ErrorKind::Config, "unknown subcommand '" + c.subcommand + "'", "subcommand");
  }
  if (c.format != "json" && c.format != "csv" && c.format != "table") {
    fail(ErrorKind::Config, "format must be json, csv or table", "format");
  }
  if (c.weyl_cap == 0) c.weyl_cap = default_weyl_cap();
  if (c.word_cap == 0) c.word_cap = kDefaultWordCap;
  if (c.subcommand == "spectral" && !c.generators) {
    if (c.gens.empty()) {
      c.generators = catalog_free_pair().to_json();
    } else {
      std::ifstream in(c.gens);
      if (!in) fail(ErrorKind::Config, "cannot read generator file '" + c.gens + "'", "gens");
      try {
        c.generators = json::parse(in);
      } catch (const json::exception& e) {
        fail(ErrorKind::Config, std::string("generator file is not JSON: ") + e.what(), "gens");
      }
    }
  }
  return c;
}

RunResult run(const RunConfig& input, int threads) {
  std::optional<json> config_json;
  try {
    const RunConfig config = resolve(input);
    config_json = config.to_json();
    Context ctx{config, resolve_threads(threads), parse_group(config.group)};
    Report rep;
    const auto& sub = config.subcommand;
    if (sub == "roots") {
      rep = cmd_roots(ctx);
    } else if (sub == "weyl") {
      rep = cmd_weyl(ctx);
    } else if (sub == "dim") {
      rep = cmd_dim(ctx);
    } else if (sub == "char") {
      rep = cmd_char(ctx);
    } else if (sub == "sweep") {
      rep = cmd_sweep(ctx);
    } else if (sub == "certificate") {
      rep = cmd_certificate(ctx);
    } else {
      rep = cmd_spectral(ctx);
    }
    if (config.format == "csv") return {0, render_csv(rep, *config_json)};
    if (config.format == "table") return {0, render_table(rep, *config_json)};
    json doc{{"config", *config_json}, {"result", rep.result}};
    return {0, doc.dump(2) + "\n"};
  } catch (const Error& e) {
    return error_result(e, config_json);
  } catch (const std::bad_alloc&) {
    return error_result(Error(ErrorKind::Capacity, "out of memory"), config_json);
  } catch (const std::exception& e) {
    return error_result(Error(ErrorKind::Domain, e.what()), config_json);
  }
}

}  // namespace weylchar::cli
