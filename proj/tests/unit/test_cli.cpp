#include <doctest.h>

#include <array>
#include <cstdio>
#include <memory>
#include <string>

#include <nlohmann/json.hpp>

#include "weylchar/cli.hpp"

using weylchar::cli::RunConfig;
using weylchar::cli::run;
using nlohmann::json;

namespace {

RunConfig config(const std::string& sub, const std::string& group) {
  RunConfig c;
  c.subcommand = sub;
  c.group = group;
  return c;
}

json result_of(const RunConfig& c) {
  const auto r = run(c);
  REQUIRE(r.exit_code == 0);
  return json::parse(r.document)["result"];
}

std::string shell(const std::string& args, int* status) {
  const std::string cmd = std::string(WEYLCHAR_CLI_PATH) + " " + args + " 2>/dev/null";
  std::unique_ptr<FILE, int (*)(FILE*)> pipe(popen(cmd.c_str(), "r"), pclose);
  std::string out;
  std::array<char, 4096> buf{};
  std::size_t n = 0;
  while ((n = fread(buf.data(), 1, buf.size(), pipe.get())) > 0) out.append(buf.data(), n);
  *status = WEXITSTATUS(pclose(pipe.release()));
  return out;
}

}  // namespace

TEST_CASE("documented examples") {
  auto c = config("dim", "A2");
  c.weights = {"1,1"};
  CHECK(result_of(c)["dim"] == 8);
  c.weights = {"0,0"};
  CHECK(result_of(c)["dim"] == 1);

  auto ch = config("char", "A1");
  ch.weights = {"2"};
  ch.points = {"pi"};
  const auto v = result_of(ch)["value"];
  CHECK(v["re"].get<double>() == doctest::Approx(-1.0).epsilon(1e-12));
  CHECK(std::fabs(v["im"].get<double>()) < 1e-12);
}

TEST_CASE("ambient weights are accepted") {
  auto c = config("dim", "B2");
  c.weights_ambient = {"3/2,1/2"};
  CHECK(result_of(c)["dim"] == 16);
}

TEST_CASE("exit codes and structured errors") {
  auto e8 = config("weyl", "E8");
  auto r = run(e8);
  CHECK(r.exit_code == 3);
  auto err = json::parse(r.document)["error"];
  CHECK(err["kind"] == "capacity");
  CHECK(err["field"] == "group");

  auto bad = config("dim", "A2");
  bad.weights = {"1,x"};
  r = run(bad);
  CHECK(r.exit_code == 2);
  CHECK(json::parse(r.document)["error"]["field"] == "weight");

  bad.weights = {"-1,2"};
  CHECK(run(bad).exit_code == 4);

  auto d2 = config("certificate", "D2");
  d2.points = {"pi/2:pi/2"};
  r = run(d2);
  CHECK(r.exit_code == 4);
  CHECK(json::parse(r.document)["error"]["kind"] == "structural");

  auto sampling = config("spectral", "A1");
  sampling.spin = "5";
  sampling.samples = 1000;
  CHECK(run(sampling).exit_code == 2);

  CHECK(run(config("nope", "A2")).exit_code == 2);
}

TEST_CASE("emitted config re-runs to the same bytes") {
  auto c = config("sweep", "B2");
  c.points = {"pi/3:0"};
  c.k_max = 8;
  const auto first = run(c, 1);
  REQUIRE(first.exit_code == 0);
  const auto again = run(RunConfig::from_json(json::parse(first.document)), 4);
  CHECK(again.document == first.document);
}

TEST_CASE("CSV quoting and footer") {
  auto c = config("roots", "A2");
  c.format = "csv";
  const auto doc = run(c).document;
  CHECK(doc.rfind("factor,index,height,coefficients,vector,norm2\r\n", 0) == 0);
  CHECK(doc.find("\"1,-1,0\"") != std::string::npos);
  CHECK(doc.find("config,\"{\"\"caps\"\"") != std::string::npos);
}

TEST_CASE("simple-root angles and ambient coordinates describe the same point") {
  auto a = config("char", "A2");
  a.weights = {"2,1"};
  a.points = {"pi/3:pi/4"};
  auto b = a;
  b.points = {"11/36*pi:-1/36*pi:-5/18*pi"};
  CHECK(result_of(a)["value"] == result_of(b)["value"]);
}

TEST_CASE("binary: thread count never changes the document") {
  int s1 = 0, s4 = 0;
  const auto one = shell("char --group G2 --weight 2,1 --point pi/7:pi/3 --threads 1", &s1);
  const auto four = shell("char --group G2 --weight 2,1 --point pi/7:pi/3 --threads 4", &s4);
  CHECK(s1 == 0);
  CHECK(one == four);
  int s = 0;
  shell("dim --group A2 --weight 1", &s);
  CHECK(s == 2);
  shell("dim --group A2 --bogus", &s);
  CHECK(s == 2);
}
