#include <doctest.h>

#include "tropdyn/cli.hpp"
#include "tropdyn/io.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

using namespace tropdyn;
namespace fs = std::filesystem;

namespace {

struct Result {
  int code;
  std::string out, err;
};

Result call(std::vector<std::string> args) {
  args.insert(args.begin(), "tropdyn");
  std::ostringstream out, err;
  const int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() / ("tropdyn_cli_" + std::to_string(reinterpret_cast<std::uintptr_t>(this)));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  std::string write(const std::string& name, const std::string& text) const {
    std::ofstream(path / name) << text;
    return (path / name).string();
  }
  std::string file(const std::string& name) const { return (path / name).string(); }
  std::string read(const std::string& name) const {
    std::ifstream in(path / name);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
  }
};

const char* kLine =
    R"({"terms": [{"exp": [1, 0], "re": 1, "im": 0}, {"exp": [0, 1], "re": 1, "im": 0}, {"exp": [0, 0], "re": 1, "im": 0}]})";

}  // namespace

TEST_CASE("hypersurface command emits the tropical line") {
  TempDir d;
  const auto in = d.write("line.json", kLine);
  auto r = call({"hypersurface", "-i", in, "-o", d.file("cycle.json")});
  REQUIRE(r.code == 0);
  const Json j = parse_json(d.read("cycle.json"));
  CHECK(j["balanced"] == true);
  CHECK(j["dim"] == 1);
  std::set<std::vector<long long>> rays;
  for (const auto& c : j["cells"]) {
    CHECK(c["weight"] == 1);
    REQUIRE(c["rays"].size() == 1);
    rays.insert(c["rays"][0].get<std::vector<long long>>());
  }
  CHECK(rays == std::set<std::vector<long long>>{{1, 0}, {0, 1}, {-1, -1}});

  // round trip
  auto c = weighted_complex_from_json(j);
  Json again = to_json(c);
  again["balanced"] = true;
  CHECK(again == j);
}

TEST_CASE("balance command reports residuals") {
  TempDir d;
  const auto in = d.write("bad.json", R"({"dim": 1, "cells": [{"rays": [[1, 0]], "weight": 1}, {"rays": [[0, 1]], "weight": 1}]})");
  auto r = call({"balance", "-i", in});
  REQUIRE(r.code == 0);
  const Json j = parse_json(r.out);
  CHECK(j["balanced"] == false);
  REQUIRE(j["violations"].size() == 1);
  CHECK(j["violations"][0]["residual"] == Json::array({1, 1}));
}

TEST_CASE("converge command fits a rate and is deterministic") {
  TempDir d;
  const auto in = d.write("line.json", kLine);
  auto a = call({"converge", "--experiment", "dequantization", "-i", in, "--ms", "4,8,16,32", "--seed", "7"});
  auto b = call({"converge", "--experiment", "dequantization", "-i", in, "--ms", "4,8,16,32", "--seed", "7"});
  REQUIRE(a.code == 0);
  CHECK(a.out == b.out);
  const Json j = parse_json(a.out);
  CHECK(j["seed"] == 7);
  CHECK(j["ms"] == Json::array({4, 8, 16, 32}));
  auto rep = convergence_report_from_json(j);
  CHECK(to_json(rep) == j);
  for (std::size_t i = 1; i < rep.errors.size(); ++i) CHECK(rep.errors[i] < rep.errors[i - 1]);

  auto e = call({"converge", "--experiment", "equidistribution-discrepancy", "--ms", "64,128,256", "--svg", d.file("p.svg")});
  REQUIRE(e.code == 0);
  CHECK(parse_json(e.out)["rho"].get<double>() == doctest::Approx(1.0).epsilon(1e-6));
  CHECK(d.read("p.svg").find("<svg") == 0);
}

TEST_CASE("other commands") {
  TempDir d;
  const auto line = d.write("line.json", kLine);

  auto r = call({"tropicalize", "-i", line});
  REQUIRE(r.code == 0);
  CHECK(tropical_polynomial_from_json(parse_json(r.out)) == tropicalize_poly(complex_polynomial_from_json(parse_json(kLine))));

  r = call({"bergman", "--p", "2", "--n", "3"});
  REQUIRE(r.code == 0);
  CHECK(parse_json(r.out)["cells"].size() == 6);
  CHECK(call({"bergman", "--p", "4", "--n", "3"}).code == 1);

  const auto fan = d.write("fan.json", R"({"cones": [{"rays": [[1,0],[0,1]]}, {"rays": [[0,1],[-1,-1]]}, {"rays": [[-1,-1],[1,0]]}]})");
  r = call({"orbits", "-i", fan});
  REQUIRE(r.code == 0);
  Json o = parse_json(r.out);
  CHECK(o["orbits"].size() == 7);
  CHECK(o["cones"].size() == 7);

  r = call({"amoeba", "-i", line, "--m", "4", "--res", "21", "--phases", "8", "-o", d.file("a.csv"), "--svg", d.file("a.svg")});
  REQUIRE(r.code == 0);
  std::ifstream csv(d.file("a.csv"));
  PointCloud cloud = read_csv(csv);
  CHECK(cloud.dim == 2);
  CHECK(cloud.m == 4);
  CHECK(cloud.points.size() == 2 * 21 * 8);
  std::ostringstream again;
  write_csv(again, cloud);
  CHECK(again.str() == d.read("a.csv"));
  CHECK(d.read("a.svg").find("circle") != std::string::npos);

  r = call({"dequantize", "-i", line, "--ms", "4,8", "--res", "21"});
  REQUIRE(r.code == 0);
  Json dq = parse_json(r.out);
  CHECK(dq["results"].size() == 2);
  CHECK(dq["results"][1]["l_inf"].get<double>() < dq["results"][0]["l_inf"].get<double>());

  r = call({"equidist", "--ms", "8,16", "--n", "2", "--numax", "5"});
  REQUIRE(r.code == 0);
  for (const auto& x : parse_json(r.out)["results"]) CHECK(x["max_fourier"].get<double>() < 1e-12);

  const auto l1 = d.write("l1.json", R"({"dim": 1, "cells": [{"rays": [[1,0]], "weight": 1}, {"rays": [[0,1]], "weight": 1}, {"rays": [[-1,-1]], "weight": 1}]})");
  r = call({"add", "-i", l1, "-i", l1});
  REQUIRE(r.code == 0);
  Json sum = parse_json(r.out);
  CHECK(sum["balanced"] == true);
  for (const auto& c : sum["cells"]) CHECK(c["weight"] == 2);

  const auto rot = d.write("rot.json", R"({"cones": [{"rays": [[1,1],[-1,1]]}, {"rays": [[-1,1],[-1,-1]]}, {"rays": [[-1,-1],[1,-1]]}, {"rays": [[1,-1],[1,1]]}]})");
  r = call({"refine", "-i", l1, "-i", rot});
  REQUIRE(r.code == 0);
  CHECK(parse_json(r.out)["cells"].size() == 3);
}

TEST_CASE("affine cells survive a JSON round trip") {
  TempDir d;
  const auto q = d.write("conic.json", R"({"terms": [{"exp": [0,0], "coeff": 0}, {"exp": [1,0], "coeff": 1}, {"exp": [0,1], "coeff": 1},
      {"exp": [2,0], "coeff": 0}, {"exp": [1,1], "coeff": 1.5}, {"exp": [0,2], "coeff": 0}]})");
  auto r = call({"hypersurface", "-i", q});
  REQUIRE(r.code == 0);
  Json j = parse_json(r.out);
  auto c = weighted_complex_from_json(j);
  Json again = to_json(c);
  again["balanced"] = true;
  CHECK(again == j);
  CHECK(r.out.find("/") != std::string::npos);  // rational vertices as "p/q"
}

TEST_CASE("error handling") {
  TempDir d;
  auto r = call({});
  CHECK(r.code == 2);
  r = call({"nonsense"});
  CHECK(r.code == 2);
  r = call({"balance", "--bogus"});
  CHECK(r.code == 2);
  r = call({"hypersurface"});
  CHECK(r.code == 2);

  const auto mal = d.write("mal.json", "{\"terms\": [\n  {\"exp\": [1,0], }\n]}");
  r = call({"hypersurface", "-i", mal});
  CHECK(r.code == 1);
  CHECK(r.err.find("line 2") != std::string::npos);
  CHECK(r.err.find("column") != std::string::npos);
  CHECK(std::count(r.err.begin(), r.err.end(), '\n') == 1);

  const auto big = d.write("big.json", R"({"cones": [{"rays": [[1,0,0,0,0]]}]})");
  r = call({"orbits", "-i", big});
  CHECK(r.code == 1);
  CHECK(r.err.find("ambient dimension unsupported") != std::string::npos);

  r = call({"balance", "-i", d.file("missing.json")});
  CHECK(r.code == 1);

  const auto line = d.write("line.json", kLine);
  r = call({"converge", "--experiment", "bogus", "-i", line, "--ms", "1,2"});
  CHECK(r.code == 1);
  r = call({"help"});
  CHECK(r.code == 2);
  r = call({"--help"});
  CHECK(r.code == 0);
}
