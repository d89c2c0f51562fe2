#include <doctest.h>

#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "divprod/cli.hpp"

namespace {

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome invoke(std::vector<std::string> args) {
  args.insert(args.begin(), "divprod");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = divprod::cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string temp_file(const std::string& name, const std::string& contents) {
  const auto path = std::filesystem::temp_directory_path() / ("divprod_test_" + name);
  std::ofstream(path) << contents;
  return path.string();
}

nlohmann::json parse(const std::string& s) { return nlohmann::json::parse(s); }

}  // namespace

TEST_CASE("count") {
  const auto r = invoke({"count", "--n", "5", "--h", "2"});
  CHECK(r.code == 0);
  const auto j = parse(r.out);
  CHECK(j["count"] == "18");
  CHECK(j["count_containing_one"] == "5");
  CHECK(j["count_avoiding_one"] == "13");
  CHECK_FALSE(j.contains("seconds"));
  CHECK(parse(invoke({"count", "--n", "5", "--h", "2", "--timing"}).out).contains("seconds"));
}

TEST_CASE("tn") {
  const auto j = parse(invoke({"tn", "--n", "30"}).out);
  CHECK(j["tn"] == "720");
  CHECK(j["grouped_agrees"] == true);
}

TEST_CASE("check reports a verdict, not an error") {
  const auto file = temp_file("s.txt", "2\n3\n4\n");
  const auto r = invoke({"check", "--file", file, "--h", "2"});
  CHECK(r.code == 0);
  const auto j = parse(r.out);
  CHECK(j["holds"] == false);
  CHECK(j["witness"]["pivot"] == 2);
  CHECK(j["witness"]["cofactors"] == nlohmann::json::array({3, 4}));

  const auto good = temp_file("good.txt", "2\n3\n5\n");
  CHECK(parse(invoke({"check", "--file", good, "--h", "2"}).out)["witness"].is_null());
  const auto rs = parse(invoke({"rs-check", "--file", file, "--r", "1", "--s", "2"}).out);
  CHECK(rs["holds"] == false);
  CHECK(rs["witness"]["left"] == nlohmann::json::array({2}));
}

TEST_CASE("exit codes") {
  auto r = invoke({"count", "--n", "5"});
  CHECK(r.code == 2);
  CHECK(parse(r.err)["error"] == "invalid-argument");
  CHECK(invoke({"frobnicate"}).code == 2);
  CHECK(invoke({"check", "--file", "/nonexistent/file", "--h", "2"}).code == 2);
  CHECK(invoke({"tn", "--n", "30", "--format", "csv"}).code == 2);

  r = invoke({"count", "--n", "40", "--h", "2", "--node-budget", "5"});
  CHECK(r.code == 3);
  CHECK(parse(r.err)["error"] == "resource-limit");

  const auto basis = invoke({"basis", "--n", "10", "--h", "2"});
  REQUIRE(basis.code == 0);
  const auto bfile = temp_file("b.txt", basis.out);
  const auto bad = temp_file("bad.txt", "2\n3\n4\n");
  r = invoke({"verify-injection", "--set", bad, "--basis", bfile});
  CHECK(r.code == 4);
  const auto e = parse(r.err);
  CHECK(e["error"] == "precondition-failure");
  CHECK(e["witness"]["pivot"] == 2);
  CHECK(r.err.find('\n') == r.err.size() - 1);
}

TEST_CASE("verify-injection success") {
  const auto basis = invoke({"basis", "--n", "100", "--h", "2"});
  const auto bfile = temp_file("b100.txt", basis.out);
  const auto set = temp_file("p.txt", "11\n13\n97\n");
  const auto r = invoke({"verify-injection", "--set", set, "--basis", bfile});
  CHECK(r.code == 0);
  CHECK(r.out == "11 11\n13 13\n97 97\n# unmatched:\n");
}

TEST_CASE("constructions are reproducible") {
  const auto a = invoke({"--seed", "5", "construct-h2", "--n", "1000"});
  const auto b = invoke({"--seed", "5", "construct-h2", "--n", "1000"});
  CHECK(a.code == 0);
  CHECK(a.out == b.out);
  CHECK(a.out.rfind("# n=1000 h=2 seed=5", 0) == 0);
  const auto c = invoke({"--seed", "6", "construct-h2", "--n", "1000"});
  CHECK(c.out != a.out);

  const auto f = temp_file("fam.txt", a.out);
  CHECK(parse(invoke({"check", "--file", f, "--h", "2"}).out)["holds"] == true);

  const auto h3 = invoke({"construct-h3", "--n", "300", "--h", "4", "--cut", "sqrt"});
  CHECK(h3.code == 0);
  const auto f3 = temp_file("fam3.txt", h3.out);
  CHECK(parse(invoke({"check", "--file", f3, "--h", "4"}).out)["holds"] == true);
}

TEST_CASE("family counts and bounds") {
  auto j = parse(invoke({"count-families", "--n", "100", "--h", "3"}).out);
  CHECK(j["count"] == "842764124160");
  j = parse(invoke({"count-families", "--n", "30", "--h", "2"}).out);
  CHECK(j["count"] == "720");
  const auto csv = invoke({"bounds", "--n", "10000", "--h", "2"});
  CHECK(csv.code == 0);
  CHECK(csv.out.rfind("n,h,log_T,envelope_low,envelope_high,alpha_low,alpha_high\n10000,2,", 0) == 0);
  CHECK(invoke({"bounds", "--n", "10", "--h", "3"}).code == 2);
  j = parse(invoke({"alpha", "--terms", "1"}).out);
  CHECK(j["low"] == 2.0);
}

TEST_CASE("workers do not change output") {
  const auto one = invoke({"--workers", "1", "count", "--n", "30", "--h", "2"});
  const auto eight = invoke({"--workers", "8", "count", "--n", "30", "--h", "2"});
  CHECK(one.out == eight.out);
}

TEST_CASE("help") {
  const auto r = invoke({"--help"});
  CHECK(r.code == 0);
  CHECK(r.out.find("verify-injection") != std::string::npos);
}
