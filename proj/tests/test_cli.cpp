#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "cli.hpp"

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result call(std::vector<std::string> args) {
  args.insert(args.begin(), "qrg");
  std::ostringstream out, err;
  const int code = qrg::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

}  // namespace

TEST_CASE("number formatting") {
  CHECK(qrg::cli::format_number(0.5) == "5.00000000000e-01");
  CHECK(qrg::cli::format_number(-1234.5) == "-1.23450000000e+03");
}

TEST_CASE("usage errors") {
  CHECK(call({}).code == 2);
  CHECK(call({"bogus"}).code == 2);
  CHECK(call({"sweep", "--steps", "abc"}).code == 2);

  auto r = call({"critical", "--model", "nosuch"});
  CHECK(r.code == 2);
  CHECK(r.err.find("sierpinski-pyramid") != std::string::npos);

  CHECK(call({"sweep", "--steps", "8"}).code == 2);
  CHECK(call({"sweep", "--measure", "purity"}).code == 2);
  CHECK(call({"scaling", "--n-min", "3", "--n-max", "3"}).code == 2);
  CHECK(call({"scaling", "--n-min", "3", "--n-max", "4"}).code == 2);
  CHECK(call({"collapse", "--n-min", "3", "--n-max", "3"}).code == 2);
  CHECK(call({"sweep", "--n-min", "4", "--n-max", "2"}).code == 2);
  CHECK(call({"sweep", "--n-max", "200"}).code == 2);
  CHECK(call({"sweep", "--g-min", "0.2"}).code == 2);
  CHECK(call({"sweep", "--format", "xml"}).code == 2);
  CHECK(call({"cluster", "--g", "-1"}).code == 2);
  CHECK(call({"collapse", "--nu", "-0.5"}).code == 2);
}

TEST_CASE("help exits cleanly") {
  const auto r = call({"--help"});
  CHECK(r.code == 0);
  CHECK(r.out.find("sweep") != std::string::npos);
}

TEST_CASE("unwritable output path") {
  const auto r = call({"critical", "--out", "/nonexistent-dir/x/out.csv"});
  CHECK(r.code == 3);
  CHECK(!r.err.empty());
}

TEST_CASE("critical report") {
  const auto r = call({"critical", "--model", "sierpinski-triangle", "--format", "json"});
  REQUIRE(r.code == 0);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j["g_c"].get<double>() == doctest::Approx(0.8688370).epsilon(1e-6));
  CHECK(j["nu"].get<double>() == doctest::Approx(0.71962).epsilon(1e-4));
  CHECK(j["edges"].size() == 3);
}

TEST_CASE("sweep csv and json") {
  const auto r = call({"sweep", "--n-min", "1", "--n-max", "2", "--steps", "16"});
  REQUIRE(r.code == 0);
  std::istringstream lines(r.out);
  std::string header;
  std::getline(lines, header);
  CHECK(header == "model,measure,n,N,g,value,dvalue_dg");
  int rows = 0;
  for (std::string l; std::getline(lines, l);) ++rows;
  CHECK(rows == 32);

  const auto j = call({"sweep", "--measure", "coherence", "--n-min", "0", "--n-max", "0", "--steps", "16",
                       "--format", "json"});
  REQUIRE(j.code == 0);
  const auto arr = nlohmann::json::parse(j.out);
  REQUIRE(arr.size() == 16);
  CHECK(arr[0]["measure"] == "coherence");
  CHECK(arr[0].contains("dvalue_dg"));
}

TEST_CASE("collapse output ends with quality record") {
  const auto r = call({"collapse", "--n-min", "1", "--n-max", "2", "--steps", "64"});
  REQUIRE(r.code == 0);
  CHECK(r.out.rfind("n,N,x,y\n", 0) == 0);
  CHECK(r.out.find("# quality_score=") != std::string::npos);

  const auto j = call({"collapse", "--n-min", "1", "--n-max", "2", "--steps", "64", "--format", "json"});
  REQUIRE(j.code == 0);
  const auto arr = nlohmann::json::parse(j.out);
  CHECK(arr.back().contains("quality_score"));
  CHECK(arr.back().contains("nu"));
}

TEST_CASE("cluster rows") {
  const auto r = call({"cluster", "--model", "triangular", "--g", "0.7", "--n", "0"});
  REQUIRE(r.code == 0);
  int rows = -1;
  std::istringstream lines(r.out);
  for (std::string l; std::getline(lines, l);) ++rows;
  CHECK(rows == 6);
}

TEST_CASE("output file and thread determinism") {
  const auto dir = std::filesystem::temp_directory_path();
  const auto a = (dir / "qrg_cli_t1.csv").string();
  const auto b = (dir / "qrg_cli_t3.csv").string();
  REQUIRE(call({"sweep", "--n-min", "1", "--n-max", "3", "--steps", "40", "--threads", "1", "--out", a}).code == 0);
  REQUIRE(call({"sweep", "--n-min", "1", "--n-max", "3", "--steps", "40", "--threads", "3", "--out", b}).code == 0);
  auto slurp = [](const std::string& p) {
    std::ifstream f(p, std::ios::binary);
    return std::string(std::istreambuf_iterator<char>(f), {});
  };
  const auto ta = slurp(a);
  CHECK(!ta.empty());
  CHECK(ta == slurp(b));
  std::filesystem::remove(a);
  std::filesystem::remove(b);
}
