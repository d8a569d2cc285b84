#include <doctest.h>

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <sstream>
#include <string>
#include <vector>

#include "cli.hpp"
#include "stockseq/io.hpp"

namespace fs = std::filesystem;
using stockseq::Rational;
using stockseq::io::Json;

namespace {
struct Run {
  int code = 0;
  std::string out;
  std::string err;
};

Run cli(std::vector<std::string> args) {
  args.insert(args.begin(), "stockseq");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  Run r;
  r.code = stockseq::cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

fs::path scratch(const std::string& name) {
  const auto dir = fs::temp_directory_path() / "stockseq_cli_tests";
  fs::create_directories(dir);
  return dir / name;
}

fs::path write(const std::string& name, const std::string& text) {
  const auto p = scratch(name);
  stockseq::io::write_text_file(p, text);
  return p;
}
}  // namespace

TEST_CASE("solve") {
  const auto inst = write("p.json", R"({"kind":"alternating","x":[5,3,2],"y":[4,4,2]})");
  const auto r = cli({"solve", "--alg", "pairing", "-i", inst.string()});
  REQUIRE(r.code == 0);
  const auto doc = Json::parse(r.out);
  CHECK(doc["beta"] == "5");
  CHECK(doc["feasible"] == true);
  CHECK(doc["algorithm"] == "pairing");

  const auto tight = scratch("tight.json");
  REQUIRE(cli({"gen", "--family", "tight-alt", "--p", "3", "-o", tight.string()}).code == 0);
  const auto o = cli({"solve", "--alg", "oracle", "-i", tight.string()});
  REQUIRE(o.code == 0);
  CHECK(Json::parse(o.out)["beta"] == "3");

  const auto consec = scratch("consec.json");
  REQUIRE(cli({"gen", "--family", "consec", "-o", consec.string()}).code == 0);
  const auto trace = scratch("trace.csv");
  const auto result = scratch("res.json");
  REQUIRE(cli({"solve", "--alg", "lp-round", "-i", consec.string(), "-o", result.string(), "--trace",
               trace.string()})
              .code == 0);
  const auto rd = Json::parse(stockseq::io::read_text_file(result));
  const auto eta = Rational::parse(rd["eta"].get<std::string>());
  const auto eta_lp = Rational::parse(rd["certificate"]["eta_lp"].get<std::string>());
  CHECK(eta <= eta_lp + Rational(9));
  CHECK(stockseq::io::read_text_file(trace).rfind("j,j_prime,i1,i2,i3,delta", 0) == 0);

  const auto sl = write("s.json", R"({"kind":"slated","x":[2,1],"y":[1,1,1],"slots":"XYXYY"})");
  CHECK(cli({"solve", "--alg", "slated3", "-i", sl.string(), "--phase-order", "x-first"}).code == 0);
}

TEST_CASE("solve exit codes") {
  const auto inst = write("p2.json", R"({"kind":"alternating","x":[5,3,2],"y":[4,4,2]})");
  CHECK(cli({"solve", "--alg", "magic", "-i", inst.string()}).code == stockseq::cli::kUsage);
  CHECK(cli({"solve", "--alg", "lp-round", "-i", inst.string()}).code == stockseq::cli::kBadInput);
  CHECK(cli({"solve", "--alg", "pairing", "-i", inst.string(), "--trace", "t.csv"}).code == stockseq::cli::kUsage);
  const auto bad = write("bad.json", R"({"kind":"alternating","x":[1],"y":[2]})");
  CHECK(cli({"solve", "--alg", "pairing", "-i", bad.string()}).code == stockseq::cli::kBadInput);
  CHECK(cli({"solve", "--alg", "pairing", "-i", scratch("missing.json").string()}).code ==
        stockseq::cli::kBadInput);
  CHECK(cli({}).code == stockseq::cli::kUsage);
  CHECK(cli({"--help"}).code == 0);

  const auto big = scratch("big.json");
  REQUIRE(cli({"gen", "--family", "random", "--kind", "gasoline", "--n", "7", "--seed", "1", "-o", big.string()})
              .code == 0);
  ::setenv("STOCKSEQ_ORACLE_CAP", "5", 1);
  CHECK(cli({"solve", "--alg", "oracle", "-i", big.string()}).code == stockseq::cli::kOracleCap);
  ::unsetenv("STOCKSEQ_ORACLE_CAP");
}

TEST_CASE("gen") {
  const auto a = cli({"gen", "--family", "random", "--kind", "alternating", "--n", "6", "--seed", "42"});
  const auto b = cli({"gen", "--family", "random", "--kind", "alternating", "--n", "6", "--seed", "42"});
  CHECK(a.code == 0);
  CHECK(a.out == b.out);
  const auto t = cli({"gen", "--family", "tight-alt", "--p", "3"});
  CHECK(t.out == "{\"kind\":\"alternating\",\"x\":[\"2\",\"2\",\"2\",\"2\"],\"y\":[\"3\",\"3\",\"1\",\"1\"]}\n");
  const auto z = cli({"gen", "--family", "3part", "--z", "1/3,1/3,1/3"});
  REQUIRE(z.code == 0);
  CHECK(Json::parse(z.out)["y"] == Json::array({"2/3", "2/3", "2/3", "2"}));
  CHECK(cli({"gen", "--family", "gap-alt", "--p", "2"}).code != 0);
  CHECK(cli({"gen", "--family", "nope"}).code == stockseq::cli::kUsage);
}

TEST_CASE("verify") {
  CHECK(cli({"verify", "--suite", "all", "--count", "0"}).code == 0);
  const auto r = cli({"verify", "--suite", "alt", "--count", "30", "--seed", "3"});
  CHECK(r.code == 0);
  CHECK(cli({"verify", "--suite", "gasoline", "--count", "12"}).code == 0);
}

TEST_CASE("bench") {
  const auto empty = cli({"bench", "--family", "tight-alt", "--sizes", "5..4", "--algs", "approx179"});
  CHECK(empty.code == 0);
  CHECK(empty.out == "instance,alg,n,eta,opt,ratio,millis\n");

  const auto r = cli({"bench", "--family", "random", "--kind", "alternating", "--sizes", "2..5", "--algs",
                      "approx179,pairing", "--count", "3", "--jobs", "3"});
  REQUIRE(r.code == 0);
  std::istringstream lines(r.out);
  std::string line;
  std::getline(lines, line);
  int rows = 0;
  while (std::getline(lines, line)) {
    ++rows;
    std::vector<std::string> cells;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    REQUIRE(cells.size() == 7);
    if (cells[1] == "approx179" && !cells[5].empty()) {
      CHECK(Rational::parse(cells[5]) <= Rational(179, 100));
    }
  }
  CHECK(rows == 4 * 3 * 2);

  // the same run with one worker gives the same rows except timings
  const auto serial = cli({"bench", "--family", "random", "--kind", "alternating", "--sizes", "2..5", "--algs",
                           "approx179,pairing", "--count", "3", "--jobs", "1"});
  auto strip = [](const std::string& csv) {
    std::string out;
    std::istringstream in(csv);
    std::string l;
    while (std::getline(in, l)) out += l.substr(0, l.rfind(',')) + "\n";
    return out;
  };
  CHECK(strip(serial.out) == strip(r.out));

  const auto gas = cli({"bench", "--family", "gas-gap", "--sizes", "2..6", "--algs", "lp-round"});
  CHECK(gas.code == 0);
  CHECK(std::count(gas.out.begin(), gas.out.end(), '\n') == 4);
  CHECK(cli({"bench", "--family", "tight-alt", "--sizes", "3-4", "--algs", "pairing"}).code ==
        stockseq::cli::kUsage);
}
