#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "coulomb/cli/app.hpp"
#include "coulomb/representations.hpp"
#include "doctest.h"
#include "json.hpp"

using namespace coulomb;

namespace {

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome invoke(std::vector<std::string> args) {
  std::ostringstream out;
  std::ostringstream err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> fields;
  std::stringstream ss(line);
  for (std::string f; std::getline(ss, f, sep);) fields.push_back(f);
  return fields;
}

// Data rows only; comment and header lines dropped.
std::vector<std::vector<std::string>> csv_rows(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  std::stringstream ss(text);
  bool header_seen = false;
  for (std::string line; std::getline(ss, line);) {
    if (line.empty() || line[0] == '#') continue;
    if (!header_seen) {
      header_seen = true;
      continue;
    }
    rows.push_back(split(line, ','));
  }
  return rows;
}

std::filesystem::path temp_file(const std::string& name) {
  return std::filesystem::temp_directory_path() / ("coulomb_cli_test_" + name);
}

}  // namespace

TEST_CASE("scan covers the full grid for each representation") {
  const auto r = invoke({"scan", "--gamma", "1", "--k-count", "3", "--kp-count", "3", "--cos",
                         "-1,0.5", "--rep", "series,closed", "--threads", "2"});
  REQUIRE(r.code == cli::kSuccess);
  const auto rows = csv_rows(r.out);
  CHECK(rows.size() == 36);
  for (const auto& row : rows) {
    REQUIRE(row.size() == 11);
    CHECK(std::isfinite(std::stod(row[9])));
  }
}

TEST_CASE("scan output is byte identical across runs and thread counts") {
  const std::vector<std::string> base = {"scan",    "--gamma", "0.6", "--k-count",
                                         "4",       "--kp-count", "3", "--cos",
                                         "-1,0,0.7"};
  auto one = base;
  one.insert(one.end(), {"--threads", "1"});
  auto many = base;
  many.insert(many.end(), {"--threads", "3"});
  const auto a = invoke(one);
  const auto b = invoke(one);
  const auto c = invoke(many);
  REQUIRE(a.code == cli::kSuccess);
  CHECK(a.out == b.out);
  // The echo carries the thread count, so compare data rows only.
  CHECK(csv_rows(a.out) == csv_rows(c.out));
}

TEST_CASE("scan rows at omega = pi are finite") {
  const auto r = invoke({"scan", "--gamma", "2.5", "--k-min", "0.5", "--k-max", "2", "--k-count",
                         "2", "--kp-min", "0.5", "--kp-max", "2", "--kp-count", "2", "--cos",
                         "-1"});
  REQUIRE(r.code == cli::kSuccess);
  int at_pi = 0;
  for (const auto& row : csv_rows(r.out)) {
    if (std::abs(std::stod(row[3]) - M_PI) < 1e-15) {
      ++at_pi;
      CHECK(std::isfinite(std::stod(row[9])));
    }
  }
  CHECK(at_pi > 0);
}

TEST_CASE("scan CSV rows re-evaluate to the printed value") {
  const auto r = invoke({"scan", "--mu", "1", "--q1q2", "1", "--n", "2", "--k-count", "3",
                         "--kp-count", "2", "--cos", "-0.4,0.3"});
  REQUIRE(r.code == cli::kSuccess);
  const auto ctx = make_context({1.0, 1.0}, 2);
  const auto rows = csv_rows(r.out);
  REQUIRE(!rows.empty());
  for (const auto& row : rows) {
    const MomentumPair pair{std::stod(row[0]), std::stod(row[1]), std::stod(row[2])};
    const auto rep = parse_representation(row[6]);
    REQUIRE(rep.has_value());
    const double printed = std::stod(row[9]);
    const double again = evaluate(pair, ctx, *rep).value;
    CHECK(std::abs(again - printed) <= 1e-12 * std::abs(again));
  }
}

TEST_CASE("scan echoes its configuration") {
  const auto r = invoke({"scan", "--gamma", "1.5", "--kappa", "0.8", "--k-count", "2",
                         "--kp-count", "2", "--rel-tol", "1e-9"});
  REQUIRE(r.code == cli::kSuccess);
  CHECK(r.out.find("# gamma = 1.5\n") != std::string::npos);
  CHECK(r.out.find("# kappa = 0.80000000000000004\n") != std::string::npos);
  CHECK(r.out.find("# rel-tol = 1.0000000000000001e-09\n") != std::string::npos);
  CHECK(r.out.find("k,kprime,cos_theta,omega,eta,xi,representation,bracket,prefactor,value,"
                   "error_estimate\n") != std::string::npos);
}

TEST_CASE("scan JSON carries config, rows and summary") {
  const auto r = invoke({"scan", "--gamma", "1", "--k-count", "2", "--kp-count", "2", "--cos",
                         "0", "--rep", "closed", "--format", "json"});
  REQUIRE(r.code == cli::kSuccess);
  const auto doc = nlohmann::json::parse(r.out);
  CHECK(doc.at("config").at("gamma") == "1");
  CHECK(doc.at("rows").size() == 4);
  CHECK(doc.contains("summary"));
}

TEST_CASE("usage errors exit with code 1") {
  CHECK(invoke({}).code == cli::kUsage);
  CHECK(invoke({"frobnicate"}).code == cli::kUsage);
  CHECK(invoke({"eval", "--gamma", "1", "--k", "1", "--kp", "1"}).code == cli::kUsage);
  CHECK(invoke({"eval", "--gamma", "1", "--k", "1", "--kp", "1", "--cos", "0", "--rep", "magic"})
            .code == cli::kUsage);
  CHECK(invoke({"eval", "--gamma", "0.5", "--k", "1", "--kp", "1", "--cos", "0", "--rep",
                "closed"})
            .code == cli::kUsage);
  CHECK(invoke({"eval", "--gamma", "1", "--k", "-1", "--kp", "1", "--cos", "0"}).code ==
        cli::kUsage);
  CHECK(invoke({"scan", "--gamma", "1", "--k-min", "2", "--k-max", "1"}).code == cli::kUsage);
  CHECK(invoke({"eval", "--mu", "1", "--q1q2", "1", "--gamma", "1", "--k", "1", "--kp", "1",
                "--cos", "0"})
            .code == cli::kUsage);
  CHECK(invoke({"scan", "--gamma", "1", "--format", "xml"}).code == cli::kUsage);
}

TEST_CASE("help exits with code 0") {
  const auto r = invoke({"--help"});
  CHECK(r.code == cli::kSuccess);
  CHECK(r.out.find("partial-wave") != std::string::npos);
}

TEST_CASE("evaluation failures exit with code 2") {
  const auto forward = invoke({"eval", "--gamma", "1", "--k", "1", "--kp", "1", "--cos", "1"});
  CHECK(forward.code == cli::kEvaluationFailure);
  CHECK(!forward.err.empty());
  const auto diagonal = invoke({"partial-wave", "--gamma", "1", "--k", "1", "--kp", "1"});
  CHECK(diagonal.code == cli::kEvaluationFailure);
  const auto unwritable = invoke({"scan", "--gamma", "1", "--output",
                                  (temp_file("missing") / "nested" / "out.csv").string()});
  CHECK(unwritable.code == cli::kEvaluationFailure);
}

TEST_CASE("eval prints the value and its ingredients") {
  const auto r =
      invoke({"eval", "--mu", "1", "--q1q2", "1", "--n", "1", "--k", "1", "--kp", "1", "--cos",
              "-1", "--rep", "closed"});
  REQUIRE(r.code == cli::kSuccess);
  for (const char* key : {"value: ", "bracket: ", "prefactor: ", "omega: ", "eta: ", "xi: ",
                          "error_estimate: "}) {
    CHECK(r.out.find(key) != std::string::npos);
  }
  CHECK(r.out.find("omega: 3.1415926535897931\n") != std::string::npos);

  const auto j = invoke({"eval", "--gamma", "1", "--k", "1", "--kp", "1", "--cos", "-1", "--rep",
                         "closed", "--format", "json"});
  REQUIRE(j.code == cli::kSuccess);
  const auto doc = nlohmann::json::parse(j.out);
  const auto direct = evaluate({1.0, 1.0, -1.0}, make_direct_context(1.0, 1.0),
                               Representation::closed);
  CHECK(doc.at("value").get<double>() == direct.value);
}

TEST_CASE("validate passes on the default omega grid") {
  const auto attractive = invoke({"validate", "--gamma", "1"});
  CHECK(attractive.code == cli::kSuccess);
  CHECK(attractive.out.find("result: PASS") != std::string::npos);
  const auto generalized = invoke({"validate", "--gamma", "-1"});
  CHECK(generalized.code == cli::kSuccess);
  const auto fractional = invoke({"validate", "--gamma", "0.37", "--k-count", "3", "--kp-count",
                                  "3", "--grid", "momentum"});
  CHECK(fractional.code == cli::kSuccess);
}

TEST_CASE("validate fails below the attainable threshold") {
  const auto r = invoke({"validate", "--gamma", "1", "--threshold", "1e-15"});
  CHECK(r.code == cli::kValidationFailed);
  CHECK(r.out.find("result: FAIL") != std::string::npos);
}

TEST_CASE("validate JSON report") {
  const auto r = invoke({"validate", "--gamma", "2", "--format", "json"});
  REQUIRE(r.code == cli::kSuccess);
  const auto doc = nlohmann::json::parse(r.out);
  CHECK(doc.at("summary").at("pass") == true);
}

TEST_CASE("partial-wave tabulates l = 0..4 by default") {
  const auto series = invoke({"partial-wave", "--gamma", "1", "--rep", "series"});
  const auto integral = invoke({"partial-wave", "--gamma", "1", "--rep", "integral"});
  const auto closed = invoke({"partial-wave", "--gamma", "1", "--rep", "closed"});
  REQUIRE(series.code == cli::kSuccess);
  REQUIRE(integral.code == cli::kSuccess);
  REQUIRE(closed.code == cli::kSuccess);
  const auto a = csv_rows(series.out);
  const auto b = csv_rows(integral.out);
  const auto c = csv_rows(closed.out);
  REQUIRE(a.size() == 5);
  REQUIRE(b.size() == 5);
  REQUIRE(c.size() == 5);
  for (std::size_t l = 0; l < 5; ++l) {
    CHECK(std::stoi(a[l][0]) == static_cast<int>(l));
    const double ta = std::stod(a[l][3]);
    CHECK(std::abs(ta - std::stod(b[l][3])) <= 1e-7 * std::abs(ta));
    CHECK(std::abs(ta - std::stod(c[l][3])) <= 1e-7 * std::abs(ta));
  }
}

TEST_CASE("partial-wave is symmetric under k <-> k'") {
  const auto fwd = invoke({"partial-wave", "--gamma", "0.7", "--k", "1.7", "--kp", "0.4"});
  const auto rev = invoke({"partial-wave", "--gamma", "0.7", "--k", "0.4", "--kp", "1.7"});
  REQUIRE(fwd.code == cli::kSuccess);
  REQUIRE(rev.code == cli::kSuccess);
  const auto a = csv_rows(fwd.out);
  const auto b = csv_rows(rev.out);
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double ta = std::stod(a[i][3]);
    CHECK(std::abs(ta - std::stod(b[i][3])) <= 1e-9 * std::abs(ta));
  }
}

TEST_CASE("config file values yield to command-line flags") {
  const auto path = temp_file("config.cfg");
  {
    std::ofstream cfg(path);
    cfg << "# test configuration\n"
        << "gamma = 2\n"
        << "k-count = 2\n"
        << "kp-count = 2\n"
        << "cos = -1\n"
        << "rep = closed\n";
  }
  const auto from_file = invoke({"scan", "--config", path.string()});
  const auto overridden = invoke({"scan", "--config", path.string(), "--gamma", "3"});
  std::filesystem::remove(path);
  REQUIRE(from_file.code == cli::kSuccess);
  REQUIRE(overridden.code == cli::kSuccess);
  CHECK(from_file.out.find("# gamma = 2\n") != std::string::npos);
  CHECK(overridden.out.find("# gamma = 3\n") != std::string::npos);
  CHECK(csv_rows(overridden.out).size() == 4);

  CHECK(invoke({"scan", "--config", temp_file("absent.cfg").string()}).code == cli::kUsage);
}

TEST_CASE("scan writes to --output") {
  const auto path = temp_file("scan.csv");
  const auto r = invoke({"scan", "--gamma", "1", "--k-count", "2", "--kp-count", "2", "--output",
                         path.string()});
  REQUIRE(r.code == cli::kSuccess);
  CHECK(r.out.empty());
  std::ifstream in(path);
  std::stringstream content;
  content << in.rdbuf();
  std::filesystem::remove(path);
  CHECK(csv_rows(content.str()).size() == 2 * 2 * 3 * 4);
}
