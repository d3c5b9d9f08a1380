#include <sstream>

#include "cli.hpp"
#include "doctest.h"
#include "rnacci/valuation.hpp"

using namespace rnacci;
using rnacci::cli::Json;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result invoke(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

void check_round_trip(const std::string& text) {
  const auto trimmed = text.substr(0, text.find_last_not_of('\n') + 1);
  CHECK(Json::parse(trimmed).dump(2) == trimmed);
}

}  // namespace

TEST_CASE("term") {
  const auto r = invoke({"term", "--r", "4", "--n", "10"});
  CHECK(r.code == 0);
  CHECK(r.out == "152\n");
  CHECK(invoke({"term", "--r", "6", "--n", "14"}).out == term(make_params(6), 14).get_str() + "\n");
  const auto j = invoke({"term", "--r", "4", "--n", "10", "--format", "json"});
  CHECK(Json::parse(j.out)["value"] == "152");
  check_round_trip(j.out);
}

TEST_CASE("nu2") {
  auto r = invoke({"nu2", "--k", "2", "--n", "10", "--check-oracle"});
  CHECK(r.code == 0);
  CHECK(r.out == "3\n");
  CHECK(invoke({"nu2", "--k", "2", "--n", "0"}).out == "inf\n");
  r = invoke({"nu2", "--k", "3", "--n", "14", "--check-oracle", "--format", "json"});
  const auto doc = Json::parse(r.out);
  CHECK(doc["nu2"] == 4);
  CHECK(doc["oracle"] == 4);
  CHECK(invoke({"nu2", "--k", "1", "--n", "3"}).code == 2);
}

TEST_CASE("legendre") {
  auto r = invoke({"legendre", "--p", "2", "--m", "10"});
  CHECK(r.code == 0);
  CHECK(r.out == "8\nlower 6\nupper 9\n");
  r = invoke({"legendre", "--p", "3", "--m", "10", "--format", "json"});
  const auto doc = Json::parse(r.out);
  CHECK(doc["exact"] == 4);
  CHECK(doc["lower"] == "2");
  CHECK(doc["upper"] == "9/2");
}

TEST_CASE("phi") {
  auto r = invoke({"phi", "--r", "4", "--tol", "1e-6"});
  CHECK(r.code == 0);
  CHECK(r.out.rfind("1.92756", 0) == 0);
  r = invoke({"phi", "--r", "6", "--format", "json"});
  const auto doc = Json::parse(r.out);
  CHECK(doc["midpoint"].get<double>() == doctest::Approx(1.983583));
  check_round_trip(r.out);
  CHECK(invoke({"phi", "--r", "4", "--tol", "0"}).code == 2);
  CHECK(invoke({"phi", "--r", "4", "--tol", "abc"}).code == 2);
}

TEST_CASE("bounds csv and json") {
  auto r = invoke({"bounds", "--k", "2..5", "--d", "1..10", "--format", "csv"});
  CHECK(r.code == 0);
  std::istringstream lines(r.out);
  std::string line;
  std::getline(lines, line);
  CHECK(line == "k,d,m_max,n_sum_max");
  int rows = 0;
  while (std::getline(lines, line)) ++rows;
  CHECK(rows == 40);
  CHECK(r.out.find('\r') == std::string::npos);
  CHECK(r.out.find("\n2,1,11,31\n") != std::string::npos);

  r = invoke({"bounds", "--k", "3..3", "--d", "5", "--format", "json"});
  const auto doc = Json::parse(r.out);
  REQUIRE(doc.size() == 1);
  CHECK(doc[0]["m_max"] == 50);
  CHECK(doc[0].begin().key() == "k");
  check_round_trip(r.out);
}

TEST_CASE("solve") {
  auto r = invoke({"solve", "--k", "2", "--d", "1", "--format", "json"});
  CHECK(r.code == 0);
  const auto doc = Json::parse(r.out);
  REQUIRE(doc.size() == 1);
  CHECK(doc[0].dump() == R"({"k":2,"d":1,"m":3,"indices":[5]})");
  check_round_trip(r.out);
  r = invoke({"solve", "--k", "3", "--d", "1"});
  CHECK(r.out == "no nontrivial solutions\n");
  CHECK(invoke({"solve", "--k", "2", "--d", "1", "--format", "csv"}).code == 2);
}

TEST_CASE("verify") {
  auto r = invoke({"verify", "--k", "2..3", "--suite", "lemma33", "--format", "json"});
  CHECK(r.code == 0);
  const auto doc = Json::parse(r.out);
  REQUIRE(doc.size() == 2);
  CHECK(doc[0]["check"] == "companion_power");
  CHECK(doc[0]["passed"] == true);
  CHECK(doc[0]["counterexample"].is_null());
  check_round_trip(r.out);
  r = invoke({"verify", "--k", "2", "--suite", "super"});
  CHECK(r.code == 0);
  CHECK(r.out.rfind("PASS first_entry_congruence", 0) == 0);
  CHECK(invoke({"verify", "--suite", "lemma99"}).code == 2);
}

TEST_CASE("failing report serializes its counterexample") {
  VerificationReport report = VerificationReport::fail("x", "y", {"n=1", "2", "3"});
  const auto doc = cli::to_json(report);
  CHECK(doc.dump() == R"({"check":"x","range":"y","passed":false,"counterexample":{"input":"n=1","expected":"2","actual":"3"}})");
}

TEST_CASE("usage errors exit with 2") {
  CHECK(invoke({}).code == 2);
  CHECK(invoke({"frobnicate"}).code == 2);
  CHECK(invoke({"term", "--r", "4"}).code == 2);
  CHECK(invoke({"term", "--r", "1", "--n", "3"}).code == 2);
  CHECK(invoke({"term", "--r", "4", "--n", "3", "--bogus"}).code == 2);
  CHECK(invoke({"bounds", "--k", "5..2", "--d", "1"}).code == 2);
  CHECK(invoke({"term", "--help"}).code == 0);
}

TEST_CASE("--threads is accepted before or after the subcommand") {
  CHECK(invoke({"--threads", "2", "bounds", "--k", "2", "--d", "1"}).code == 0);
  CHECK(invoke({"bounds", "--k", "2", "--d", "1", "--threads", "2"}).code == 0);
}

TEST_CASE("parse helpers") {
  CHECK(cli::parse_range("2..5") == std::pair{2, 5});
  CHECK(cli::parse_range("7") == std::pair{7, 7});
  CHECK_THROWS(cli::parse_range("5..2"));
  CHECK_THROWS(cli::parse_range("a..b"));
  CHECK(cli::parse_rational("1e-6") == mpq_class(1, 1000000));
  CHECK(cli::parse_rational("2.5E-1") == mpq_class(1, 4));
  CHECK(cli::parse_rational("3/12") == mpq_class(1, 4));
  CHECK(cli::parse_rational("0.001") == mpq_class(1, 1000));
  CHECK_THROWS(cli::parse_rational("."));
  CHECK(cli::round_significant15(1.9275619754829254) == 1.92756197548293);
}

TEST_CASE("library and CLI agree on the bound table") {
  const auto rows = bounds_table(2, 5, 1, 10);
  const auto r = invoke({"bounds", "--k", "2..5", "--d", "1..10", "--format", "csv"});
  CHECK(r.out == cli::bounds_csv(rows));
}
