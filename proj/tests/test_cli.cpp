#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "recurbound/cli.hpp"
#include "recurbound/serialize.hpp"

using namespace recurbound;

namespace {

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::filesystem::path write_temp(const std::string& name, const std::string& text) {
  const auto dir = std::filesystem::temp_directory_path() / "recurbound-cli-test";
  std::filesystem::create_directories(dir);
  const auto path = dir / name;
  std::ofstream(path) << text;
  return path;
}

Rational exact_of(const json& j) { return parse_rational(j.at("exact").get<std::string>()); }

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("eval encloses the exponential partial sum") {
  const auto op = write_temp("exp.json", R"({"order": 1, "polys": [["-1"], ["1"]]})");
  const Outcome o = run({"eval", "--op", op.string(), "--init", "1,0", "--point", "0.5,0", "--order", "30", "--prec",
                         "53", "--format", "json"});
  REQUIRE(o.code == cli::kExitOk);
  const json j = json::parse(o.out);
  const Rational re = exact_of(j["enclosure"]["mid"]["re"]);
  const Rational rad = exact_of(j["enclosure"]["rad"]);
  Rational term = 1, sum = 0;
  for (int n = 0; n < 30; ++n) {
    sum += term;
    term = term / 2 / (n + 1);
  }
  CHECK(abs(re - sum) <= rad);
  CHECK(exact_of(j["eta_bar"]) >= 0);
  CHECK(j["majorant"]["m"] == 1);
  CHECK(j.contains("Delta_N"));
}

TEST_CASE("text output and the recurrence listing") {
  const auto op = write_temp("geom.json", R"({"order": 1, "polys": [["-1"], ["1", "-1"]]})");
  const Outcome e = run({"eval", "--op", op.string(), "--init", "1,0", "--point", "1/4,0", "--order", "20",
                         "--format", "text"});
  CHECK(e.code == cli::kExitOk);
  CHECK(e.out.find("enclosure:") != std::string::npos);
  const Outcome r = run({"rec", "--op", op.string(), "--format", "json"});
  REQUIRE(r.code == cli::kExitOk);
  const json j = json::parse(r.out);
  CHECK(j["order"] == 1);
}

TEST_CASE("operational errors exit with 1") {
  CHECK(run({"eval", "--op", "/nonexistent/op.json", "--init", "1,0", "--order", "5"}).code == cli::kExitError);
  const Outcome missing = run({"rec", "--op", "/nonexistent/op.json"});
  CHECK(missing.code == cli::kExitError);
  CHECK_FALSE(missing.err.empty());

  const auto bad = write_temp("bad.json", R"({"order": 2, "polys": [["1"]]})");
  CHECK(run({"rec", "--op", bad.string()}).code == cli::kExitError);
  const auto garbage = write_temp("garbage.json", "not json");
  CHECK(run({"rec", "--op", garbage.string()}).code == cli::kExitError);

  const auto geom = write_temp("geom2.json", R"({"order": 1, "polys": [["-1"], ["1", "-1"]]})");
  CHECK(run({"eval", "--op", geom.string(), "--init", "1,0", "--point", "2,0", "--order", "10"}).code ==
        cli::kExitError);
  CHECK(run({"case", "no-such-case"}).code == cli::kExitError);
  CHECK(run({"case", "toy-fixed", "--steps", "0"}).code == cli::kExitError);
  CHECK(run({"frobnicate"}).code == cli::kExitError);
  CHECK(run({"--help"}).code == cli::kExitOk);
}

TEST_CASE("case studies exit with 0 when their bounds hold") {
  CHECK(run({"case", "toy-fixed", "--steps", "100", "--policy", "worst"}).code == cli::kExitOk);
  CHECK(run({"case", "toy-tight", "--format", "text"}).code == cli::kExitOk);
  CHECK(run({"case", "wave-lambda", "--n", "3", "--a", "3/4", "--steps", "16", "--format", "json"}).code ==
        cli::kExitOk);
  const Outcome leg = run({"case", "legendre", "--x", "1/2", "--steps", "50", "--format", "json"});
  REQUIRE(leg.code == cli::kExitOk);
  const json j = json::parse(leg.out);
  CHECK(j["name"] == "legendre");
  CHECK(j["summary"]["passed"] == true);
  CHECK(j["records"].size() == 50);
}

TEST_CASE("identical flags and seed give byte-identical reports") {
  const std::vector<std::string> args{"case", "toy-fixed", "--policy", "random", "--seed", "1234", "--steps", "300",
                                      "--format", "json"};
  const Outcome a = run(args), b = run(args);
  CHECK(a.code == cli::kExitOk);
  CHECK(a.out == b.out);
  std::vector<std::string> other = args;
  other[5] = "1235";
  CHECK(run(other).out != a.out);

  const auto report = std::filesystem::temp_directory_path() / "recurbound-cli-test" / "report.json";
  std::vector<std::string> with_file = args;
  with_file.push_back("--report");
  with_file.push_back(report.string());
  CHECK(run(with_file).code == cli::kExitOk);
  std::ifstream f(report);
  const std::string saved((std::istreambuf_iterator<char>(f)), std::istreambuf_iterator<char>());
  CHECK(saved == a.out);
}

TEST_CASE("operator files accept complex and decimal coefficients") {
  const json j = json::parse(R"({"order": 1, "polys": [[{"re": "0", "im": "1"}], ["1", 0.5]]})");
  const DiffOperator op = operator_from_json(j);
  CHECK(op.coeff(0)[0] == ComplexRational(0, 1));
  CHECK(op.coeff(1)[1] == ComplexRational(Rational(1, 2)));
  CHECK_THROWS(operator_from_json(json::parse(R"({"order": 3, "polys": [["1"], ["1"]]})")));
}

}  // TEST_SUITE
