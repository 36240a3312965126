#include <sstream>

#include "doctest.h"
#include "wreath/cli.hpp"
#include "wreath/errors.hpp"
#include "wreath/group_spec.hpp"

using namespace wreath;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

}  // namespace

TEST_CASE("parse_spec") {
  const auto prod = parse_spec("C2 x C2");
  CHECK(prod.kind == GroupSpec::Kind::Product);
  CHECK(prod.children.size() == 2);
  CHECK(prod.children[0].params == std::vector<std::uint64_t>{2});

  const auto w = parse_spec("W(C4,C2)");
  CHECK(w.kind == GroupSpec::Kind::Wreath);
  CHECK(w.children[0] == parse_spec("C4"));

  const auto a = parse_spec("A(2;1,2,2)");
  CHECK(a.kind == GroupSpec::Kind::Abelian);
  CHECK(a.params == std::vector<std::uint64_t>{2, 1, 2, 2});
  CHECK(materialize(a).size() == 32);

  CHECK(parse_spec(" W ( C2 x C2 , ( C3 ) ) ") == parse_spec("W(C2xC2,C3)"));
  CHECK(parse_spec("(C2)") == parse_spec("C2"));
}

TEST_CASE("parse errors carry positions") {
  try {
    (void)parse_spec("W(C2,)");
    FAIL("expected parse error");
  } catch (const ParseError& e) {
    CHECK(e.position() == 5);
  }
  CHECK_THROWS_AS(parse_spec("c2"), ParseError);   // case-sensitive
  CHECK_THROWS_AS(parse_spec("C2 x"), ParseError);
  CHECK_THROWS_AS(parse_spec("Q7"), ParseError);
  CHECK_THROWS_AS(parse_spec("E(2)"), ParseError);
  CHECK_THROWS_AS(parse_spec("C2 C2"), ParseError);
  CHECK_THROWS_AS(parse_spec("C99999999999999999999999"), ParseError);
  // semantic errors, reported after a successful parse
  CHECK_THROWS_AS(parse_spec("D2"), ParseError);
  CHECK_THROWS_AS(parse_spec("C1"), ParseError);
  CHECK_THROWS_AS(parse_spec("S7"), ParseError);
  CHECK_THROWS_AS(parse_spec("E(4,2)"), ParseError);
  CHECK_THROWS_AS(parse_spec("A(2;0)"), ParseError);
}

TEST_CASE("catalog specs pretty-print and re-parse to an equal tree") {
  for (const char* text : {"C2", "D4", "Q8", "S3", "E(2,3)", "A(3;1,1,2)", "C2 x C3 x C4", "(C2 x C2) x C3",
                           "W(C2,C2)", "W(W(C2,C2),C2)", "W(C2 x C2,E(2,2))", "C2 x W(C3,(C2 x C2))"}) {
    const auto spec = parse_spec(text);
    REQUIRE(parse_spec(to_string(spec)) == spec);
  }
  CHECK(to_string(parse_spec("(C2xC2)xC3")) == "(C2 x C2) x C3");
}

TEST_CASE("abelian_exponents") {
  CHECK(abelian_exponents(parse_spec("C8"))->exponents == std::vector<std::uint64_t>{3});
  CHECK(abelian_exponents(parse_spec("A(2;2,1)"))->exponents == std::vector<std::uint64_t>{1, 2});
  CHECK(abelian_exponents(parse_spec("E(3,2) x C9"))->exponents == std::vector<std::uint64_t>{1, 1, 2});
  CHECK_FALSE(abelian_exponents(parse_spec("C6")));
  CHECK_FALSE(abelian_exponents(parse_spec("C2 x C3")));
  CHECK_FALSE(abelian_exponents(parse_spec("D4")));
}

TEST_CASE("spectrum_of falls back to the orbit oracle beyond the cap") {
  const auto small = spectrum_of(parse_spec("W(C2,C2)"), {});
  CHECK(small.method == "oracle");
  const auto big = spectrum_of(parse_spec("W(C8,C8)"), {});
  CHECK(big.method == "orbit");
  CHECK(big.spectrum.group_size() == int_pow(BigInt(8), 8) * 8);
}

TEST_CASE("cli commands") {
  auto r = run({"avg", "S3"});
  CHECK(r.code == 0);
  CHECK(r.out == "13/6 ≈ 2.16666667\n");

  r = run({"maxorder", "W(C4,C2)"});
  CHECK(r.out == "8\n");

  r = run({"spectrum", "D4"});
  CHECK(r.out == "1: 1\n2: 5\n4: 2\n");

  r = run({"wreath-avg", "--a", "C2", "--b", "C2", "--method", "all"});
  CHECK(r.code == 0);
  CHECK(r.out.find("oracle: 19/8") != std::string::npos);
  CHECK(r.out.find("orbit: 19/8") != std::string::npos);

  r = run({"--digits", "3", "psi", "--a", "C2", "--b", "C2"});
  CHECK(r.out == "19/24 ≈ 0.792\n");

  r = run({"dist", "--a", "C4", "--b", "C2", "--check-oracle"});
  CHECK(r.code == 0);
  CHECK(r.out.find("r_3 = 1/32") != std::string::npos);
  CHECK(r.out.find("oracle: match") != std::string::npos);

  r = run({"abelian-check", "--a", "A(2;1,1)", "--b", "E(2,2)"});
  CHECK(r.code == 0);
  CHECK(r.out.find("t = 2") != std::string::npos);
}

TEST_CASE("cli json payloads") {
  auto r = run({"--json", "avg", "S3"});
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j["command"] == "avg");
  CHECK(j["inputs"]["group"] == "S3");
  CHECK(j["result"]["average_order"]["num"] == "13");
  CHECK(j["result"]["average_order"]["den"] == "6");
  CHECK(j["result"]["average_order"]["decimal"] == "2.16666667");

  r = run({"limits", "--b", "C2", "--p", "2", "--nmax", "10", "--json"});
  CHECK(r.code == 0);
  const auto lim = nlohmann::json::parse(r.out);
  CHECK(lim["result"]["monotone"] == true);
  CHECK(lim["result"]["bound_holds"] == true);
  const auto last = lim["result"]["sequence"].back()["value"].get<BigRational>();
  CHECK(BigRational(3) - last <= rat(3, 2) / BigRational(1024));

  r = run({"--json", "wreath-avg", "--a", "C8", "--b", "C8", "--method", "oracle"});
  CHECK(r.code == cli::kResource);
  CHECK(nlohmann::json::parse(r.out)["error"]["kind"] == "resource");
}

TEST_CASE("cli csv trajectories") {
  auto r = run({"--csv", "tower", "--a", "C2", "--b", "C2", "--steps", "1"});
  CHECK(r.out == "n,value_num,value_den,decimal\n0,19,24,0.79166667\n1,487,768,0.63411458\n");
  r = run({"--csv", "tower", "--a", "C2", "--b", "C2", "--steps", "1", "--mode", "float"});
  CHECK(r.out.rfind("n,value_num,value_den,decimal\n0,,,0.7916666", 0) == 0);
  r = run({"--csv", "limits", "--b", "C2", "--p", "2", "--nmax", "2"});
  CHECK(r.out == "n,value_num,value_den,decimal\n1,19,8,2.37500000\n2,87,32,2.71875000\n");
}

TEST_CASE("cli exit codes") {
  CHECK(run({}).code == cli::kUsage);
  CHECK(run({"avg"}).code == cli::kUsage);
  CHECK(run({"frobnicate"}).code == cli::kUsage);
  CHECK(run({"avg", "D2"}).code == cli::kUsage);
  CHECK(run({"avg", "W(C2,"}).code == cli::kUsage);
  CHECK(run({"--digits", "0", "avg", "C2"}).code == cli::kUsage);
  CHECK(run({"wreath-avg", "--a", "S3", "--b", "C2", "--method", "theorem2"}).code == cli::kPrecondition);
  CHECK(run({"dist", "--a", "C2", "--b", "C3"}).code == cli::kPrecondition);
  CHECK(run({"abelian-check", "--a", "D4", "--b", "C2"}).code == cli::kPrecondition);
  CHECK(run({"--bit-budget", "64", "tower", "--a", "C2", "--b", "C2", "--steps", "12"}).code == cli::kResource);
  CHECK(run({"--help"}).code == cli::kOk);
}

TEST_CASE("method all skips inapplicable methods but still requires agreement") {
  const auto r = run({"--json", "wreath-avg", "--a", "S3", "--b", "C2"});
  CHECK(r.code == 0);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j["result"]["methods"]["theorem2"].contains("skipped"));
  CHECK(j["result"]["agree"] == true);
  CHECK(j["result"]["value"]["num"] == "283");
}

TEST_CASE("limits reports the computed limit next to the reference closed form") {
  const auto r = run({"--json", "limits", "--b", "E(2,3)", "--p", "2", "--nmax", "3", "--r", "2"});
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j["result"]["limit"]["num"] == "15");
  CHECK(j["result"]["scaled_limit"]["value"]["num"] == "15");
  CHECK(j["result"]["scaled_limit"]["value"]["den"] == "2");
  CHECK(j["result"]["reference_closed_form"]["matches"] == false);
}
