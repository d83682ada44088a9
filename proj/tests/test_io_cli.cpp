#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "symdef/cli/cli.hpp"
#include "symdef/io/json.hpp"

using namespace symdef;
using io::Json;

namespace {

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome run(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

Json run_json(std::vector<std::string> args, int expected_code) {
  args.push_back("--format");
  args.push_back("json");
  Outcome r = run(args);
  EXPECT_EQ(r.code, expected_code) << r.err;
  return Json::parse(r.out);
}

std::string write_spec(const std::string& name, const std::string& body) {
  auto path = std::filesystem::temp_directory_path() / ("symdef_test_" + name + ".json");
  std::ofstream(path) << body;
  return path.string();
}

}  // namespace

TEST(Json, Scalars) {
  EXPECT_EQ(io::to_json(Rational(-6, 4)), Json("-3/2"));
  EXPECT_EQ(io::to_json(Poly::monomial(2, Rational(3))), Json::parse(R"(["0","0","3"])"));
  EXPECT_EQ(io::to_json(BoundsSpec{3, 9}), Json::parse(R"({"max_operator_order":3,"max_coefficient_degree":9})"));
  EXPECT_EQ(io::to_json(kCalibratedConvention)["calibrated"], true);
}

TEST(Json, Operator) {
  Json j = io::to_json(DiffOp::monomial(Rational(-1, 2), Rational(3, 2), 1, 1));
  EXPECT_EQ(j["lambda"], "-1/2");
  EXPECT_EQ(j["mu"], "3/2");
  EXPECT_EQ(j["coeffs"].size(), 2u);
  Json s = io::to_json(SuperDiffOp::eta_bar_power(Rational(0), Rational(1, 2), 1));
  EXPECT_EQ(s["parity"], "odd");
}

TEST(Json, CochainArgs) {
  Json j = io::to_json(cocycle_Phi(2));
  EXPECT_EQ(j["degree"], 2);
  EXPECT_EQ(j["algebra"], "sl2");
  EXPECT_EQ(j["images"][0]["args"].size(), 2u);
}

TEST(Json, ObstructionBlockShape) {
  auto spec = DeformationSpec::resonant(Flavor::classical, 3);
  Json j = io::to_json(obstruction_classes(build_infinitesimal<DiffOp>(spec)));
  bool seen = false;
  for (const auto& b : j["blocks"])
    if (b["block"]["source_k"] == 2 && b["block"]["target_k"] == 0) {
      seen = true;
      EXPECT_EQ(b["basis"], "Phi:k=2");
      EXPECT_TRUE(b.contains("printed_class"));
      EXPECT_EQ(b["verdict"], "discrepancy");
    }
  EXPECT_TRUE(seen);
}

TEST(SpecParse, Valid) {
  auto s = io::spec_from_json(Json::parse(R"({"flavor":"classical","m":3,"window":8,"params":{"a0":"1","a2":3,"b2":"1","c2":"-1"}})"));
  EXPECT_EQ(s.m(), 3);
  EXPECT_EQ(s.params.at("a2"), Rational(3));
  EXPECT_EQ(s.params.at("c2"), Rational(-1));
  auto g = io::spec_from_json(Json::parse(R"({"flavor":"super","delta":"5/3"})"));
  EXPECT_FALSE(g.resonant());
}

TEST(SpecParse, ErrorsNameTheField) {
  auto msg = [](const std::string& text) {
    try {
      io::spec_from_json(Json::parse(text));
    } catch (const UsageError& e) {
      return std::string(e.what());
    }
    return std::string("no error");
  };
  EXPECT_EQ(msg(R"({"flavor":"classical","m":3,"params":{"a0":"1/0"}})").rfind("spec.params.a0", 0), 0u);
  EXPECT_EQ(msg(R"({"flavor":"classical","m":3,"extra":1})").rfind("spec.extra", 0), 0u);
  EXPECT_EQ(msg(R"({"flavor":"quantum","m":3})").rfind("spec.flavor", 0), 0u);
  EXPECT_EQ(msg(R"({"flavor":"classical","m":3,"window":-1})").rfind("spec.window", 0), 0u);
  EXPECT_EQ(msg(R"({"flavor":"classical","m":"x"})").rfind("spec.m", 0), 0u);
  EXPECT_EQ(msg(R"({"flavor":"classical","m":3,"delta":"3/2"})").rfind("spec", 0), 0u);
  EXPECT_EQ(msg(R"({"flavor":"super","m":2,"params":{"b1":"1"}})").rfind("spec.params.b1", 0), 0u);
  EXPECT_EQ(msg(R"({"flavor":"classical","m":3,"params":{"q":"1"}})").rfind("spec.params.q", 0), 0u);
  EXPECT_THROW(io::read_spec_file("/nonexistent/spec.json"), UsageError);
}

TEST(Cli, VerifyCocyclePhi) {
  Json j = run_json({"verify-cocycle", "--id", "Phi:k=2"}, cli::kVerified);
  EXPECT_EQ(j["verdict"], "verified");
  EXPECT_EQ(j["result"]["cocycle"], true);
  EXPECT_EQ(j["sign_convention"]["calibrated"], true);
  EXPECT_EQ(j["command"], "verify-cocycle");
}

TEST(Cli, IdNormalization) {
  Json j = run_json({"verify-cocycle", "--id", "A:lambda=0/1"}, cli::kVerified);
  EXPECT_EQ(j["input"]["id"], "A:lambda=0");
}

TEST(Cli, IntegrabilityFalsified) {
  auto path = write_spec("falsified", R"({"flavor":"classical","m":3,"params":{"a0":"1","a2":"1","b2":"1","c2":"0"}})");
  Json j = run_json({"integrability", "--spec", path}, cli::kFalsified);
  EXPECT_EQ(j["verdict"], "falsified");
  EXPECT_EQ(j["result"]["printed_conditions"][0]["value"], "2");
  EXPECT_EQ(j["result"]["printed_satisfied"], false);
}

TEST(Cli, IntegrabilityVerified) {
  auto path = write_spec("verified", R"({"flavor":"classical","m":3,"params":{"a0":"1","a2":"3","b2":"1","c2":"3"}})");
  Json j = run_json({"integrability", "--spec", path}, cli::kVerified);
  EXPECT_EQ(j["result"]["engine_satisfied"], true);
}

TEST(Cli, FlatDeform) {
  auto good = write_spec("flat", R"({"flavor":"classical","m":3,"params":{"a0":"1","a2":"3","b2":"1","c2":"3"}})");
  EXPECT_EQ(run({"flat-deform", "--spec", good}).code, cli::kVerified);
  auto bad = write_spec("notflat", R"({"flavor":"classical","m":3,"params":{"a0":"1","a2":"3","b2":"1","c2":"-1"}})");
  EXPECT_EQ(run({"flat-deform", "--spec", bad}).code, cli::kFalsified);
}

TEST(Cli, OneParameterFamily) {
  Json j = run_json({"example1", "--m", "3", "--alphas", "1,0,5"}, cli::kVerified);
  EXPECT_EQ(j["result"]["coefficients"][0]["printed_c_over_t"], "5/2");
  EXPECT_EQ(j["result"]["solved_family"]["pass"], true);
}

TEST(Cli, OmegaRestriction) {
  EXPECT_EQ(run({"lemma23", "--k", "3"}).code, cli::kVerified);
  EXPECT_EQ(run({"lemma23", "--k", "1"}).code, cli::kUsage);
}

TEST(Cli, CohomologyDim) {
  Json j = run_json({"cohomology-dim", "--algebra", "sl2", "--lambda", "-1/2", "--mu", "3/2", "--degree", "1"},
                    cli::kVerified);
  EXPECT_EQ(j["result"]["dim"], 2);
}

TEST(Cli, Obstruction) {
  Json j = run_json({"obstruction", "--flavor", "super", "--m", "2"}, cli::kVerified);
  EXPECT_EQ(j["result"]["generators"].size(), 2u);
  EXPECT_EQ(j["result"]["printed_generators_concordant"], false);
}

TEST(Cli, UsageErrors) {
  EXPECT_EQ(run({}).code, cli::kUsage);
  EXPECT_EQ(run({"bogus"}).code, cli::kUsage);
  EXPECT_EQ(run({"verify-cocycle", "--id", "B:m=3,k=1"}).code, cli::kUsage);
  EXPECT_EQ(run({"verify-cocycle", "--id", "Phi:k=2", "--bounds", "0,3"}).code, cli::kUsage);
  EXPECT_EQ(run({"verify-cocycle", "--id", "Phi:k=2", "--format", "xml"}).code, cli::kUsage);
  EXPECT_EQ(run({"cohomology-dim", "--algebra", "gl3", "--lambda", "0", "--mu", "0", "--degree", "1"}).code,
            cli::kUsage);
  EXPECT_EQ(run({"integrability", "--spec", "/nonexistent.json"}).code, cli::kUsage);
  auto bad = write_spec("badfield", R"({"flavor":"classical","m":3,"params":{"a0":"x"}})");
  Outcome r = run({"integrability", "--spec", bad});
  EXPECT_EQ(r.code, cli::kUsage);
  EXPECT_NE(r.err.find("spec.params.a0"), std::string::npos);
}

TEST(Cli, HelpExitsZero) { EXPECT_EQ(run({"--help"}).code, 0); }

TEST(Cli, Deterministic) {
  auto path = write_spec("det", R"({"flavor":"super","m":2,"params":{"a1":"1/2","a2":"3"}})");
  for (auto args : std::vector<std::vector<std::string>>{{"integrability", "--spec", path, "--format", "json"},
                                                         {"obstruction", "--flavor", "classical", "--m", "4", "--format", "json"},
                                                         {"example1", "--m", "4", "--alphas", "1,2,3,4"}}) {
    Outcome a = run(args), b = run(args);
    EXPECT_EQ(a.out, b.out);
    EXPECT_EQ(a.code, b.code);
  }
}

TEST(Cli, TextFormat) {
  Outcome r = run({"verify-cocycle", "--id", "Y:k=1"});
  EXPECT_EQ(r.code, cli::kVerified);
  EXPECT_NE(r.out.find("verdict: verified"), std::string::npos);
}
