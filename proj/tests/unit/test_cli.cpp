#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "cli/dispatch.hpp"
#include "support.hpp"

using namespace paa;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = cli::dispatch(args, out, err);
  return {code, out.str(), err.str()};
}

// Data rows of a TSV result, comments dropped.
std::vector<std::string> rows(const std::string& tsv) {
  std::vector<std::string> out;
  std::istringstream in(tsv);
  for (std::string line; std::getline(in, line);) {
    if (!line.empty() && line[0] != '#') out.push_back(line);
  }
  return out;
}

const std::string kData = PAA_DATA_DIR;

}  // namespace

TEST(Cli, OccurExample) {
  const auto r = run({"occur", "--patterns", R"({"strings":["101","111"]})", "--model", kData + "/models/uniform2.json",
                      "--n", "3", "--scheme", "overlapping", "--m", "5"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(rows(r.out), (std::vector<std::string>{"0\t0.75", "1\t0.25"}));
  EXPECT_NE(r.out.find("# scheme=overlapping"), std::string::npos);
}

TEST(Cli, SeedExample) {
  const auto r = run({"seed", "--seed", "11111111111", "--homology", "ungapped:0.95", "--n", "64", "--k", "3"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto lines = rows(r.out);
  ASSERT_EQ(lines.size(), 4u);
  EXPECT_NEAR(std::stod(lines[0].substr(2)), 4.1285e-4, 5e-9);
}

TEST(Cli, FlowlenExample) {
  const auto a = run({"flowlen", "--order", "TACG", "--flows", "12", "--text", "GTCGTATCCC"});
  const auto b = run({"flowlen", "--order", "GTCA", "--flows", "12", "--text", "GTCGTATCCC"});
  ASSERT_EQ(a.code, 0) << a.err;
  EXPECT_EQ(rows(a.out), std::vector<std::string>{"6"});
  EXPECT_EQ(rows(b.out), std::vector<std::string>{"10"});
}

TEST(Cli, MassFragmentExample) {
  const auto r = run({"mass", "--mode", "fragment", "--peptide", "DVCK"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(rows(r.out), std::vector<std::string>{"4452"});
}

TEST(Cli, WaitAndClump) {
  const auto w = run({"wait", "--patterns", R"({"strings":["11"]})", "--model", "uniform:01", "--tmax", "4", "--mode",
                      "subsequent"});
  ASSERT_EQ(w.code, 0) << w.err;
  EXPECT_EQ(rows(w.out).front(), "1\t0.5");
  const auto c = run({"clump", "--patterns", R"({"strings":["11"]})", "--model", "uniform:01", "--m", "3"});
  ASSERT_EQ(c.code, 0) << c.err;
  EXPECT_EQ(rows(c.out), (std::vector<std::string>{"1\t0.5", "2\t0.25", "3\t0.25"}));
}

TEST(Cli, AlgcostMatchesLibrary) {
  const auto r = run({"algcost", "--algorithm", "horspool", "--pattern", "AAAAA", "--model", "uniform:ACGT", "--n", "5",
                      "--format", "json"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto doc = nlohmann::json::parse(r.out);
  EXPECT_EQ(doc.at("command"), "algcost");
  EXPECT_EQ(doc.at("rows").size(), 5u);
  EXPECT_EQ(doc.at("rows")[0][0], 1);
  EXPECT_NEAR(doc.at("rows")[0][1].get<double>(), 0.75, 1e-15);
}

TEST(Cli, JsonAndTsvAgree) {
  const std::vector<std::string> base{"occur", "--patterns", R"({"prosite":"A-x-C"})", "--model", "uniform:ACGT",
                                      "--n", "9"};
  auto json_args = base;
  json_args.insert(json_args.end(), {"--format", "json"});
  const auto tsv = run(base), js = run(json_args);
  ASSERT_EQ(tsv.code, 0) << tsv.err;
  ASSERT_EQ(js.code, 0) << js.err;
  const auto doc = nlohmann::json::parse(js.out);
  const auto lines = rows(tsv.out);
  ASSERT_EQ(lines.size(), doc.at("rows").size());
  for (std::size_t i = 0; i < lines.size(); ++i) {
    const auto& row = doc.at("rows")[i];
    EXPECT_EQ(lines[i], std::to_string(row[0].get<std::int64_t>()) + "\t" + cli::format_double(row[1].get<double>()));
  }
}

TEST(Cli, OutputIsDeterministic) {
  const std::vector<std::string> args{"mass", "--mode", "lengths", "--nmax", "30"};
  EXPECT_EQ(run(args).out, run(args).out);
  const std::vector<std::string> sample{"oracle", "sample", "--model", "uniform:ACGT", "--n", "40", "--seed", "9"};
  EXPECT_EQ(run(sample).out, run(sample).out);
}

TEST(Cli, OutputFile) {
  const std::string path = ::testing::TempDir() + "paa_cli_output.tsv";
  const auto r = run({"flowlen", "--order", "TACG", "--flows", "12", "--text", "GTCGTATCCC", "--output", path});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_TRUE(r.out.empty());
  std::ifstream in(path);
  std::stringstream content;
  content << in.rdbuf();
  EXPECT_EQ(rows(content.str()), std::vector<std::string>{"6"});
  std::remove(path.c_str());
}

TEST(Cli, UsageErrors) {
  for (const auto& args : std::vector<std::vector<std::string>>{
           {},
           {"bogus"},
           {"occur", "--model", "uniform:01", "--n", "3"},
           {"occur", "--patterns", "not json", "--model", "uniform:01", "--n", "3"},
           {"algcost", "--algorithm", "kmp", "--pattern", "A", "--model", "uniform:A", "--n", "2"}}) {
    const auto r = run(args);
    EXPECT_EQ(r.code, cli::kUsage) << r.err;
    EXPECT_EQ(r.err.rfind("paa: error[usage]: ", 0), 0u) << r.err;
  }
}

TEST(Cli, ValidationErrors) {
  for (const auto& args : std::vector<std::vector<std::string>>{
           {"occur", "--patterns", R"({"strings":["12"]})", "--model", "uniform:01", "--n", "3"},
           {"occur", "--patterns", R"({"prosite":"<A-C"})", "--model", "uniform:ACGT", "--n", "3"},
           {"flowlen", "--order", "TAC", "--flows", "5", "--text", "ACGT"},
           {"flowlen", "--flows", "5"},
           {"mass", "--mode", "fragment"},
           {"occur", "--patterns", R"({"strings":["1"]})", "--model", R"({"type":"iid","alphabet":"01","probabilities":[0.5]})",
            "--n", "3"}}) {
    const auto r = run(args);
    EXPECT_EQ(r.code, cli::kValidation) << r.err;
    EXPECT_EQ(r.err.rfind("paa: error[validation]: ", 0), 0u) << r.err;
  }
}

TEST(Cli, ResourceErrors) {
  setenv("PAA_MAX_STATES", "100", 1);
  const auto r = run({"algcost", "--algorithm", "horspool", "--pattern", "ACAGC", "--model", "uniform:ACGT", "--n", "8"});
  unsetenv("PAA_MAX_STATES");
  EXPECT_EQ(r.code, cli::kResource);
  EXPECT_EQ(r.err.rfind("paa: error[resource]: ", 0), 0u) << r.err;
}

TEST(Cli, OracleReports) {
  const auto occ = run({"oracle", "occur", "--patterns", R"({"strings":["101","111"]})", "--model", "uniform:01",
                        "--n", "8"});
  ASSERT_EQ(occ.code, 0) << occ.err;
  EXPECT_TRUE(nlohmann::json::parse(occ.out).at("passed").get<bool>());
  const auto clump = run({"oracle", "clump", "--patterns", R"({"strings":["11"]})", "--model", "uniform:01", "--m",
                          "10", "--samples", "20000", "--seed", "3"});
  ASSERT_EQ(clump.code, 0) << clump.err;
}

TEST(Cli, ModelJson) {
  const auto m = cli::model_from_json(
      nlohmann::json::parse(R"({"type":"markov","alphabet":"01","order":1,
                                "conditionals":{"":[0.3,0.7],"0":[0.6,0.4],"1":[0.2,0.8]}})"));
  const auto ref = paa::testing::binary_markov();
  for (const auto& s : paa::testing::all_strings("01", 5)) {
    EXPECT_NEAR(sequence_probability(m, s), sequence_probability(ref, s), 1e-15);
  }
  EXPECT_THROW(cli::model_from_json(nlohmann::json::parse(R"({"type":"gmm","alphabet":"01"})")), ArgumentError);
  EXPECT_EQ(cli::load_model("uniform:ACGT").alphabet(), "ACGT");
  EXPECT_THROW(cli::load_model("uniform:"), ArgumentError);
}

TEST(Cli, HmmJsonRoundTrip) {
  const auto hmm = to_hmm(paa::testing::binary_markov());
  const auto back = cli::hmm_from_json(cli::hmm_to_json(hmm));
  EXPECT_EQ(back.states, hmm.states);
  EXPECT_EQ(back.emissions, hmm.emissions);
  const auto a = from_hmm(hmm), b = from_hmm(back);
  for (const auto& s : paa::testing::all_strings("01", 6)) {
    EXPECT_NEAR(sequence_probability(a, s), sequence_probability(b, s), 1e-15);
  }
}

TEST(Cli, PatternJson) {
  const auto p = cli::pattern_from_json(nlohmann::json::parse(R"({"strings":["ab"],"scheme":"nonoverlapping","M":4})"));
  EXPECT_EQ(p.scheme, CountingScheme::nonoverlapping);
  EXPECT_EQ(p.bound, 4);
  EXPECT_THROW(cli::pattern_from_json(nlohmann::json::parse(R"({"strings":["a"],"prosite":"A"})")), ArgumentError);
  EXPECT_THROW(cli::pattern_from_json(nlohmann::json::parse("[1]")), ArgumentError);
}
