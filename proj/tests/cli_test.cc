/*
 * Copyright 2026 The IEMA Authors.
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "iema/interface/cli.h"

#include <cstdlib>
#include <filesystem>
#include <sstream>

#include "fmt/format.h"
#include "fmt/ranges.h"
#include "gmock/gmock.h"
#include "gtest/gtest.h"
#include "iema/common/file.h"
#include "iema/grammar/earley.h"
#include "iema/grammar/generator.h"
#include "iema/grammar/grammar.h"
#include "iema/grammar/iema_grammar.h"
#include "iema/interface/html_export.h"
#include "iema/interface/service.h"
#include "iema/session/bundle.h"
#include "iema/testing/grammar_oracle.h"
#include "iema/testing/players.h"

namespace iema::interface {
namespace {

using nlohmann::json;
using ::testing::HasSubstr;
using ::testing::StartsWith;

struct CliRun {
  int code = 0;
  std::string out;
  std::string err;
};

CliRun Cli(std::vector<std::string> args, const std::string& input = {}) {
  std::istringstream in(input);
  std::ostringstream out, err;
  CliRun run;
  run.code = RunCli(args, in, out, err);
  run.out = out.str();
  run.err = err.str();
  return run;
}

std::string TempPath(const std::string& name) {
  const auto dir = std::filesystem::temp_directory_path() /
                   ("iema_cli_test_" + std::to_string(::getpid()));
  std::filesystem::create_directories(dir);
  return (dir / name).string();
}

std::vector<std::string> ExplainArgs(const std::string& out) {
  return {"explain",
          "--data",
          testing::DataPath("players.csv"),
          "--model",
          testing::DataPath("players_gbm.json"),
          "--script",
          testing::DataPath("dialogue.json"),
          "--out",
          out};
}

TEST(CliGrammarTest, AcceptPrintsTree) {
  const CliRun run = Cli({"grammar", "accept", "SHAP_Attribution",
                          "Select_Variable", "Ceteris_Paribus"});
  EXPECT_EQ(run.code, 0) << run.err;
  EXPECT_THAT(run.out, StartsWith("explanation\n  instance_explanation\n"));
  EXPECT_THAT(run.out, HasSubstr("Ceteris_Paribus [terminal]"));
}

TEST(CliGrammarTest, RejectionReportsPrefix) {
  CliRun run = Cli({"grammar", "accept", "Ceteris_Paribus"});
  EXPECT_EQ(run.code, 1);
  EXPECT_THAT(run.err, HasSubstr("longest valid prefix: 0"));
  run = Cli({"grammar", "accepts", "SHAP_Attribution", "Histogram", "Boxplot"});
  EXPECT_EQ(run.code, 1);
  EXPECT_THAT(run.err, HasSubstr("longest valid prefix: 1"));
  run = Cli({"grammar", "accept", "Nonsense"});
  EXPECT_EQ(run.code, 2);
  EXPECT_THAT(run.err, HasSubstr("Nonsense"));
}

TEST(CliGrammarTest, NextGenerateTreeExport) {
  CliRun run = Cli({"grammar", "next"});
  EXPECT_EQ(run.code, 0);
  EXPECT_EQ(std::count(run.out.begin(), run.out.end(), '\n'), 9);
  EXPECT_THAT(run.out, HasSubstr("<end>"));

  const CliRun first =
      Cli({"grammar", "generate", "--seed", "7", "--max", "20"});
  const CliRun second =
      Cli({"grammar", "generate", "--seed", "7", "--max", "20"});
  EXPECT_EQ(first.code, 0);
  EXPECT_EQ(first.out, second.out);

  run = Cli({"grammar", "tree", "SHAP_Attribution", "Select_Variable",
             "Ceteris_Paribus", "Partial_Dependence", "Histogram"});
  ASSERT_EQ(run.code, 0) << run.err;
  const json trees = json::parse(run.out);
  EXPECT_EQ(trees["derivation_count"], 2);
  EXPECT_EQ(trees["trees"].size(), 2u);

  run = Cli({"grammar", "export"});
  ASSERT_EQ(run.code, 0);
  EXPECT_EQ(json::parse(run.out), grammar::IemaGrammar().ToJson());
}

// The CLI and a recognizer rebuilt from the service's /grammar document
// agree on every sentence of length <= 2, and on generated ones.
TEST(CliGrammarTest, AgreesWithServedGrammar) {
  Service service(testing::Players(), testing::PlayersModel("linear"), {});
  const HttpResponse response = service.Handle({"GET", "/grammar", ""});
  ASSERT_EQ(response.status, 200);
  auto served = grammar::Grammar::FromJson(json::parse(response.body));
  ASSERT_TRUE(served.ok()) << served.status();

  std::vector<std::vector<grammar::SymbolId>> sentences =
      testing::AllCandidates(*served, 2);
  for (uint64_t seed = 0; seed < 30; ++seed) {
    auto generated = grammar::Generate(*served, 30, seed);
    ASSERT_TRUE(generated.ok());
    sentences.push_back(generated->sentence);
  }
  for (const auto& sentence : sentences) {
    std::vector<std::string> args = {"grammar", "accept"};
    for (const auto& name : served->DecodeSentence(sentence)) {
      args.push_back(name);
    }
    const bool accepted = grammar::Parse(*served, sentence).accepted;
    EXPECT_EQ(Cli(args).code, accepted ? 0 : 1)
        << fmt::format("{}", fmt::join(args, " "));
  }
}

TEST(CliExplainTest, WritesReproducibleBundleAndHtml) {
  const std::string bundle = TempPath("bundle.json");
  const std::string html = TempPath("bundle.html");
  std::vector<std::string> args = ExplainArgs(bundle);
  args.insert(args.end(), {"--html", html, "--seed", "3"});
  CliRun run = Cli(args);
  ASSERT_EQ(run.code, 0) << run.err;
  auto first = ReadFile(bundle);
  auto page = ReadFile(html);
  ASSERT_TRUE(first.ok() && page.ok());
  const json parsed = json::parse(*first);
  EXPECT_TRUE(session::ValidateBundle(parsed).ok());
  EXPECT_EQ(parsed["seed"], 3);
  EXPECT_EQ(parsed["history"].size(), 7u);
  auto embedded = ExtractBundle(*page);
  ASSERT_TRUE(embedded.ok());
  EXPECT_EQ(*embedded + "\n", *first);

  ASSERT_EQ(Cli(args).code, 0);
  EXPECT_EQ(*ReadFile(bundle), *first);
  EXPECT_EQ(*ReadFile(html), *page);

  // "export" reproduces the HTML from the bundle file.
  const std::string again = TempPath("again.html");
  run = Cli({"export", "--bundle", bundle, "--out", again});
  ASSERT_EQ(run.code, 0) << run.err;
  EXPECT_EQ(*ReadFile(again), *page);
}

TEST(CliExplainTest, SeedPrecedence) {
  const std::string path = TempPath("seeded.json");
  auto seed_of = [&](std::vector<std::string> extra) {
    std::vector<std::string> args = ExplainArgs(path);
    args.insert(args.end(), extra.begin(), extra.end());
    const CliRun run = Cli(args);
    EXPECT_EQ(run.code, 0) << run.err;
    return json::parse(*ReadFile(path))["seed"].get<uint64_t>();
  };
  ::unsetenv("IEMA_SEED");
  // The sidecar config players.json carries seed 20.
  EXPECT_EQ(seed_of({}), 20u);
  ::setenv("IEMA_SEED", "99", 1);
  EXPECT_EQ(seed_of({}), 99u);
  EXPECT_EQ(seed_of({"--seed", "5"}), 5u);
  ::setenv("IEMA_SEED", "x", 1);
  std::vector<std::string> args = ExplainArgs(path);
  EXPECT_EQ(Cli(args).code, 2);
  ::unsetenv("IEMA_SEED");
}

TEST(CliExplainTest, FailingStepIsNamed) {
  const std::string script = TempPath("bad_script.json");
  ASSERT_TRUE(WriteFile(script, R"([{"symbol": "Ceteris_Paribus",
                                     "instance": {"row": 0}}])")
                  .ok());
  std::vector<std::string> args = ExplainArgs(TempPath("unused.json"));
  args[6] = script;
  const CliRun run = Cli(args);
  EXPECT_EQ(run.code, 1);
  EXPECT_THAT(run.err, HasSubstr("Ceteris_Paribus"));

  args = ExplainArgs(TempPath("unused.json"));
  args[2] = "/no/such/file.csv";
  EXPECT_EQ(Cli(args).code, 2);
}

TEST(CliSessionTest, InteractiveLoop) {
  const CliRun run = Cli(
      {"session", "--data", testing::DataPath("players.csv"), "--model",
       testing::DataPath("players_linear.json")},
      "Ceteris_Paribus row=0\n"
      "SHAP_Attribution row=0\n"
      "Select_Variable variable=age\n"
      "{\"symbol\": \"Ceteris_Paribus\", \"options\": {\"grid_size\": 11}}\n"
      "tree\n"
      "undo\n"
      "next\n"
      "bundle\n"
      "quit\n");
  EXPECT_EQ(run.code, 0);
  EXPECT_THAT(run.err, HasSubstr("Ceteris_Paribus"));
  EXPECT_THAT(run.out, HasSubstr("[1] SHAP_Attribution (attribution)"));
  EXPECT_THAT(run.out, HasSubstr("[3] Ceteris_Paribus (profile)"));
  EXPECT_THAT(run.out, HasSubstr("Select_Variable [terminal]"));
  // After the undo the bundle holds the first two steps.
  const size_t start = run.out.find("{\"");
  ASSERT_NE(start, std::string::npos);
  const size_t end = run.out.find('\n', start);
  const json bundle = json::parse(run.out.substr(start, end - start));
  EXPECT_EQ(bundle["history"].size(), 2u);
}

TEST(CliTest, UsageErrors) {
  EXPECT_EQ(Cli({}).code, 2);
  EXPECT_EQ(Cli({"frobnicate"}).code, 2);
  EXPECT_EQ(Cli({"explain", "--data", "x.csv"}).code, 2);
  EXPECT_EQ(Cli({"--help"}).code, 0);
}

}  // namespace
}  // namespace iema::interface
