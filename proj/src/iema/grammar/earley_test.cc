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

#include "iema/grammar/earley.h"

#include <chrono>
#include <map>
#include <set>

#include "gmock/gmock.h"
#include "gtest/gtest.h"
#include "iema/grammar/iema_grammar.h"
#include "iema/grammar/parse_tree.h"
#include "iema/testing/grammar_oracle.h"

namespace iema::grammar {
namespace {

using ::testing::ElementsAre;
using ::testing::HasSubstr;
using ::testing::UnorderedElementsAre;
using Sentence = std::vector<SymbolId>;

Sentence Encode(const Grammar& g, std::vector<std::string> names) {
  auto encoded = g.EncodeSentence(names);
  EXPECT_TRUE(encoded.ok()) << encoded.status();
  return *encoded;
}

std::string RuleText(const Grammar& g, int rule) {
  std::string text = g.name(g.rules()[rule].lhs) + " ->";
  for (SymbolId s : g.rules()[rule].rhs) text += " " + g.name(s);
  if (g.rules()[rule].rhs.empty()) text += " ε";
  return text;
}

std::vector<std::string> DerivationText(const Grammar& g, const ParseTree& t) {
  std::vector<std::string> out;
  for (int rule : t.Derivation()) out.push_back(RuleText(g, rule));
  return out;
}

const std::vector<std::string> kDialogue = {
    "SHAP_Attribution",        "Select_Variable",
    "Ceteris_Paribus",         "Histogram",
    "Partial_Dependence",      "Scatter_Plot",
    "Permutational_Importance"};

TEST(ParseTest, DialogueMatchesHandDerivation) {
  const Grammar& g = IemaGrammar();
  const auto begin = std::chrono::steady_clock::now();
  auto result = Accepts(g, kDialogue);
  const double seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - begin)
          .count();
  ASSERT_TRUE(result.ok());
  ASSERT_TRUE(result->accepted);
  EXPECT_LT(seconds, 1.0);
  EXPECT_EQ(result->derivation_count, 1u);
  EXPECT_THAT(
      DerivationText(g, *result->tree),
      ElementsAre("explanation -> instance_explanation",
                  "instance_explanation -> instance_parts instance_parts_",
                  "instance_parts -> SHAP_Attribution",
                  "instance_parts_ -> Select_Variable instance_profile "
                  "instance_profile_ instance_parts_",
                  "instance_profile -> Ceteris_Paribus",
                  "instance_profile_ -> data_distribution instance_profile_",
                  "data_distribution -> Histogram",
                  "instance_profile_ -> model_profile model_profile_ "
                  "instance_profile_",
                  "model_profile -> Partial_Dependence",
                  "model_profile_ -> data_profile data_profile_ model_profile_",
                  "data_profile -> Scatter_Plot", "data_profile_ -> ε",
                  "model_profile_ -> ε", "instance_profile_ -> ε",
                  "instance_parts_ -> model_parts model_parts_ instance_parts_",
                  "model_parts -> Permutational_Importance",
                  "model_parts_ -> ε", "instance_parts_ -> ε"));
  EXPECT_EQ(g.DecodeSentence(result->tree->Frontier()), kDialogue);
  EXPECT_TRUE(ValidateTree(g, *result->tree).ok());
}

TEST(ParseTest, EmptySentence) {
  const Grammar& g = IemaGrammar();
  const ParseResult result = Parse(g, Sentence{});
  ASSERT_TRUE(result.accepted);
  EXPECT_EQ(RenderTreeText(g, *result.tree),
            "explanation\n  data_explanation\n    ε\n");
  const nlohmann::json nodes = RenderTreeJson(g, *result.tree);
  ASSERT_EQ(nodes.size(), 3u);
  EXPECT_EQ(nodes[2]["kind"], "epsilon");
  EXPECT_EQ(nodes[0]["children"], nlohmann::json::array({1}));
}

TEST(ParseTest, Rejections) {
  const Grammar& g = IemaGrammar();
  ParseResult result = Parse(g, Encode(g, {"Ceteris_Paribus"}));
  EXPECT_FALSE(result.accepted);
  EXPECT_EQ(result.valid_prefix_length, 0u);
  EXPECT_FALSE(result.tree.has_value());
  result = Parse(g, Encode(g, {"SHAP_Attribution", "Select_Variable"}));
  EXPECT_FALSE(result.accepted);
  EXPECT_EQ(result.valid_prefix_length, 2u);
  result = Parse(g, Encode(g, {"SHAP_Attribution", "Histogram", "Boxplot"}));
  EXPECT_EQ(result.valid_prefix_length, 1u);
  std::vector<std::string> unknown = {"SHAP_Attribution", "Waterfall"};
  EXPECT_THAT(Accepts(g, unknown).status().ToString(), HasSubstr("Waterfall"));
}

TEST(ParseTest, ExhaustiveUpToLengthFour) {
  const Grammar& g = IemaGrammar();
  const auto begin = std::chrono::steady_clock::now();
  const auto language = testing::BruteForceLanguage(g, 4);
  const auto viable_source = testing::BruteForceLanguage(g, 7);
  std::set<Sentence> viable;
  for (const Sentence& s : viable_source) {
    for (size_t k = 0; k <= s.size(); ++k) {
      viable.insert(Sentence(s.begin(), s.begin() + k));
    }
  }
  const auto candidates = testing::AllCandidates(g, 4);
  ASSERT_EQ(candidates.size(), 1u + 18 + 324 + 5832 + 104976);
  size_t accepted = 0;
  for (const Sentence& candidate : candidates) {
    const ParseResult result = Parse(g, candidate);
    ASSERT_EQ(result.accepted, language.count(candidate) == 1)
        << ::testing::PrintToString(g.DecodeSentence(candidate));
    size_t longest = 0;
    for (size_t k = 0; k <= candidate.size(); ++k) {
      if (viable.count(Sentence(candidate.begin(), candidate.begin() + k))) {
        longest = k;
      } else {
        break;
      }
    }
    ASSERT_EQ(result.valid_prefix_length, longest)
        << ::testing::PrintToString(g.DecodeSentence(candidate));
    if (result.accepted) {
      ++accepted;
      ASSERT_EQ(result.tree->Frontier(), candidate);
      ASSERT_TRUE(ValidateTree(g, *result.tree).ok());
    }
  }
  EXPECT_EQ(accepted, language.size());
  std::set<std::string> singles;
  for (const Sentence& s : language) {
    if (s.size() == 1) singles.insert(g.name(s[0]));
  }
  EXPECT_THAT(singles, UnorderedElementsAre(
                           "SHAP_Attribution", "BD_Attribution",
                           "LIME_Attribution", "Permutational_Importance",
                           "LOCO_Importance", "SHAP_Importance",
                           "Pairwise_Correlation", "Graphical_Networks"));
  EXPECT_LT(
      std::chrono::duration<double>(std::chrono::steady_clock::now() - begin)
          .count(),
      60.0);
}

TEST(ParseTest, PrefixesOfSentencesAreValid) {
  const Grammar& g = IemaGrammar();
  for (const Sentence& s : testing::BruteForceLanguage(g, 6)) {
    for (size_t k = 0; k <= s.size(); ++k) {
      ASSERT_TRUE(
          ComputeNextSteps(g, std::span<const SymbolId>(s.data(), k)).ok());
    }
  }
}

TEST(NextStepsTest, Examples) {
  const Grammar& g = IemaGrammar();
  auto names = [&](const NextSteps& steps) {
    return g.DecodeSentence(steps.terminals);
  };
  auto steps = ComputeNextSteps(g, Sentence{});
  ASSERT_TRUE(steps.ok());
  EXPECT_TRUE(steps->can_end);
  EXPECT_THAT(names(*steps), UnorderedElementsAre(
                                 "SHAP_Attribution", "BD_Attribution",
                                 "LIME_Attribution", "Permutational_Importance",
                                 "LOCO_Importance", "SHAP_Importance",
                                 "Pairwise_Correlation", "Graphical_Networks"));
  steps =
      ComputeNextSteps(g, Encode(g, {"SHAP_Attribution", "Select_Variable"}));
  ASSERT_TRUE(steps.ok());
  EXPECT_FALSE(steps->can_end);
  EXPECT_THAT(names(*steps), ElementsAre("Ceteris_Paribus"));
  steps = ComputeNextSteps(g, Encode(g, {"SHAP_Attribution"}));
  ASSERT_TRUE(steps.ok());
  EXPECT_TRUE(steps->can_end);
  EXPECT_THAT(names(*steps), ::testing::IsSupersetOf(
                                 {"Select_Variable", "Permutational_Importance",
                                  "LOCO_Importance", "SHAP_Importance"}));
  auto invalid = ComputeNextSteps(g, Encode(g, {"Histogram"}));
  EXPECT_EQ(invalid.status().code(), absl::StatusCode::kFailedPrecondition);
}

// Continuations of every valid prefix of length <= 3, from sentences of
// length <= 7. Every valid prefix of length <= 4 is completed within that
// bound, which the test confirms by finding each of them.
TEST(NextStepsTest, MatchesBruteForceContinuations) {
  const Grammar& g = IemaGrammar();
  const auto language = testing::BruteForceLanguage(g, 7);
  std::map<Sentence, std::set<SymbolId>> continuations;
  std::set<Sentence> ends;
  for (const Sentence& s : language) {
    ends.insert(s);
    for (size_t k = 0; k <= std::min<size_t>(3, s.size()); ++k) {
      auto& next = continuations[Sentence(s.begin(), s.begin() + k)];
      if (k < s.size()) next.insert(s[k]);
    }
  }
  for (const Sentence& candidate : testing::AllCandidates(g, 3)) {
    auto steps = ComputeNextSteps(g, candidate);
    const auto it = continuations.find(candidate);
    ASSERT_EQ(steps.ok(), it != continuations.end())
        << ::testing::PrintToString(g.DecodeSentence(candidate));
    if (!steps.ok()) continue;
    EXPECT_EQ(
        std::set<SymbolId>(steps->terminals.begin(), steps->terminals.end()),
        it->second)
        << ::testing::PrintToString(g.DecodeSentence(candidate));
    EXPECT_EQ(steps->can_end, ends.count(candidate) == 1);
  }
}

TEST(AmbiguityTest, HistogramCanAttachTwice) {
  const Grammar& g = IemaGrammar();
  const Sentence s =
      Encode(g, {"SHAP_Attribution", "Select_Variable", "Ceteris_Paribus",
                 "Partial_Dependence", "Histogram"});
  const ParseResult result = Parse(g, s);
  ASSERT_TRUE(result.accepted);
  EXPECT_EQ(result.derivation_count, 2u);
  const auto trees = AllParseTrees(g, s, 10);
  ASSERT_EQ(trees.size(), 2u);
  EXPECT_FALSE(trees[0] == trees[1]);
  EXPECT_NE(RenderTreeText(g, trees[0]), RenderTreeText(g, trees[1]));
  EXPECT_NE(RenderTreeJson(g, trees[0]), RenderTreeJson(g, trees[1]));
  EXPECT_EQ(*result.tree, std::min(trees[0], trees[1], [](auto& a, auto& b) {
    return a.Derivation() < b.Derivation();
  }));
}

// The canonical tree is the smallest derivation and the count is exact, on
// every sentence up to length 5.
TEST(AmbiguityTest, CanonicalTreeAndCountAgainstEnumeration) {
  const Grammar& g = IemaGrammar();
  for (const Sentence& s : testing::BruteForceLanguage(g, 5)) {
    const ParseResult result = Parse(g, s);
    ASSERT_TRUE(result.accepted);
    const auto trees = AllParseTrees(g, s, 1000);
    ASSERT_EQ(result.derivation_count, trees.size());
    std::set<std::vector<int>> derivations;
    std::set<std::string> renders;
    for (const auto& tree : trees) {
      ASSERT_TRUE(ValidateTree(g, tree).ok());
      ASSERT_EQ(tree.Frontier(), s);
      derivations.insert(tree.Derivation());
      renders.insert(RenderTreeText(g, tree));
    }
    ASSERT_EQ(derivations.size(), trees.size());
    ASSERT_EQ(renders.size(), trees.size());
    ASSERT_EQ(result.tree->Derivation(), *derivations.begin());
  }
}

TEST(GenericGrammarTest, CatalanAmbiguity) {
  auto g = Grammar::Create({"e"}, {"a", "+"}, "e",
                           {{"e", {"e", "+", "e"}}, {"e", {"a"}}});
  ASSERT_TRUE(g.ok()) << g.status();
  Sentence s = {1};
  const std::vector<uint64_t> catalan = {1, 1, 2, 5, 14, 42, 132};
  for (size_t operands = 1; operands <= catalan.size(); ++operands) {
    const ParseResult result = Parse(*g, s);
    ASSERT_TRUE(result.accepted);
    EXPECT_EQ(result.derivation_count, catalan[operands - 1]);
    EXPECT_EQ(result.tree->Frontier(), s);
    s.push_back(2);
    s.push_back(1);
  }
  EXPECT_FALSE(Parse(*g, Sentence{1, 2}).accepted);
  EXPECT_EQ(Parse(*g, Sentence{1, 2}).valid_prefix_length, 2u);
  EXPECT_EQ(Parse(*g, Sentence{2}).valid_prefix_length, 0u);
}

TEST(GenericGrammarTest, NullableChains) {
  // s -> a b c, every part optional.
  auto g = Grammar::Create({"s", "a", "b", "c"}, {"x", "y", "z"}, "s",
                           {{"s", {"a", "b", "c"}},
                            {"a", {"x"}},
                            {"a", {}},
                            {"b", {"y"}},
                            {"b", {}},
                            {"c", {"z"}},
                            {"c", {}}});
  ASSERT_TRUE(g.ok());
  for (const Sentence& s :
       {Sentence{}, Sentence{4}, Sentence{5}, Sentence{4, 6}, Sentence{5, 6},
        Sentence{4, 5, 6}}) {
    const ParseResult result = Parse(*g, s);
    EXPECT_TRUE(result.accepted);
    EXPECT_EQ(result.derivation_count, 1u);
  }
  EXPECT_FALSE(Parse(*g, Sentence{6, 4}).accepted);
  EXPECT_EQ(Parse(*g, Sentence{4, 2}).valid_prefix_length, 1u);
  EXPECT_EQ(Parse(*g, Sentence{4, 99}).valid_prefix_length, 1u);
  auto steps = ComputeNextSteps(*g, Sentence{5});
  ASSERT_TRUE(steps.ok());
  EXPECT_TRUE(steps->can_end);
  EXPECT_THAT(steps->terminals, ElementsAre(6));
}

TEST(ParseTreeTest, ValidateRejectsMalformed) {
  const Grammar& g = IemaGrammar();
  ParseTree tree = *Parse(g, Sentence{}).tree;
  EXPECT_TRUE(ValidateTree(g, tree).ok());
  ParseTree wrong_rule = tree;
  wrong_rule.nodes[1].rule = 3;
  EXPECT_FALSE(ValidateTree(g, wrong_rule).ok());
  ParseTree missing_leaf = tree;
  missing_leaf.nodes[1].children.clear();
  EXPECT_FALSE(ValidateTree(g, missing_leaf).ok());
  EXPECT_FALSE(ValidateTree(g, ParseTree{}).ok());
}

}  // namespace
}  // namespace iema::grammar
