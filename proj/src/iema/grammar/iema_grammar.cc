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

#include "iema/grammar/iema_grammar.h"

#include <cstdlib>
#include <iostream>

namespace iema::grammar {
namespace {

Grammar Build() {
  std::vector<std::string> nonterminals = {
      "explanation",       "instance_explanation", "instance_parts_",
      "instance_profile_", "model_explanation",    "model_parts_",
      "model_profile_",    "data_explanation",     "data_parts_",
      "data_profile_",     "data_parts",           "data_profile",
      "data_distribution", "model_parts",          "model_profile",
      "instance_parts",    "instance_profile"};
  using namespace terminal;
  std::vector<std::string> terminals = {kPairwiseCorrelation,
                                        kGraphicalNetworks,
                                        kScatterPlot,
                                        kMosaicPlot,
                                        kHistogram,
                                        kBoxplot,
                                        kBarplot,
                                        kPermutationalImportance,
                                        kLocoImportance,
                                        kShapImportance,
                                        kPartialDependence,
                                        kAccumulatedLocal,
                                        kShapDependence,
                                        kShapAttribution,
                                        kBdAttribution,
                                        kLimeAttribution,
                                        kCeterisParibus,
                                        kSelectVariable};
  const std::vector<RuleSpec> rules = {
      {"explanation", {"instance_explanation"}},
      {"explanation", {"model_explanation"}},
      {"explanation", {"data_explanation"}},
      {"instance_explanation", {"instance_parts", "instance_parts_"}},
      {"instance_parts_",
       {kSelectVariable, "instance_profile", "instance_profile_",
        "instance_parts_"}},
      {"instance_parts_", {"model_parts", "model_parts_", "instance_parts_"}},
      {"instance_parts_", {}},
      {"instance_profile_", {"data_distribution", "instance_profile_"}},
      {"instance_profile_",
       {"model_profile", "model_profile_", "instance_profile_"}},
      {"instance_profile_", {}},
      {"model_explanation", {"model_parts", "model_parts_"}},
      {"model_parts_",
       {kSelectVariable, "model_profile", "model_profile_", "model_parts_"}},
      {"model_parts_", {"data_parts", "data_parts_", "model_parts_"}},
      {"model_parts_", {}},
      {"model_profile_", {"data_profile", "data_profile_", "model_profile_"}},
      {"model_profile_", {"data_distribution", "model_profile_"}},
      {"model_profile_", {}},
      {"data_explanation", {"data_parts", "data_parts_"}},
      {"data_explanation", {}},
      {"data_parts_", {"data_profile", "data_profile_"}},
      {"data_parts_", {}},
      {"data_profile_", {"data_profile", "data_parts_"}},
      {"data_profile_", {"data_distribution"}},
      {"data_profile_", {}},
      {"data_parts", {kPairwiseCorrelation}},
      {"data_parts", {kGraphicalNetworks}},
      {"data_profile", {kScatterPlot}},
      {"data_profile", {kMosaicPlot}},
      {"data_distribution", {kHistogram}},
      {"data_distribution", {kBoxplot}},
      {"data_distribution", {kBarplot}},
      {"model_parts", {kPermutationalImportance}},
      {"model_parts", {kLocoImportance}},
      {"model_parts", {kShapImportance}},
      {"model_profile", {kPartialDependence}},
      {"model_profile", {kAccumulatedLocal}},
      {"model_profile", {kShapDependence}},
      {"instance_parts", {kShapAttribution}},
      {"instance_parts", {kBdAttribution}},
      {"instance_parts", {kLimeAttribution}},
      {"instance_profile", {kCeterisParibus}},
  };
  auto grammar = Grammar::Create(std::move(nonterminals), std::move(terminals),
                                 "explanation", rules);
  if (!grammar.ok()) {
    std::cerr << "built-in grammar is invalid: " << grammar.status() << "\n";
    std::abort();
  }
  return *std::move(grammar);
}

}  // namespace

const Grammar& IemaGrammar() {
  static const Grammar* const grammar = new Grammar(Build());
  return *grammar;
}

std::optional<std::string> PreterminalOf(const Grammar& grammar,
                                         std::string_view terminal) {
  const auto id = grammar.Find(terminal);
  if (!id.has_value() || !grammar.IsTerminal(*id)) return std::nullopt;
  for (const Rule& rule : grammar.rules()) {
    if (rule.rhs.size() == 1 && rule.rhs[0] == *id) {
      return grammar.name(rule.lhs);
    }
  }
  return std::nullopt;
}

}  // namespace iema::grammar
