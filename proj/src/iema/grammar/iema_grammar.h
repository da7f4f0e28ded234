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

#ifndef IEMA_GRAMMAR_IEMA_GRAMMAR_H_
#define IEMA_GRAMMAR_IEMA_GRAMMAR_H_

#include <optional>
#include <string>
#include <string_view>

#include "iema/grammar/grammar.h"

namespace iema::grammar {

// Terminal names of the explanation dialogue grammar.
namespace terminal {
inline constexpr char kPairwiseCorrelation[] = "Pairwise_Correlation";
inline constexpr char kGraphicalNetworks[] = "Graphical_Networks";
inline constexpr char kScatterPlot[] = "Scatter_Plot";
inline constexpr char kMosaicPlot[] = "Mosaic_Plot";
inline constexpr char kHistogram[] = "Histogram";
inline constexpr char kBoxplot[] = "Boxplot";
inline constexpr char kBarplot[] = "Barplot";
inline constexpr char kPermutationalImportance[] = "Permutational_Importance";
inline constexpr char kLocoImportance[] = "LOCO_Importance";
inline constexpr char kShapImportance[] = "SHAP_Importance";
inline constexpr char kPartialDependence[] = "Partial_Dependence";
inline constexpr char kAccumulatedLocal[] = "Accumulated_Local";
inline constexpr char kShapDependence[] = "SHAP_Dependence";
inline constexpr char kShapAttribution[] = "SHAP_Attribution";
inline constexpr char kBdAttribution[] = "BD_Attribution";
inline constexpr char kLimeAttribution[] = "LIME_Attribution";
inline constexpr char kCeterisParibus[] = "Ceteris_Paribus";
inline constexpr char kSelectVariable[] = "Select_Variable";
}  // namespace terminal

// The built-in grammar, start symbol "explanation". Immutable and shared.
const Grammar& IemaGrammar();

// The nonterminal with a single-terminal rule for "terminal" (for instance
// "data_distribution" for "Histogram"). Unset for Select_Variable.
std::optional<std::string> PreterminalOf(const Grammar& grammar,
                                         std::string_view terminal);

}  // namespace iema::grammar

#endif  // IEMA_GRAMMAR_IEMA_GRAMMAR_H_
