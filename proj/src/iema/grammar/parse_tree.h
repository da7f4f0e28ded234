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

#ifndef IEMA_GRAMMAR_PARSE_TREE_H_
#define IEMA_GRAMMAR_PARSE_TREE_H_

#include <string>
#include <vector>

#include "absl/status/status.h"
#include "iema/grammar/grammar.h"
#include "json.hpp"

namespace iema::grammar {

inline constexpr SymbolId kEpsilon = -1;
inline constexpr char kEpsilonName[] = "ε";

struct ParseNode {
  // kEpsilon for the leaf under an empty alternative.
  SymbolId symbol = kEpsilon;
  // Applied rule for nonterminal nodes, -1 for leaves.
  int rule = -1;
  std::vector<int> children;
};

// Node 0 is the root. Children are listed left to right.
struct ParseTree {
  std::vector<ParseNode> nodes;

  // Terminal leaves left to right, epsilon leaves dropped.
  std::vector<SymbolId> Frontier() const;
  // Rule indices in preorder, i.e. the leftmost derivation.
  std::vector<int> Derivation() const;

  bool operator==(const ParseTree& other) const;
};

// Rooted at the start symbol, every internal node expands by its rule.
absl::Status ValidateTree(const Grammar& grammar, const ParseTree& tree);

// One node per line, indented two spaces per level. Terminal leaves end with
// " [terminal]".
std::string RenderTreeText(const Grammar& grammar, const ParseTree& tree);

// [{"id", "symbol", "kind": nonterminal|terminal|epsilon, "children",
//   "rule"?}] in preorder.
nlohmann::json RenderTreeJson(const Grammar& grammar, const ParseTree& tree);

}  // namespace iema::grammar

#endif  // IEMA_GRAMMAR_PARSE_TREE_H_
