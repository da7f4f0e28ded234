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

#include "iema/grammar/generator.h"

#include "fmt/format.h"
#include "iema/common/random.h"

namespace iema::grammar {

absl::StatusOr<GeneratedSentence> Generate(const Grammar& grammar,
                                           size_t max_expansions,
                                           uint64_t seed) {
  if (max_expansions < 1) {
    return absl::InvalidArgumentError(fmt::format(
        "max_expansions must be at least 1, got {}", max_expansions));
  }
  Rng rng(seed);
  GeneratedSentence out;
  ParseTree& tree = out.tree;
  size_t expansions = 0;
  auto choose = [&](SymbolId symbol) -> size_t {
    const std::vector<size_t>& rules = grammar.RulesFor(symbol);
    if (expansions < max_expansions) {
      return rules[rng.UniformInt(rules.size())];
    }
    for (const size_t r : rules) {
      if (grammar.rules()[r].rhs.empty()) return r;
    }
    size_t fastest = SIZE_MAX;
    for (const size_t r : rules) {
      fastest = std::min(fastest, grammar.RuleMinExpansions(r));
    }
    std::vector<size_t> candidates;
    for (const size_t r : rules) {
      if (grammar.RuleMinExpansions(r) == fastest) candidates.push_back(r);
    }
    return candidates[rng.UniformInt(candidates.size())];
  };
  auto expand = [&](auto&& self, SymbolId symbol) -> int {
    const int id = static_cast<int>(tree.nodes.size());
    tree.nodes.push_back({symbol, -1, {}});
    if (symbol == kEpsilon) return id;
    if (grammar.IsTerminal(symbol)) {
      out.sentence.push_back(symbol);
      return id;
    }
    const size_t rule = choose(symbol);
    ++expansions;
    tree.nodes[id].rule = static_cast<int>(rule);
    const std::vector<SymbolId>& rhs = grammar.rules()[rule].rhs;
    if (rhs.empty()) {
      const int leaf = self(self, kEpsilon);
      tree.nodes[id].children.push_back(leaf);
    }
    for (const SymbolId child : rhs) {
      const int built = self(self, child);
      tree.nodes[id].children.push_back(built);
    }
    return id;
  };
  expand(expand, grammar.start());
  return out;
}

}  // namespace iema::grammar
