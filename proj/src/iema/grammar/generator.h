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

#ifndef IEMA_GRAMMAR_GENERATOR_H_
#define IEMA_GRAMMAR_GENERATOR_H_

#include <cstdint>
#include <vector>

#include "absl/status/statusor.h"
#include "iema/grammar/grammar.h"
#include "iema/grammar/parse_tree.h"

namespace iema::grammar {

struct GeneratedSentence {
  std::vector<SymbolId> sentence;
  ParseTree tree;
};

// Random leftmost derivation. Each nonterminal expansion picks uniformly among
// its alternatives while fewer than "max_expansions" expansions were made.
// Past the budget, an epsilon alternative is taken when one exists, otherwise
// a uniform pick among the alternatives that terminate fastest.
absl::StatusOr<GeneratedSentence> Generate(const Grammar& grammar,
                                           size_t max_expansions,
                                           uint64_t seed);

}  // namespace iema::grammar

#endif  // IEMA_GRAMMAR_GENERATOR_H_
