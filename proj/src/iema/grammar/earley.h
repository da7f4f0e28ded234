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

#ifndef IEMA_GRAMMAR_EARLEY_H_
#define IEMA_GRAMMAR_EARLEY_H_

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "absl/status/statusor.h"
#include "iema/grammar/grammar.h"
#include "iema/grammar/parse_tree.h"

namespace iema::grammar {

struct ParseResult {
  bool accepted = false;
  // Longest prefix that some sentence of the language extends; the whole
  // length for accepted sentences.
  size_t valid_prefix_length = 0;
  // Canonical tree of accepted sentences: among all parse trees, the one whose
  // leftmost derivation is lexicographically smallest by rule index.
  std::optional<ParseTree> tree;
  // Number of distinct parse trees, saturating at UINT64_MAX.
  uint64_t derivation_count = 0;
};

// Earley recognition with nullable prediction handled as in Aycock and
// Horspool, so epsilon rules and recursion need no grammar rewriting.
ParseResult Parse(const Grammar& grammar, std::span<const SymbolId> sentence);

// Name-based front end; rejects unknown symbols and nonterminals.
absl::StatusOr<ParseResult> Accepts(const Grammar& grammar,
                                    std::span<const std::string> sentence);

struct NextSteps {
  // Terminal ids in grammar order.
  std::vector<SymbolId> terminals;
  // The prefix is itself a complete sentence.
  bool can_end = false;
};

// FailedPrecondition when "prefix" is not a valid prefix.
absl::StatusOr<NextSteps> ComputeNextSteps(const Grammar& grammar,
                                           std::span<const SymbolId> prefix);

// Up to "limit" parse trees of "sentence", in derivation order.
std::vector<ParseTree> AllParseTrees(const Grammar& grammar,
                                     std::span<const SymbolId> sentence,
                                     size_t limit);

}  // namespace iema::grammar

#endif  // IEMA_GRAMMAR_EARLEY_H_
