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

#ifndef IEMA_GRAMMAR_GRAMMAR_H_
#define IEMA_GRAMMAR_GRAMMAR_H_

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "absl/status/statusor.h"
#include "json.hpp"

namespace iema::grammar {

// Nonterminals are numbered first, then terminals.
using SymbolId = int;

struct Rule {
  SymbolId lhs = 0;
  // Empty for an epsilon alternative.
  std::vector<SymbolId> rhs;
};

struct RuleSpec {
  std::string lhs;
  std::vector<std::string> rhs;
};

// Context-free grammar with ordered rules.
//
// Creation rejects grammars a recognizer cannot serve well: every nonterminal
// needs a rule and must derive some terminal string, and no nonterminal may
// derive itself (A =>+ A), which would give infinitely many parse trees.
class Grammar {
 public:
  static absl::StatusOr<Grammar> Create(std::vector<std::string> nonterminals,
                                        std::vector<std::string> terminals,
                                        std::string_view start,
                                        const std::vector<RuleSpec>& rules);

  // {"nonterminals": [...], "terminals": [...], "start": "...",
  //  "rules": [{"lhs": "...", "rhs": [...]}]}; epsilon is an empty rhs.
  static absl::StatusOr<Grammar> FromJson(const nlohmann::json& json);
  nlohmann::json ToJson() const;

  size_t num_symbols() const { return names_.size(); }
  size_t num_nonterminals() const { return num_nonterminals_; }
  size_t num_terminals() const { return names_.size() - num_nonterminals_; }
  bool IsTerminal(SymbolId symbol) const {
    return static_cast<size_t>(symbol) >= num_nonterminals_;
  }
  const std::string& name(SymbolId symbol) const { return names_[symbol]; }
  std::optional<SymbolId> Find(std::string_view name) const;

  std::vector<std::string> nonterminal_names() const;
  std::vector<std::string> terminal_names() const;
  std::vector<SymbolId> terminals() const;

  SymbolId start() const { return start_; }
  const std::vector<Rule>& rules() const { return rules_; }
  // Rule indices with the given left-hand side, in declaration order.
  const std::vector<size_t>& RulesFor(SymbolId lhs) const {
    return rules_by_lhs_[lhs];
  }

  bool Nullable(SymbolId symbol) const {
    return !IsTerminal(symbol) && nullable_[symbol];
  }
  // Length of the shortest terminal string derived from "symbol".
  size_t MinYield(SymbolId symbol) const { return min_yield_[symbol]; }
  // Nonterminal expansions needed to reach an all-terminal string.
  size_t MinExpansions(SymbolId symbol) const {
    return min_expansions_[symbol];
  }
  size_t RuleMinExpansions(size_t rule) const;

  // Maps names to terminal ids; rejects unknown names and nonterminals.
  absl::StatusOr<std::vector<SymbolId>> EncodeSentence(
      std::span<const std::string> sentence) const;
  std::vector<std::string> DecodeSentence(
      std::span<const SymbolId> sentence) const;

 private:
  Grammar() = default;
  absl::Status Analyze();

  std::vector<std::string> names_;
  size_t num_nonterminals_ = 0;
  SymbolId start_ = 0;
  std::vector<Rule> rules_;
  std::vector<std::vector<size_t>> rules_by_lhs_;
  std::vector<bool> nullable_;
  std::vector<size_t> min_yield_;
  std::vector<size_t> min_expansions_;
};

}  // namespace iema::grammar

#endif  // IEMA_GRAMMAR_GRAMMAR_H_
