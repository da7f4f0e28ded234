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

#include "iema/grammar/grammar.h"

#include <algorithm>
#include <limits>
#include <set>

#include "fmt/format.h"
#include "iema/common/status_macros.h"

namespace iema::grammar {
namespace {

constexpr size_t kInfinite = std::numeric_limits<size_t>::max();

size_t SaturatingAdd(size_t a, size_t b) {
  return (a == kInfinite || b == kInfinite || a > kInfinite - b) ? kInfinite
                                                                 : a + b;
}

}  // namespace

absl::StatusOr<Grammar> Grammar::Create(std::vector<std::string> nonterminals,
                                        std::vector<std::string> terminals,
                                        std::string_view start,
                                        const std::vector<RuleSpec>& rules) {
  Grammar grammar;
  grammar.num_nonterminals_ = nonterminals.size();
  grammar.names_ = std::move(nonterminals);
  grammar.names_.insert(grammar.names_.end(),
                        std::make_move_iterator(terminals.begin()),
                        std::make_move_iterator(terminals.end()));
  std::set<std::string_view> seen;
  for (const std::string& name : grammar.names_) {
    if (name.empty()) return absl::InvalidArgumentError("empty symbol name");
    if (!seen.insert(name).second) {
      return absl::InvalidArgumentError(
          fmt::format("symbol \"{}\" is declared twice", name));
    }
  }
  const auto start_id = grammar.Find(start);
  if (!start_id.has_value() || grammar.IsTerminal(*start_id)) {
    return absl::InvalidArgumentError(
        fmt::format("start symbol \"{}\" is not a nonterminal", start));
  }
  grammar.start_ = *start_id;
  grammar.rules_by_lhs_.resize(grammar.num_nonterminals_);
  for (const RuleSpec& spec : rules) {
    const auto lhs = grammar.Find(spec.lhs);
    if (!lhs.has_value() || grammar.IsTerminal(*lhs)) {
      return absl::InvalidArgumentError(fmt::format(
          "rule left-hand side \"{}\" is not a nonterminal", spec.lhs));
    }
    Rule rule{*lhs, {}};
    for (const std::string& name : spec.rhs) {
      const auto symbol = grammar.Find(name);
      if (!symbol.has_value()) {
        return absl::InvalidArgumentError(fmt::format(
            "rule for \"{}\" uses undeclared symbol \"{}\"", spec.lhs, name));
      }
      rule.rhs.push_back(*symbol);
    }
    grammar.rules_by_lhs_[*lhs].push_back(grammar.rules_.size());
    grammar.rules_.push_back(std::move(rule));
  }
  RETURN_IF_ERROR(grammar.Analyze());
  return grammar;
}

absl::Status Grammar::Analyze() {
  const size_t n = names_.size();
  for (size_t a = 0; a < num_nonterminals_; ++a) {
    if (rules_by_lhs_[a].empty()) {
      return absl::InvalidArgumentError(
          fmt::format("nonterminal \"{}\" has no rules", names_[a]));
    }
  }
  // Fixed points for nullability, shortest yield and expansion count.
  nullable_.assign(n, false);
  min_yield_.assign(n, kInfinite);
  min_expansions_.assign(n, kInfinite);
  for (size_t t = num_nonterminals_; t < n; ++t) {
    min_yield_[t] = 1;
    min_expansions_[t] = 0;
  }
  for (bool changed = true; changed;) {
    changed = false;
    for (const Rule& rule : rules_) {
      bool nullable = true;
      size_t yield = 0;
      size_t expansions = 1;
      for (const SymbolId s : rule.rhs) {
        nullable = nullable && Nullable(s);
        yield = SaturatingAdd(yield, min_yield_[s]);
        expansions = SaturatingAdd(expansions, min_expansions_[s]);
      }
      if (nullable && !nullable_[rule.lhs]) {
        nullable_[rule.lhs] = true;
        changed = true;
      }
      if (yield < min_yield_[rule.lhs]) {
        min_yield_[rule.lhs] = yield;
        changed = true;
      }
      if (expansions < min_expansions_[rule.lhs]) {
        min_expansions_[rule.lhs] = expansions;
        changed = true;
      }
    }
  }
  for (size_t a = 0; a < num_nonterminals_; ++a) {
    if (min_yield_[a] == kInfinite) {
      return absl::InvalidArgumentError(fmt::format(
          "nonterminal \"{}\" derives no terminal string", names_[a]));
    }
  }
  // A =>+ A exactly when the "derives in one step with nullable context"
  // relation has a cycle.
  std::vector<std::vector<bool>> reaches(
      num_nonterminals_, std::vector<bool>(num_nonterminals_, false));
  for (const Rule& rule : rules_) {
    for (size_t k = 0; k < rule.rhs.size(); ++k) {
      const SymbolId b = rule.rhs[k];
      if (IsTerminal(b)) continue;
      bool context_nullable = true;
      for (size_t other = 0; other < rule.rhs.size(); ++other) {
        if (other != k && !Nullable(rule.rhs[other])) context_nullable = false;
      }
      if (context_nullable) reaches[rule.lhs][b] = true;
    }
  }
  for (size_t k = 0; k < num_nonterminals_; ++k) {
    for (size_t i = 0; i < num_nonterminals_; ++i) {
      if (!reaches[i][k]) continue;
      for (size_t j = 0; j < num_nonterminals_; ++j) {
        if (reaches[k][j]) reaches[i][j] = true;
      }
    }
  }
  for (size_t a = 0; a < num_nonterminals_; ++a) {
    if (reaches[a][a]) {
      return absl::InvalidArgumentError(fmt::format(
          "nonterminal \"{}\" derives itself; the grammar is cyclic",
          names_[a]));
    }
  }
  return absl::OkStatus();
}

size_t Grammar::RuleMinExpansions(size_t rule) const {
  size_t expansions = 1;
  for (const SymbolId s : rules_[rule].rhs) {
    expansions = SaturatingAdd(expansions, min_expansions_[s]);
  }
  return expansions;
}

std::optional<SymbolId> Grammar::Find(std::string_view name) const {
  const auto it = std::find(names_.begin(), names_.end(), name);
  if (it == names_.end()) return std::nullopt;
  return static_cast<SymbolId>(it - names_.begin());
}

std::vector<std::string> Grammar::nonterminal_names() const {
  return {names_.begin(),
          names_.begin() + static_cast<std::ptrdiff_t>(num_nonterminals_)};
}

std::vector<std::string> Grammar::terminal_names() const {
  return {names_.begin() + static_cast<std::ptrdiff_t>(num_nonterminals_),
          names_.end()};
}

std::vector<SymbolId> Grammar::terminals() const {
  std::vector<SymbolId> ids;
  for (size_t t = num_nonterminals_; t < names_.size(); ++t) {
    ids.push_back(static_cast<SymbolId>(t));
  }
  return ids;
}

absl::StatusOr<std::vector<SymbolId>> Grammar::EncodeSentence(
    std::span<const std::string> sentence) const {
  std::vector<SymbolId> encoded;
  for (size_t i = 0; i < sentence.size(); ++i) {
    const auto symbol = Find(sentence[i]);
    if (!symbol.has_value()) {
      return absl::InvalidArgumentError(
          fmt::format("unknown symbol \"{}\" at position {}", sentence[i], i));
    }
    if (!IsTerminal(*symbol)) {
      return absl::InvalidArgumentError(fmt::format(
          "\"{}\" at position {} is a nonterminal, not an explanation step",
          sentence[i], i));
    }
    encoded.push_back(*symbol);
  }
  return encoded;
}

std::vector<std::string> Grammar::DecodeSentence(
    std::span<const SymbolId> sentence) const {
  std::vector<std::string> names;
  for (const SymbolId s : sentence) names.push_back(names_[s]);
  return names;
}

nlohmann::json Grammar::ToJson() const {
  nlohmann::json rules = nlohmann::json::array();
  for (const Rule& rule : rules_) {
    nlohmann::json rhs = nlohmann::json::array();
    for (const SymbolId s : rule.rhs) rhs.push_back(names_[s]);
    rules.push_back({{"lhs", names_[rule.lhs]}, {"rhs", rhs}});
  }
  return {{"nonterminals", nonterminal_names()},
          {"terminals", terminal_names()},
          {"start", names_[start_]},
          {"rules", rules}};
}

absl::StatusOr<Grammar> Grammar::FromJson(const nlohmann::json& json) {
  auto string_list =
      [&](const char* key) -> absl::StatusOr<std::vector<std::string>> {
    const auto it = json.find(key);
    if (it == json.end() || !it->is_array()) {
      return absl::InvalidArgumentError(
          fmt::format("grammar: \"{}\" must be an array of names", key));
    }
    std::vector<std::string> names;
    for (const auto& entry : *it) {
      if (!entry.is_string()) {
        return absl::InvalidArgumentError(
            fmt::format("grammar: \"{}\" must hold strings", key));
      }
      names.push_back(entry.get<std::string>());
    }
    return names;
  };
  if (!json.is_object()) {
    return absl::InvalidArgumentError("grammar must be a JSON object");
  }
  ASSIGN_OR_RETURN(std::vector<std::string> nonterminals,
                   string_list("nonterminals"));
  ASSIGN_OR_RETURN(std::vector<std::string> terminals,
                   string_list("terminals"));
  if (!json.contains("start") || !json["start"].is_string()) {
    return absl::InvalidArgumentError("grammar: \"start\" must be a string");
  }
  const auto rules_it = json.find("rules");
  if (rules_it == json.end() || !rules_it->is_array()) {
    return absl::InvalidArgumentError("grammar: \"rules\" must be an array");
  }
  std::vector<RuleSpec> rules;
  for (const auto& entry : *rules_it) {
    if (!entry.is_object() || !entry.contains("lhs") ||
        !entry["lhs"].is_string() || !entry.contains("rhs") ||
        !entry["rhs"].is_array()) {
      return absl::InvalidArgumentError(
          "grammar: each rule needs a string \"lhs\" and an array \"rhs\"");
    }
    RuleSpec rule{entry["lhs"].get<std::string>(), {}};
    for (const auto& symbol : entry["rhs"]) {
      if (!symbol.is_string()) {
        return absl::InvalidArgumentError("grammar: rhs must hold names");
      }
      rule.rhs.push_back(symbol.get<std::string>());
    }
    rules.push_back(std::move(rule));
  }
  return Create(std::move(nonterminals), std::move(terminals),
                json["start"].get<std::string>(), rules);
}

}  // namespace iema::grammar
