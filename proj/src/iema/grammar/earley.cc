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

#include <algorithm>
#include <limits>
#include <unordered_map>
#include <unordered_set>

#include "fmt/format.h"
#include "iema/common/status_macros.h"

namespace iema::grammar {
namespace {

using Encoding = std::vector<int>;

struct Item {
  int rule;
  int dot;
  int origin;
};

uint64_t SaturatingMultiply(uint64_t a, uint64_t b) {
  if (a != 0 && b > std::numeric_limits<uint64_t>::max() / a) {
    return std::numeric_limits<uint64_t>::max();
  }
  return a * b;
}

uint64_t SaturatingAdd(uint64_t a, uint64_t b) {
  return b > std::numeric_limits<uint64_t>::max() - a
             ? std::numeric_limits<uint64_t>::max()
             : a + b;
}

class Chart {
 public:
  Chart(const Grammar& grammar, std::span<const SymbolId> sentence)
      : grammar_(grammar), sentence_(sentence.begin(), sentence.end()) {
    Recognize();
  }

  // Number of input symbols consumed before a set came up empty.
  size_t valid_prefix_length() const { return sets_.size() - 1; }

  bool Accepted() const {
    return valid_prefix_length() == sentence_.size() &&
           Derives(grammar_.start(), 0, sentence_.size());
  }

  // Terminals expected right after the last processed set.
  std::vector<SymbolId> Expected() const {
    std::vector<bool> seen(grammar_.num_symbols(), false);
    for (const Item& item : sets_.back()) {
      const Rule& rule = grammar_.rules()[item.rule];
      if (static_cast<size_t>(item.dot) < rule.rhs.size() &&
          grammar_.IsTerminal(rule.rhs[item.dot])) {
        seen[rule.rhs[item.dot]] = true;
      }
    }
    std::vector<SymbolId> expected;
    for (const SymbolId t : grammar_.terminals()) {
      if (seen[t]) expected.push_back(t);
    }
    return expected;
  }

  std::optional<Encoding> Best(SymbolId symbol, size_t i, size_t j) {
    const uint64_t key = SpanKey(symbol, i, j);
    if (const auto it = best_.find(key); it != best_.end()) return it->second;
    std::optional<Encoding> result;
    if (Derives(symbol, i, j)) {
      for (const size_t r : grammar_.RulesFor(symbol)) {
        std::optional<Encoding> rest = BestSeq(r, 0, i, j);
        if (!rest.has_value()) continue;
        Encoding encoding = {static_cast<int>(r)};
        encoding.insert(encoding.end(), rest->begin(), rest->end());
        result = std::move(encoding);
        break;
      }
    }
    best_[key] = result;
    return result;
  }

  uint64_t Count(SymbolId symbol, size_t i, size_t j) {
    const uint64_t key = SpanKey(symbol, i, j);
    if (const auto it = count_.find(key); it != count_.end()) return it->second;
    uint64_t total = 0;
    if (Derives(symbol, i, j)) {
      for (const size_t r : grammar_.RulesFor(symbol)) {
        total = SaturatingAdd(total, CountSeq(r, 0, i, j));
      }
    }
    count_[key] = total;
    return total;
  }

  std::vector<Encoding> Enumerate(SymbolId symbol, size_t i, size_t j,
                                  size_t limit) {
    std::vector<Encoding> out;
    if (!Derives(symbol, i, j)) return out;
    for (const size_t r : grammar_.RulesFor(symbol)) {
      for (Encoding& rest : EnumerateSeq(r, 0, i, j, limit - out.size())) {
        Encoding encoding = {static_cast<int>(r)};
        encoding.insert(encoding.end(), rest.begin(), rest.end());
        out.push_back(std::move(encoding));
      }
      if (out.size() >= limit) break;
    }
    return out;
  }

 private:
  void Recognize() {
    const size_t n = sentence_.size();
    const size_t nt = grammar_.num_nonterminals();
    completed_.assign((n + 1) * (n + 1) * nt, false);
    sets_.emplace_back();
    seen_.emplace_back();
    for (const size_t r : grammar_.RulesFor(grammar_.start())) {
      Add(0, {static_cast<int>(r), 0, 0});
    }
    for (size_t k = 0;; ++k) {
      for (size_t index = 0; index < sets_[k].size(); ++index) {
        const Item item = sets_[k][index];
        const Rule& rule = grammar_.rules()[item.rule];
        if (static_cast<size_t>(item.dot) == rule.rhs.size()) {
          Complete(k, item);
          continue;
        }
        const SymbolId next = rule.rhs[item.dot];
        if (grammar_.IsTerminal(next)) continue;
        for (const size_t r : grammar_.RulesFor(next)) {
          Add(k, {static_cast<int>(r), 0, static_cast<int>(k)});
        }
        if (grammar_.Nullable(next)) {
          Add(k, {item.rule, item.dot + 1, item.origin});
        }
      }
      if (k == n) break;
      // Ids outside the terminal range are never scanned.
      if (sentence_[k] < 0 ||
          static_cast<size_t>(sentence_[k]) >= grammar_.num_symbols() ||
          !grammar_.IsTerminal(sentence_[k])) {
        break;
      }
      sets_.emplace_back();
      seen_.emplace_back();
      for (const Item& item : sets_[k]) {
        const Rule& rule = grammar_.rules()[item.rule];
        if (static_cast<size_t>(item.dot) < rule.rhs.size() &&
            rule.rhs[item.dot] == sentence_[k]) {
          Add(k + 1, {item.rule, item.dot + 1, item.origin});
        }
      }
      if (sets_[k + 1].empty()) {
        sets_.pop_back();
        seen_.pop_back();
        break;
      }
    }
  }

  void Complete(size_t k, const Item& done) {
    const SymbolId lhs = grammar_.rules()[done.rule].lhs;
    completed_[SpanIndex(lhs, done.origin, k)] = true;
    const size_t origin = static_cast<size_t>(done.origin);
    for (size_t index = 0; index < sets_[origin].size(); ++index) {
      const Item waiting = sets_[origin][index];
      const Rule& rule = grammar_.rules()[waiting.rule];
      if (static_cast<size_t>(waiting.dot) < rule.rhs.size() &&
          rule.rhs[waiting.dot] == lhs) {
        Add(k, {waiting.rule, waiting.dot + 1, waiting.origin});
      }
    }
  }

  void Add(size_t k, Item item) {
    const uint64_t key =
        (static_cast<uint64_t>(item.origin) * grammar_.rules().size() +
         static_cast<uint64_t>(item.rule)) *
            64 +
        static_cast<uint64_t>(item.dot);
    if (seen_[k].insert(key).second) sets_[k].push_back(item);
  }

  size_t SpanIndex(SymbolId symbol, size_t i, size_t j) const {
    const size_t n = sentence_.size() + 1;
    return (i * n + j) * grammar_.num_nonterminals() +
           static_cast<size_t>(symbol);
  }

  uint64_t SpanKey(SymbolId symbol, size_t i, size_t j) const {
    return SpanIndex(symbol, i, j);
  }

  // symbol =>* sentence[i, j). Empty spans follow nullability; longer spans
  // come from completed chart items.
  bool Derives(SymbolId symbol, size_t i, size_t j) const {
    if (grammar_.IsTerminal(symbol)) {
      return j == i + 1 && i < sentence_.size() && sentence_[i] == symbol &&
             j < sets_.size();
    }
    if (i == j) return grammar_.Nullable(symbol);
    if (j >= sets_.size()) return false;
    return completed_[SpanIndex(symbol, i, j)];
  }

  // Feasible split points for rhs[k] starting at i when rhs[k..] must cover
  // [i, j).
  template <typename Fn>
  void ForEachSplit(size_t rule, size_t k, size_t i, size_t j, Fn fn) {
    const SymbolId child = grammar_.rules()[rule].rhs[k];
    if (grammar_.IsTerminal(child)) {
      if (i < j && Derives(child, i, i + 1)) fn(i + 1);
      return;
    }
    // The rest of the rule needs at least `tail` terminals, which also keeps
    // left-recursive rules from revisiting the span they are computing.
    size_t tail = 0;
    const std::vector<SymbolId>& rhs = grammar_.rules()[rule].rhs;
    for (size_t q = k + 1; q < rhs.size(); ++q)
      tail += grammar_.MinYield(rhs[q]);
    for (size_t m = i; m + tail <= j; ++m) {
      if (Derives(child, i, m)) fn(m);
    }
  }

  uint64_t SeqKey(size_t rule, size_t k, size_t i, size_t j) const {
    const uint64_t n = sentence_.size() + 1;
    return ((static_cast<uint64_t>(rule) * 64 + k) * n + i) * n + j;
  }

  std::optional<Encoding> BestSeq(size_t rule, size_t k, size_t i, size_t j) {
    const std::vector<SymbolId>& rhs = grammar_.rules()[rule].rhs;
    if (k == rhs.size()) {
      return i == j ? std::optional<Encoding>(Encoding{}) : std::nullopt;
    }
    const uint64_t key = SeqKey(rule, k, i, j);
    if (const auto it = best_seq_.find(key); it != best_seq_.end()) {
      return it->second;
    }
    std::optional<Encoding> result;
    ForEachSplit(rule, k, i, j, [&](size_t m) {
      std::optional<Encoding> rest = BestSeq(rule, k + 1, m, j);
      if (!rest.has_value()) return;
      Encoding encoding;
      if (!grammar_.IsTerminal(rhs[k])) encoding = *Best(rhs[k], i, m);
      encoding.insert(encoding.end(), rest->begin(), rest->end());
      if (!result.has_value() || encoding < *result) result = encoding;
    });
    best_seq_[key] = result;
    return result;
  }

  uint64_t CountSeq(size_t rule, size_t k, size_t i, size_t j) {
    const std::vector<SymbolId>& rhs = grammar_.rules()[rule].rhs;
    if (k == rhs.size()) return i == j ? 1 : 0;
    const uint64_t key = SeqKey(rule, k, i, j);
    if (const auto it = count_seq_.find(key); it != count_seq_.end()) {
      return it->second;
    }
    uint64_t total = 0;
    ForEachSplit(rule, k, i, j, [&](size_t m) {
      const uint64_t head =
          grammar_.IsTerminal(rhs[k]) ? 1 : Count(rhs[k], i, m);
      total = SaturatingAdd(
          total, SaturatingMultiply(head, CountSeq(rule, k + 1, m, j)));
    });
    count_seq_[key] = total;
    return total;
  }

  std::vector<Encoding> EnumerateSeq(size_t rule, size_t k, size_t i, size_t j,
                                     size_t limit) {
    const std::vector<SymbolId>& rhs = grammar_.rules()[rule].rhs;
    if (k == rhs.size()) {
      return i == j ? std::vector<Encoding>{Encoding{}}
                    : std::vector<Encoding>{};
    }
    std::vector<Encoding> out;
    ForEachSplit(rule, k, i, j, [&](size_t m) {
      if (out.size() >= limit) return;
      const std::vector<Encoding> heads =
          grammar_.IsTerminal(rhs[k]) ? std::vector<Encoding>{Encoding{}}
                                      : Enumerate(rhs[k], i, m, limit);
      if (heads.empty()) return;
      const std::vector<Encoding> tails =
          EnumerateSeq(rule, k + 1, m, j, limit);
      for (const Encoding& head : heads) {
        for (const Encoding& tail : tails) {
          if (out.size() >= limit) return;
          Encoding encoding = head;
          encoding.insert(encoding.end(), tail.begin(), tail.end());
          out.push_back(std::move(encoding));
        }
      }
    });
    return out;
  }

  const Grammar& grammar_;
  std::vector<SymbolId> sentence_;
  std::vector<std::vector<Item>> sets_;
  std::vector<std::unordered_set<uint64_t>> seen_;
  std::vector<bool> completed_;
  std::unordered_map<uint64_t, std::optional<Encoding>> best_;
  std::unordered_map<uint64_t, std::optional<Encoding>> best_seq_;
  std::unordered_map<uint64_t, uint64_t> count_;
  std::unordered_map<uint64_t, uint64_t> count_seq_;
};

// Rebuilds the tree of a leftmost derivation.
ParseTree TreeFromDerivation(const Grammar& grammar,
                             const Encoding& derivation) {
  ParseTree tree;
  size_t next = 0;
  auto expand = [&](auto&& self, SymbolId symbol) -> int {
    const int id = static_cast<int>(tree.nodes.size());
    tree.nodes.push_back({symbol, -1, {}});
    if (symbol == kEpsilon || grammar.IsTerminal(symbol)) return id;
    const int rule = derivation[next++];
    tree.nodes[id].rule = rule;
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
  return tree;
}

}  // namespace

ParseResult Parse(const Grammar& grammar, std::span<const SymbolId> sentence) {
  Chart chart(grammar, sentence);
  ParseResult result;
  result.valid_prefix_length = chart.valid_prefix_length();
  result.accepted = chart.Accepted();
  if (result.accepted) {
    const std::optional<Encoding> best =
        chart.Best(grammar.start(), 0, sentence.size());
    result.tree = TreeFromDerivation(grammar, *best);
    result.derivation_count = chart.Count(grammar.start(), 0, sentence.size());
  }
  return result;
}

absl::StatusOr<ParseResult> Accepts(const Grammar& grammar,
                                    std::span<const std::string> sentence) {
  ASSIGN_OR_RETURN(const std::vector<SymbolId> encoded,
                   grammar.EncodeSentence(sentence));
  return Parse(grammar, encoded);
}

absl::StatusOr<NextSteps> ComputeNextSteps(const Grammar& grammar,
                                           std::span<const SymbolId> prefix) {
  Chart chart(grammar, prefix);
  if (chart.valid_prefix_length() != prefix.size()) {
    return absl::FailedPreconditionError(
        fmt::format("not a valid prefix; longest valid prefix: {}",
                    chart.valid_prefix_length()));
  }
  return NextSteps{chart.Expected(), chart.Accepted()};
}

std::vector<ParseTree> AllParseTrees(const Grammar& grammar,
                                     std::span<const SymbolId> sentence,
                                     size_t limit) {
  Chart chart(grammar, sentence);
  std::vector<ParseTree> trees;
  if (!chart.Accepted() || limit == 0) return trees;
  for (const Encoding& derivation :
       chart.Enumerate(grammar.start(), 0, sentence.size(), limit)) {
    trees.push_back(TreeFromDerivation(grammar, derivation));
  }
  return trees;
}

}  // namespace iema::grammar
