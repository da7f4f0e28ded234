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

#include "iema/grammar/parse_tree.h"

#include "fmt/format.h"

namespace iema::grammar {
namespace {

template <typename Visit>
void Preorder(const ParseTree& tree, int node, int depth, Visit& visit) {
  visit(node, depth);
  for (const int child : tree.nodes[node].children) {
    Preorder(tree, child, depth + 1, visit);
  }
}

}  // namespace

std::vector<SymbolId> ParseTree::Frontier() const {
  std::vector<SymbolId> frontier;
  if (nodes.empty()) return frontier;
  auto visit = [&](int node, int) {
    const ParseNode& n = nodes[node];
    if (n.rule < 0 && n.symbol != kEpsilon) frontier.push_back(n.symbol);
  };
  Preorder(*this, 0, 0, visit);
  return frontier;
}

std::vector<int> ParseTree::Derivation() const {
  std::vector<int> rules;
  if (nodes.empty()) return rules;
  auto visit = [&](int node, int) {
    if (nodes[node].rule >= 0) rules.push_back(nodes[node].rule);
  };
  Preorder(*this, 0, 0, visit);
  return rules;
}

bool ParseTree::operator==(const ParseTree& other) const {
  // The leftmost derivation determines the tree.
  return Derivation() == other.Derivation();
}

absl::Status ValidateTree(const Grammar& grammar, const ParseTree& tree) {
  if (tree.nodes.empty()) return absl::InvalidArgumentError("empty tree");
  if (tree.nodes[0].symbol != grammar.start()) {
    return absl::InvalidArgumentError("root is not the start symbol");
  }
  std::vector<int> parents(tree.nodes.size(), 0);
  for (size_t i = 0; i < tree.nodes.size(); ++i) {
    const ParseNode& node = tree.nodes[i];
    for (const int child : node.children) {
      if (child <= 0 || static_cast<size_t>(child) >= tree.nodes.size() ||
          ++parents[child] > 1) {
        return absl::InvalidArgumentError(
            fmt::format("node {} has an invalid child {}", i, child));
      }
    }
    if (node.symbol == kEpsilon || grammar.IsTerminal(node.symbol)) {
      if (node.rule != -1 || !node.children.empty()) {
        return absl::InvalidArgumentError(
            fmt::format("leaf {} has children", i));
      }
      continue;
    }
    if (node.rule < 0 ||
        static_cast<size_t>(node.rule) >= grammar.rules().size()) {
      return absl::InvalidArgumentError(fmt::format("node {} lacks a rule", i));
    }
    const Rule& rule = grammar.rules()[node.rule];
    if (rule.lhs != node.symbol) {
      return absl::InvalidArgumentError(
          fmt::format("node {} ({}) applies a rule of {}", i,
                      grammar.name(node.symbol), grammar.name(rule.lhs)));
    }
    std::vector<SymbolId> labels;
    for (const int child : node.children) {
      labels.push_back(tree.nodes[child].symbol);
    }
    const std::vector<SymbolId> expected =
        rule.rhs.empty() ? std::vector<SymbolId>{kEpsilon} : rule.rhs;
    if (labels != expected) {
      return absl::InvalidArgumentError(
          fmt::format("children of node {} ({}) do not match its rule", i,
                      grammar.name(node.symbol)));
    }
  }
  for (size_t i = 1; i < tree.nodes.size(); ++i) {
    if (parents[i] != 1) {
      return absl::InvalidArgumentError(
          fmt::format("node {} is not attached to the tree", i));
    }
  }
  return absl::OkStatus();
}

std::string RenderTreeText(const Grammar& grammar, const ParseTree& tree) {
  std::string text;
  if (tree.nodes.empty()) return text;
  auto visit = [&](int node, int depth) {
    const ParseNode& n = tree.nodes[node];
    text.append(2 * static_cast<size_t>(depth), ' ');
    if (n.symbol == kEpsilon) {
      text += kEpsilonName;
    } else {
      text += grammar.name(n.symbol);
      if (grammar.IsTerminal(n.symbol)) text += " [terminal]";
    }
    text += '\n';
  };
  Preorder(tree, 0, 0, visit);
  return text;
}

nlohmann::json RenderTreeJson(const Grammar& grammar, const ParseTree& tree) {
  nlohmann::json nodes = nlohmann::json::array();
  if (tree.nodes.empty()) return nodes;
  // Renumber in preorder so equal trees serialize identically.
  std::vector<int> order;
  std::vector<int> number(tree.nodes.size(), -1);
  auto visit = [&](int node, int) {
    number[node] = static_cast<int>(order.size());
    order.push_back(node);
  };
  Preorder(tree, 0, 0, visit);
  for (const int node : order) {
    const ParseNode& n = tree.nodes[node];
    nlohmann::json children = nlohmann::json::array();
    for (const int child : n.children) children.push_back(number[child]);
    nlohmann::json entry = {
        {"id", number[node]},
        {"symbol",
         n.symbol == kEpsilon ? kEpsilonName : grammar.name(n.symbol)},
        {"kind", n.symbol == kEpsilon           ? "epsilon"
                 : grammar.IsTerminal(n.symbol) ? "terminal"
                                                : "nonterminal"},
        {"children", children}};
    if (n.rule >= 0) entry["rule"] = n.rule;
    nodes.push_back(std::move(entry));
  }
  return nodes;
}

}  // namespace iema::grammar
