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

#include "iema/model/tree_ensemble.h"

#include <cmath>

#include "absl/status/status.h"
#include "fmt/format.h"

namespace iema::model {

std::string_view AggregationName(Aggregation aggregation) {
  return aggregation == Aggregation::kMean ? "mean" : "sum";
}

TreeEnsemble::TreeEnsemble(std::string id, Task task, data::Schema schema,
                           Aggregation aggregation, Link link,
                           std::vector<Tree> trees)
    : Model(std::move(id), task, std::move(schema)),
      aggregation_(aggregation),
      link_(link),
      trees_(std::move(trees)) {}

absl::StatusOr<std::shared_ptr<const TreeEnsemble>> TreeEnsemble::Create(
    std::string id, Task task, data::Schema schema, Aggregation aggregation,
    Link link, std::vector<Tree> trees) {
  if (trees.empty()) {
    return absl::InvalidArgumentError("tree ensemble has no trees");
  }
  double min_leaf = INFINITY, max_leaf = -INFINITY;
  for (size_t t = 0; t < trees.size(); ++t) {
    const auto& nodes = trees[t].nodes;
    if (nodes.empty()) {
      return absl::InvalidArgumentError(fmt::format("tree {} has no nodes", t));
    }
    // 0 = unvisited, 1 = visited. Every node must be reached exactly once.
    std::vector<int> state(nodes.size(), 0);
    std::vector<int> stack = {0};
    while (!stack.empty()) {
      const int index = stack.back();
      stack.pop_back();
      if (state[index] != 0) {
        return absl::InvalidArgumentError(fmt::format(
            "tree {} is not a proper binary tree: node {} is reached twice "
            "(cyclic or shared node)",
            t, index));
      }
      state[index] = 1;
      const TreeNode& node = nodes[index];
      if (node.is_leaf()) {
        if (!std::isfinite(node.value)) {
          return absl::InvalidArgumentError(
              fmt::format("tree {} leaf {} has a non-finite value", t, index));
        }
        min_leaf = std::min(min_leaf, node.value);
        max_leaf = std::max(max_leaf, node.value);
        continue;
      }
      if (static_cast<size_t>(node.variable) >= schema.size()) {
        return absl::InvalidArgumentError(
            fmt::format("tree {} node {} splits on unknown variable index {}",
                        t, index, node.variable));
      }
      const auto& variable = schema.variables[node.variable];
      if (variable.kind == data::ColumnKind::kCategorical &&
          node.left_levels.size() != variable.levels.size()) {
        return absl::InvalidArgumentError(fmt::format(
            "tree {} node {}: categorical split on \"{}\" needs a level set", t,
            index, variable.id));
      }
      if (variable.kind == data::ColumnKind::kNumeric &&
          !std::isfinite(node.threshold)) {
        return absl::InvalidArgumentError(fmt::format(
            "tree {} node {}: numeric split on \"{}\" needs a finite threshold",
            t, index, variable.id));
      }
      for (const int child : {node.left, node.right}) {
        if (child < 0 || static_cast<size_t>(child) >= nodes.size()) {
          return absl::InvalidArgumentError(
              fmt::format("tree {} node {} has child index {} out of range", t,
                          index, child));
        }
        stack.push_back(child);
      }
    }
    for (size_t index = 0; index < nodes.size(); ++index) {
      if (state[index] == 0) {
        return absl::InvalidArgumentError(fmt::format(
            "tree {} node {} is unreachable from the root", t, index));
      }
    }
  }
  if (task == Task::kBinaryClassification && link == Link::kIdentity &&
      (aggregation != Aggregation::kMean || min_leaf < 0.0 || max_leaf > 1.0)) {
    return absl::InvalidArgumentError(
        "link/task mismatch: a classification tree ensemble with identity link "
        "needs mean aggregation and leaf values in [0, 1]");
  }
  if (task == Task::kRegression && link == Link::kLogistic) {
    return absl::InvalidArgumentError(
        "link/task mismatch: logistic link with a regression task");
  }
  return std::make_shared<const TreeEnsemble>(std::move(id), task,
                                              std::move(schema), aggregation,
                                              link, std::move(trees));
}

double TreeEnsemble::PredictRow(std::span<const double> row) const {
  double total = 0.0;
  for (const Tree& tree : trees_) {
    const TreeNode* node = &tree.nodes[0];
    while (!node->is_leaf()) {
      const double v = row[node->variable];
      const bool go_left = node->left_levels.empty()
                               ? v <= node->threshold
                               : node->left_levels[static_cast<size_t>(v)];
      node = &tree.nodes[go_left ? node->left : node->right];
    }
    total += node->value;
  }
  if (aggregation_ == Aggregation::kMean) {
    total /= static_cast<double>(trees_.size());
  }
  if (link_ == Link::kLogistic) return 1.0 / (1.0 + std::exp(-total));
  return total;
}

std::optional<nlohmann::json> TreeEnsemble::ToSpec() const {
  nlohmann::json trees = nlohmann::json::array();
  for (const Tree& tree : trees_) {
    nlohmann::json nodes = nlohmann::json::array();
    for (const TreeNode& node : tree.nodes) {
      if (node.is_leaf()) {
        nodes.push_back({{"value", node.value}});
        continue;
      }
      const auto& variable = schema().variables[node.variable];
      nlohmann::json entry = {
          {"var", variable.id}, {"left", node.left}, {"right", node.right}};
      if (node.left_levels.empty()) {
        entry["threshold"] = node.threshold;
      } else {
        nlohmann::json levels = nlohmann::json::array();
        for (size_t l = 0; l < node.left_levels.size(); ++l) {
          if (node.left_levels[l]) levels.push_back(variable.levels[l]);
        }
        entry["levels"] = std::move(levels);
      }
      nodes.push_back(std::move(entry));
    }
    trees.push_back({{"nodes", std::move(nodes)}});
  }
  return nlohmann::json{{"model-spec", 1},
                        {"id", id()},
                        {"type", "tree_ensemble"},
                        {"task", TaskName(task())},
                        {"link", LinkName(link_)},
                        {"aggregation", AggregationName(aggregation_)},
                        {"trees", std::move(trees)}};
}

}  // namespace iema::model
