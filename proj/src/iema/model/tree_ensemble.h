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

#ifndef IEMA_MODEL_TREE_ENSEMBLE_H_
#define IEMA_MODEL_TREE_ENSEMBLE_H_

#include <memory>
#include <vector>

#include "absl/status/statusor.h"
#include "iema/model/linear_model.h"
#include "iema/model/model.h"

namespace iema::model {

enum class Aggregation { kMean, kSum };

std::string_view AggregationName(Aggregation aggregation);

// Binary decision node. Leaves have variable < 0.
struct TreeNode {
  int variable = -1;
  // Numeric split: row[variable] <= threshold goes left.
  double threshold = 0;
  // Categorical split: levels with left_levels[code] == true go left.
  std::vector<bool> left_levels;
  int left = -1;
  int right = -1;
  double value = 0;

  bool is_leaf() const { return variable < 0; }
};

// Node 0 is the root.
struct Tree {
  std::vector<TreeNode> nodes;
};

class TreeEnsemble : public Model {
 public:
  // Checks that every tree is a proper binary tree rooted at node 0 and that
  // splits reference schema variables of the right kind.
  static absl::StatusOr<std::shared_ptr<const TreeEnsemble>> Create(
      std::string id, Task task, data::Schema schema, Aggregation aggregation,
      Link link, std::vector<Tree> trees);

  std::string_view type() const override { return "tree_ensemble"; }
  double PredictRow(std::span<const double> row) const override;
  std::optional<nlohmann::json> ToSpec() const override;

  Aggregation aggregation() const { return aggregation_; }
  const std::vector<Tree>& trees() const { return trees_; }

  TreeEnsemble(std::string id, Task task, data::Schema schema,
               Aggregation aggregation, Link link, std::vector<Tree> trees);

 private:
  Aggregation aggregation_;
  Link link_;
  std::vector<Tree> trees_;
};

}  // namespace iema::model

#endif  // IEMA_MODEL_TREE_ENSEMBLE_H_
