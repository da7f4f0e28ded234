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

#ifndef IEMA_SESSION_SESSION_H_
#define IEMA_SESSION_SESSION_H_

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "iema/data/dataset.h"
#include "iema/grammar/grammar.h"
#include "iema/grammar/parse_tree.h"
#include "iema/local_explain/instance.h"
#include "iema/model/model.h"
#include "iema/session/step.h"

namespace iema::session {

struct SessionOptions {
  uint64_t seed = 0;
  size_t instance_cap = 200;
  size_t grid_size = local::kDefaultGridSize;
};

struct DialogueContext {
  std::optional<local::InstanceRef> instance;
  std::optional<std::string> variable;

  bool operator==(const DialogueContext&) const = default;
};

struct BoundStep {
  // Position in the history, which doubles as a logical timestamp.
  size_t timestamp = 0;
  StepRequest request;
  // Parameters in effect after applying the context rules.
  std::optional<local::InstanceRef> instance;
  std::optional<std::string> variable;
  ExplanationResult result;
};

struct StepSuggestions {
  std::vector<std::string> terminals;
  bool can_end = false;

  bool operator==(const StepSuggestions&) const = default;
};

// A dialogue over one dataset and model. The symbols of the history always
// form a valid prefix of the built-in grammar, and a failed Apply leaves the
// session untouched.
//
// Context rules:
//  * Instance-level steps (attributions, Ceteris_Paribus) use the request's
//    instance if given, which then becomes the current instance, else the
//    current one. The first of them must name an instance.
//  * Select_Variable sets the current variable. It stays in scope until a
//    parts step (importance, correlation or attribution) follows.
//  * Profile and distribution steps use the variable in scope; a request may
//    repeat it but not change it. With none in scope they need one.
//
// Not thread-safe; callers serialize mutations.
class Session {
 public:
  static absl::StatusOr<Session> Create(
      std::shared_ptr<const data::Dataset> dataset, model::ModelHandle model,
      const SessionOptions& options = {});

  const data::Dataset& dataset() const { return *dataset_; }
  const std::shared_ptr<const data::Dataset>& dataset_handle() const {
    return dataset_;
  }
  const model::ModelHandle& model() const { return model_; }
  const SessionOptions& options() const { return options_; }
  const std::vector<BoundStep>& history() const { return history_; }
  const DialogueContext& context() const { return context_; }

  std::vector<grammar::SymbolId> Prefix() const;
  StepSuggestions NextSteps() const;
  // Canonical tree of the history when it is a complete sentence.
  std::optional<grammar::ParseTree> Tree() const;

  // Grammar violations are FailedPrecondition errors marked for
  // IsGrammarViolation; parameter problems are InvalidArgument; capability
  // errors pass through from the explanation modules.
  absl::StatusOr<const BoundStep*> Apply(const StepRequest& request);

  // FailedPrecondition on an empty history.
  absl::Status Undo();

 private:
  Session(std::shared_ptr<const data::Dataset> dataset,
          model::ModelHandle model, const SessionOptions& options)
      : dataset_(std::move(dataset)),
        model_(std::move(model)),
        options_(options) {}

  std::shared_ptr<const data::Dataset> dataset_;
  model::ModelHandle model_;
  SessionOptions options_;
  std::vector<BoundStep> history_;
  DialogueContext context_;
};

// Context implied by a history, replaying the rules above.
DialogueContext ContextOf(const std::vector<BoundStep>& history);

bool IsGrammarViolation(const absl::Status& status);

}  // namespace iema::session

#endif  // IEMA_SESSION_SESSION_H_
