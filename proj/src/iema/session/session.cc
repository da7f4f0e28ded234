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

#include "iema/session/session.h"

#include <algorithm>

#include "absl/strings/cord.h"
#include "fmt/format.h"
#include "iema/common/status_macros.h"
#include "iema/grammar/earley.h"
#include "iema/grammar/iema_grammar.h"

namespace iema::session {
namespace {

constexpr char kGrammarViolationUrl[] = "iema/grammar-violation";

const grammar::Grammar& G() { return grammar::IemaGrammar(); }

}  // namespace

absl::StatusOr<Session> Session::Create(
    std::shared_ptr<const data::Dataset> dataset, model::ModelHandle model,
    const SessionOptions& options) {
  if (dataset == nullptr || model == nullptr) {
    return absl::InvalidArgumentError("a session needs a dataset and a model");
  }
  RETURN_IF_ERROR(local::CheckExplainable(*model, *dataset));
  return Session(std::move(dataset), std::move(model), options);
}

std::vector<grammar::SymbolId> Session::Prefix() const {
  std::vector<grammar::SymbolId> prefix;
  prefix.reserve(history_.size());
  for (const BoundStep& step : history_) {
    prefix.push_back(*G().Find(step.request.symbol));
  }
  return prefix;
}

StepSuggestions Session::NextSteps() const {
  const auto steps = grammar::ComputeNextSteps(G(), Prefix());
  // Apply only admits grammar-valid steps, so the prefix is always valid.
  if (!steps.ok()) return {};
  return {G().DecodeSentence(steps->terminals), steps->can_end};
}

std::optional<grammar::ParseTree> Session::Tree() const {
  return grammar::Parse(G(), Prefix()).tree;
}

absl::StatusOr<const BoundStep*> Session::Apply(const StepRequest& request) {
  const SymbolTraits* traits = FindSymbolTraits(request.symbol);
  if (traits == nullptr) {
    return absl::InvalidArgumentError(
        fmt::format("unknown step symbol \"{}\"", request.symbol));
  }
  const StepSuggestions next = NextSteps();
  if (std::find(next.terminals.begin(), next.terminals.end(), request.symbol) ==
      next.terminals.end()) {
    absl::Status status = absl::FailedPreconditionError(fmt::format(
        "{} is not permitted here; permitted next steps: {}{}", request.symbol,
        next.terminals.empty()
            ? "none"
            : fmt::format("{}", fmt::join(next.terminals, ", ")),
        next.can_end ? " (or end the dialogue)" : ""));
    status.SetPayload(kGrammarViolationUrl, absl::Cord(request.symbol));
    return status;
  }

  StepInputs inputs;
  inputs.dataset = dataset_.get();
  inputs.model = model_.get();
  inputs.defaults = {options_.seed, options_.instance_cap, options_.grid_size};
  inputs.index = history_.size();

  if (traits->instance_level) {
    inputs.instance =
        request.instance.has_value() ? request.instance : context_.instance;
    if (!inputs.instance.has_value()) {
      return absl::InvalidArgumentError(
          fmt::format("{} needs an instance", request.symbol));
    }
  } else if (request.instance.has_value()) {
    return absl::InvalidArgumentError(
        fmt::format("{} does not take an instance", request.symbol));
  }

  if (request.symbol == grammar::terminal::kSelectVariable) {
    if (!request.variable.has_value()) {
      return absl::InvalidArgumentError("Select_Variable needs a variable");
    }
    inputs.variable = request.variable;
  } else if (traits->uses_variable) {
    if (context_.variable.has_value()) {
      if (request.variable.has_value() &&
          *request.variable != *context_.variable) {
        return absl::InvalidArgumentError(
            fmt::format("{} uses the selected variable \"{}\"; got \"{}\"",
                        request.symbol, *context_.variable, *request.variable));
      }
      inputs.variable = context_.variable;
    } else if (request.variable.has_value()) {
      inputs.variable = request.variable;
    } else {
      return absl::InvalidArgumentError(
          fmt::format("{} needs a variable (no Select_Variable is in scope)",
                      request.symbol));
    }
  } else if (request.variable.has_value()) {
    return absl::InvalidArgumentError(
        fmt::format("{} does not take a variable", request.symbol));
  }

  ASSIGN_OR_RETURN(ExplanationResult result, ComputeStep(request, inputs));
  history_.push_back(BoundStep{history_.size(), request, inputs.instance,
                               inputs.variable, std::move(result)});
  if (!grammar::ComputeNextSteps(G(), Prefix()).ok()) {
    history_.pop_back();
    return absl::InternalError("history left the grammar's valid prefixes");
  }
  context_ = ContextOf(history_);
  return &history_.back();
}

absl::Status Session::Undo() {
  if (history_.empty()) {
    return absl::FailedPreconditionError(
        "nothing to undo: the history is empty");
  }
  history_.pop_back();
  context_ = ContextOf(history_);
  return absl::OkStatus();
}

DialogueContext ContextOf(const std::vector<BoundStep>& history) {
  DialogueContext context;
  for (const BoundStep& step : history) {
    const SymbolTraits* traits = FindSymbolTraits(step.request.symbol);
    if (traits == nullptr) continue;
    if (traits->instance_level) context.instance = step.instance;
    if (step.request.symbol == grammar::terminal::kSelectVariable) {
      context.variable = step.variable;
    } else if (traits->ends_variable_scope) {
      context.variable.reset();
    }
  }
  return context;
}

bool IsGrammarViolation(const absl::Status& status) {
  return status.code() == absl::StatusCode::kFailedPrecondition &&
         status.GetPayload(kGrammarViolationUrl).has_value();
}

}  // namespace iema::session
