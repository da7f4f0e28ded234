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

#include "iema/session/bundle.h"

#include <algorithm>

#include "fmt/format.h"
#include "iema/common/stats.h"
#include "iema/common/status_macros.h"
#include "iema/grammar/earley.h"
#include "iema/grammar/iema_grammar.h"
#include "iema/session/payload_json.h"

namespace iema::session {
namespace {

using nlohmann::json;

json StepToJson(const BoundStep& step, const data::Dataset& dataset) {
  return {{"step", step.timestamp},
          {"symbol", step.request.symbol},
          {"request", StepRequestToJson(step.request, dataset)},
          {"instance", step.instance.has_value()
                           ? local::InstanceToJson(*step.instance, dataset)
                           : json(nullptr)},
          {"variable",
           step.variable.has_value() ? json(*step.variable) : json(nullptr)},
          {"result", PayloadToJson(step.request.symbol, step.result)}};
}

absl::Status Malformed(std::string_view what) {
  return absl::InvalidArgumentError(fmt::format("malformed bundle: {}", what));
}

absl::Status Expect(const json& object, const char* key, json::value_t type,
                    std::string_view where) {
  const auto it = object.find(key);
  if (it == object.end()) {
    return Malformed(fmt::format("{} lacks \"{}\"", where, key));
  }
  const bool ok = type == json::value_t::number_unsigned
                      ? it->is_number_unsigned() ||
                            (it->is_number_integer() && it->get<int64_t>() >= 0)
                      : it->type() == type;
  if (!ok) {
    return Malformed(
        fmt::format("\"{}\" in {} has the wrong type", key, where));
  }
  return absl::OkStatus();
}

std::string Hex(uint64_t value) { return fmt::format("{:016x}", value); }

}  // namespace

json DatasetSummaryJson(const data::Dataset& dataset) {
  json columns = json::array();
  for (const data::Column& column : dataset.columns()) {
    json item = {{"id", column.id()},
                 {"kind", data::ColumnKindName(column.kind())}};
    if (column.is_numeric()) {
      const auto& v = column.values();
      item["min"] = *std::min_element(v.begin(), v.end());
      item["max"] = *std::max_element(v.begin(), v.end());
      item["mean"] = Mean(v);
    } else {
      item["levels"] = column.levels();
    }
    columns.push_back(std::move(item));
  }
  return {{"name", dataset.name()},
          {"n_rows", dataset.n_rows()},
          {"target", dataset.target().id()},
          {"fingerprint", Hex(dataset.Fingerprint())},
          {"columns", std::move(columns)}};
}

json ModelCardJson(const model::Model& model) {
  json variables = json::array();
  for (const auto& variable : model.schema().variables) {
    variables.push_back(variable.id);
  }
  return {{"id", model.id()},
          {"type", model.type()},
          {"task", model::TaskName(model.task())},
          {"refittable", model.refittable()},
          {"variables", std::move(variables)}};
}

json ExportBundle(const Session& session) {
  json history = json::array();
  for (const BoundStep& step : session.history()) {
    history.push_back(StepToJson(step, session.dataset()));
  }
  const StepSuggestions next = session.NextSteps();
  const auto tree = session.Tree();
  const SessionOptions& options = session.options();
  return {{"iema-bundle", kBundleVersion},
          {"seed", options.seed},
          {"settings",
           {{"instance_cap", options.instance_cap},
            {"grid_size", options.grid_size}}},
          {"dataset", DatasetSummaryJson(session.dataset())},
          {"model", ModelCardJson(*session.model())},
          {"grammar", grammar::IemaGrammar().ToJson()},
          {"history", std::move(history)},
          {"next_steps",
           {{"terminals", next.terminals}, {"can_end", next.can_end}}},
          {"parse_tree", tree.has_value() ? grammar::RenderTreeJson(
                                                grammar::IemaGrammar(), *tree)
                                          : json(nullptr)}};
}

std::string SerializeBundle(const json& bundle) {
  const std::string text =
      bundle.dump(-1, ' ', false, json::error_handler_t::replace);
  std::string out;
  out.reserve(text.size());
  // These characters only occur inside JSON strings, where the escape
  // denotes the same character.
  for (const char c : text) {
    switch (c) {
      case '<':
        out += "\\u003c";
        break;
      case '>':
        out += "\\u003e";
        break;
      case '&':
        out += "\\u0026";
        break;
      default:
        out += c;
    }
  }
  return out;
}

absl::StatusOr<json> ParseBundle(std::string_view text) {
  json bundle = json::parse(text, nullptr, false);
  if (bundle.is_discarded()) return Malformed("not valid JSON");
  RETURN_IF_ERROR(ValidateBundle(bundle));
  return bundle;
}

absl::Status ValidateBundle(const json& bundle) {
  using T = json::value_t;
  if (!bundle.is_object()) return Malformed("not a JSON object");
  const auto version = bundle.find("iema-bundle");
  if (version == bundle.end() || !version->is_number_integer()) {
    return Malformed("missing \"iema-bundle\" version");
  }
  if (version->get<int64_t>() != kBundleVersion) {
    return absl::InvalidArgumentError(
        fmt::format("unsupported bundle version {} (expected {})",
                    version->get<int64_t>(), kBundleVersion));
  }
  const char* kKeys[] = {"iema-bundle", "seed",       "settings",
                         "dataset",     "model",      "grammar",
                         "history",     "next_steps", "parse_tree"};
  for (const auto& [key, value] : bundle.items()) {
    if (std::find(std::begin(kKeys), std::end(kKeys), key) == std::end(kKeys)) {
      return Malformed(fmt::format("unknown key \"{}\"", key));
    }
  }
  RETURN_IF_ERROR(Expect(bundle, "seed", T::number_unsigned, "bundle"));
  RETURN_IF_ERROR(Expect(bundle, "settings", T::object, "bundle"));
  RETURN_IF_ERROR(Expect(bundle["settings"], "instance_cap", T::number_unsigned,
                         "settings"));
  RETURN_IF_ERROR(
      Expect(bundle["settings"], "grid_size", T::number_unsigned, "settings"));
  RETURN_IF_ERROR(Expect(bundle, "dataset", T::object, "bundle"));
  const json& dataset = bundle["dataset"];
  RETURN_IF_ERROR(Expect(dataset, "name", T::string, "dataset"));
  RETURN_IF_ERROR(Expect(dataset, "n_rows", T::number_unsigned, "dataset"));
  RETURN_IF_ERROR(Expect(dataset, "target", T::string, "dataset"));
  RETURN_IF_ERROR(Expect(dataset, "fingerprint", T::string, "dataset"));
  RETURN_IF_ERROR(Expect(dataset, "columns", T::array, "dataset"));
  RETURN_IF_ERROR(Expect(bundle, "model", T::object, "bundle"));
  for (const char* key : {"id", "type", "task"}) {
    RETURN_IF_ERROR(Expect(bundle["model"], key, T::string, "model"));
  }
  RETURN_IF_ERROR(Expect(bundle, "grammar", T::object, "bundle"));
  ASSIGN_OR_RETURN(const grammar::Grammar embedded,
                   grammar::Grammar::FromJson(bundle["grammar"]));
  if (embedded.ToJson() != grammar::IemaGrammar().ToJson()) {
    return Malformed("embedded grammar differs from the built-in grammar");
  }

  RETURN_IF_ERROR(Expect(bundle, "history", T::array, "bundle"));
  const grammar::Grammar& g = grammar::IemaGrammar();
  std::vector<grammar::SymbolId> prefix;
  for (size_t i = 0; i < bundle["history"].size(); ++i) {
    const json& step = bundle["history"][i];
    const std::string where = fmt::format("history[{}]", i);
    if (!step.is_object()) return Malformed(where + " is not an object");
    RETURN_IF_ERROR(Expect(step, "step", T::number_unsigned, where));
    RETURN_IF_ERROR(Expect(step, "symbol", T::string, where));
    RETURN_IF_ERROR(Expect(step, "request", T::object, where));
    RETURN_IF_ERROR(Expect(step, "result", T::object, where));
    if (step["step"].get<size_t>() != i) {
      return Malformed(where + " has an out-of-order step number");
    }
    const std::string symbol = step["symbol"].get<std::string>();
    const SymbolTraits* traits = FindSymbolTraits(symbol);
    if (traits == nullptr) {
      return Malformed(
          fmt::format("{} has unknown symbol \"{}\"", where, symbol));
    }
    const json& result = step["result"];
    if (result.value("kind", "") != traits->payload_kind ||
        result.value("symbol", "") != symbol || !result.contains("cell")) {
      return Malformed(where + " has a payload that does not match its symbol");
    }
    if (step["request"].value("symbol", "") != symbol) {
      return Malformed(where + " has a request for a different symbol");
    }
    prefix.push_back(*g.Find(symbol));
  }
  const auto next = grammar::ComputeNextSteps(g, prefix);
  if (!next.ok()) {
    return Malformed(fmt::format("history is not a valid dialogue prefix ({})",
                                 std::string(next.status().message())));
  }

  RETURN_IF_ERROR(Expect(bundle, "next_steps", T::object, "bundle"));
  const json& recorded = bundle["next_steps"];
  RETURN_IF_ERROR(Expect(recorded, "terminals", T::array, "next_steps"));
  RETURN_IF_ERROR(Expect(recorded, "can_end", T::boolean, "next_steps"));
  if (recorded["terminals"] != json(g.DecodeSentence(next->terminals)) ||
      recorded["can_end"].get<bool>() != next->can_end) {
    return Malformed("\"next_steps\" does not match the history");
  }
  const auto parse_tree = bundle.find("parse_tree");
  if (parse_tree == bundle.end() ||
      !(parse_tree->is_null() || parse_tree->is_array())) {
    return Malformed("\"parse_tree\" must be null or a node list");
  }
  if (parse_tree->is_null() == next->can_end) {
    return Malformed("\"parse_tree\" must be present exactly for sentences");
  }
  return absl::OkStatus();
}

absl::StatusOr<Session> ImportBundle(
    const json& bundle, std::shared_ptr<const data::Dataset> dataset,
    model::ModelHandle model) {
  RETURN_IF_ERROR(ValidateBundle(bundle));
  if (dataset == nullptr || model == nullptr) {
    return absl::InvalidArgumentError("import needs a dataset and a model");
  }
  if (bundle["dataset"]["fingerprint"] != Hex(dataset->Fingerprint())) {
    return absl::FailedPreconditionError(fmt::format(
        "bundle was made on another dataset (fingerprint {}, given {})",
        bundle["dataset"]["fingerprint"].get<std::string>(),
        Hex(dataset->Fingerprint())));
  }
  if (bundle["model"] != ModelCardJson(*model)) {
    return absl::FailedPreconditionError(
        "bundle was made with another model (model cards differ)");
  }
  SessionOptions options;
  options.seed = bundle["seed"].get<uint64_t>();
  options.instance_cap = bundle["settings"]["instance_cap"].get<size_t>();
  options.grid_size = bundle["settings"]["grid_size"].get<size_t>();
  ASSIGN_OR_RETURN(Session session,
                   Session::Create(dataset, std::move(model), options));
  const json& history = bundle["history"];
  for (size_t i = 0; i < history.size(); ++i) {
    ASSIGN_OR_RETURN(const StepRequest request,
                     StepRequestFromJson(history[i]["request"], *dataset));
    auto applied = session.Apply(request);
    if (!applied.ok()) {
      return absl::Status(applied.status().code(),
                          fmt::format("replay of step {} failed: {}", i,
                                      std::string(applied.status().message())));
    }
    if (StepToJson(**applied, *dataset) != history[i]) {
      return absl::DataLossError(
          fmt::format("replay of step {} ({}) does not reproduce the recorded "
                      "payload",
                      i, request.symbol));
    }
  }
  return session;
}

}  // namespace iema::session
