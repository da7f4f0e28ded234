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

#include "iema/session/step.h"

#include <array>
#include <set>

#include "fmt/format.h"
#include "iema/common/random.h"
#include "iema/common/status_macros.h"
#include "iema/grammar/iema_grammar.h"
#include "iema/local_explain/lime.h"
#include "iema/model/loss.h"

namespace iema::session {
namespace {

using nlohmann::json;
namespace t = grammar::terminal;

constexpr std::array<SymbolTraits, 18> kTraits = {{
    {t::kPairwiseCorrelation, false, false, true, "correlation_matrix"},
    {t::kGraphicalNetworks, false, false, true, "correlation_network"},
    {t::kScatterPlot, false, true, false, "data_profile"},
    {t::kMosaicPlot, false, true, false, "mosaic"},
    {t::kHistogram, false, true, false, "distribution"},
    {t::kBoxplot, false, true, false, "distribution"},
    {t::kBarplot, false, true, false, "distribution"},
    {t::kPermutationalImportance, false, false, true, "importance"},
    {t::kLocoImportance, false, false, true, "importance"},
    {t::kShapImportance, false, false, true, "importance"},
    {t::kPartialDependence, false, true, false, "model_profile"},
    {t::kAccumulatedLocal, false, true, false, "model_profile"},
    {t::kShapDependence, false, true, false, "model_profile"},
    {t::kShapAttribution, true, false, true, "attribution"},
    {t::kBdAttribution, true, false, true, "attribution"},
    {t::kLimeAttribution, true, false, true, "attribution"},
    {t::kCeterisParibus, true, true, false, "profile"},
    {t::kSelectVariable, false, true, false, "variable_selection"},
}};

// Typed access to a step's options; Finish() rejects keys nobody read.
class OptionReader {
 public:
  OptionReader(const json& options, std::string_view symbol)
      : options_(options), symbol_(symbol) {}

  absl::StatusOr<std::optional<size_t>> Count(const char* key, size_t min) {
    const json* value = Take(key);
    if (value == nullptr) return std::optional<size_t>();
    if (!value->is_number_integer() || value->get<int64_t>() < 0 ||
        value->get<uint64_t>() < min) {
      return Invalid(key, fmt::format("an integer >= {}", min));
    }
    return std::optional<size_t>(value->get<size_t>());
  }

  absl::StatusOr<std::optional<double>> Number(const char* key) {
    const json* value = Take(key);
    if (value == nullptr) return std::optional<double>();
    if (!value->is_number()) return Invalid(key, "a number");
    return std::optional<double>(value->get<double>());
  }

  absl::StatusOr<std::optional<std::string>> String(const char* key) {
    const json* value = Take(key);
    if (value == nullptr) return std::optional<std::string>();
    if (!value->is_string()) return Invalid(key, "a string");
    return std::optional<std::string>(value->get<std::string>());
  }

  absl::StatusOr<std::optional<std::vector<std::string>>> Strings(
      const char* key) {
    const json* value = Take(key);
    if (value == nullptr) return std::optional<std::vector<std::string>>();
    if (!value->is_array()) return Invalid(key, "a list of strings");
    std::vector<std::string> out;
    for (const json& item : *value) {
      if (!item.is_string()) return Invalid(key, "a list of strings");
      out.push_back(item.get<std::string>());
    }
    return std::optional<std::vector<std::string>>(std::move(out));
  }

  absl::Status Finish() const {
    std::vector<std::string> unknown;
    for (const auto& [key, value] : options_.items()) {
      if (!read_.count(key)) unknown.push_back(key);
    }
    if (unknown.empty()) return absl::OkStatus();
    return absl::InvalidArgumentError(fmt::format(
        "unknown option(s) for {}: {}", symbol_, fmt::join(unknown, ", ")));
  }

 private:
  const json* Take(const char* key) {
    read_.insert(key);
    const auto it = options_.find(key);
    return it == options_.end() ? nullptr : &*it;
  }

  absl::Status Invalid(const char* key, std::string_view expected) const {
    return absl::InvalidArgumentError(
        fmt::format("option \"{}\" of {} must be {}", key, symbol_, expected));
  }

  const json& options_;
  std::string_view symbol_;
  std::set<std::string> read_;
};

// "mode" and "permutations". Exact by default while the variable count
// allows it, else 100 sampled permutations.
absl::StatusOr<local::ShapOptions> ReadShapOptions(OptionReader& reader,
                                                   const StepInputs& inputs,
                                                   uint64_t seed) {
  ASSIGN_OR_RETURN(const auto mode, reader.String("mode"));
  ASSIGN_OR_RETURN(const auto permutations, reader.Count("permutations", 1));
  ASSIGN_OR_RETURN(const auto background, reader.Count("background_rows", 0));
  local::ShapOptions options;
  if (mode.has_value() && *mode != "exact" && *mode != "sampling") {
    return absl::InvalidArgumentError(fmt::format(
        "option \"mode\" must be \"exact\" or \"sampling\", got \"{}\"",
        *mode));
  }
  const bool sampling =
      mode.has_value()
          ? *mode == "sampling"
          : permutations.has_value() ||
                inputs.dataset->num_features() > local::kMaxExactShapVariables;
  if (sampling)
    options = local::ShapOptions::Sampling(permutations.value_or(100), seed);
  options.background_rows = background.value_or(0);
  return options;
}

absl::StatusOr<std::optional<model::LossKind>> ReadLoss(OptionReader& reader) {
  ASSIGN_OR_RETURN(const auto name, reader.String("loss"));
  if (!name.has_value()) return std::optional<model::LossKind>();
  ASSIGN_OR_RETURN(const model::LossKind kind, model::ParseLoss(*name));
  return std::optional<model::LossKind>(kind);
}

absl::StatusOr<data::CorrelationMethod> ReadNumericMethod(
    OptionReader& reader) {
  ASSIGN_OR_RETURN(const auto name, reader.String("method"));
  if (!name.has_value()) return data::CorrelationMethod::kPearson;
  ASSIGN_OR_RETURN(const auto method, data::ParseCorrelationMethod(*name));
  if (method != data::CorrelationMethod::kPearson &&
      method != data::CorrelationMethod::kSpearman) {
    return absl::InvalidArgumentError(
        "option \"method\" must be \"pearson\" or \"spearman\"");
  }
  return method;
}

global::InstanceSubset Subset(const StepInputs& inputs,
                              std::optional<size_t> cap, uint64_t seed) {
  return {cap.value_or(inputs.defaults.instance_cap), seed};
}

absl::StatusOr<std::vector<double>> Instance(const StepInputs& inputs) {
  if (!inputs.instance.has_value()) {
    return absl::InvalidArgumentError("this step needs an instance");
  }
  return local::ResolveInstance(*inputs.dataset, *inputs.instance);
}

absl::StatusOr<std::string> Variable(const StepInputs& inputs) {
  if (!inputs.variable.has_value()) {
    return absl::InvalidArgumentError("this step needs a variable");
  }
  return *inputs.variable;
}

template <typename T>
absl::StatusOr<ExplanationResult> Wrap(absl::StatusOr<T> result) {
  if (!result.ok()) return result.status();
  return ExplanationResult(*std::move(result));
}

absl::StatusOr<ExplanationResult> Compute(const StepRequest& request,
                                          const StepInputs& inputs,
                                          OptionReader& reader) {
  const data::Dataset& d = *inputs.dataset;
  const model::Model& m = *inputs.model;
  const std::string& s = request.symbol;
  const uint64_t seed = DeriveSeed(inputs.defaults.seed, inputs.index);

  if (s == t::kSelectVariable) {
    RETURN_IF_ERROR(reader.Finish());
    ASSIGN_OR_RETURN(const std::string variable, Variable(inputs));
    ASSIGN_OR_RETURN(const size_t j, local::FeatureIndex(d, variable));
    return ExplanationResult(
        VariableSelection{variable, d.feature_schema().variables[j].kind});
  }
  if (s == t::kShapAttribution) {
    ASSIGN_OR_RETURN(const auto options, ReadShapOptions(reader, inputs, seed));
    RETURN_IF_ERROR(reader.Finish());
    ASSIGN_OR_RETURN(const auto x, Instance(inputs));
    return Wrap(local::ShapAttribution(m, d, x, options));
  }
  if (s == t::kBdAttribution) {
    local::BreakdownOptions options;
    ASSIGN_OR_RETURN(options.order, reader.Strings("order"));
    ASSIGN_OR_RETURN(const auto background, reader.Count("background_rows", 0));
    options.background_rows = background.value_or(0);
    options.seed = seed;
    RETURN_IF_ERROR(reader.Finish());
    ASSIGN_OR_RETURN(const auto x, Instance(inputs));
    return Wrap(local::BreakdownAttribution(m, d, x, options));
  }
  if (s == t::kLimeAttribution) {
    local::LimeOptions options;
    ASSIGN_OR_RETURN(const auto n_samples, reader.Count("n_samples", 1));
    ASSIGN_OR_RETURN(options.kernel_width, reader.Number("kernel_width"));
    ASSIGN_OR_RETURN(options.top_k, reader.Count("top_k", 1));
    options.n_samples = n_samples.value_or(options.n_samples);
    options.seed = seed;
    RETURN_IF_ERROR(reader.Finish());
    ASSIGN_OR_RETURN(const auto x, Instance(inputs));
    return Wrap(local::LimeAttribution(m, d, x, options));
  }
  if (s == t::kCeterisParibus) {
    ASSIGN_OR_RETURN(const auto grid, reader.Count("grid_size", 2));
    RETURN_IF_ERROR(reader.Finish());
    ASSIGN_OR_RETURN(const auto x, Instance(inputs));
    ASSIGN_OR_RETURN(const std::string variable, Variable(inputs));
    return Wrap(local::CeterisParibus(
        m, d, x, variable, grid.value_or(inputs.defaults.grid_size)));
  }
  if (s == t::kPartialDependence) {
    ASSIGN_OR_RETURN(const auto grid, reader.Count("grid_size", 2));
    ASSIGN_OR_RETURN(const auto cap, reader.Count("instance_cap", 0));
    RETURN_IF_ERROR(reader.Finish());
    ASSIGN_OR_RETURN(const std::string variable, Variable(inputs));
    return Wrap(global::PartialDependence(
        m, d, variable, grid.value_or(inputs.defaults.grid_size),
        Subset(inputs, cap, seed)));
  }
  if (s == t::kAccumulatedLocal) {
    ASSIGN_OR_RETURN(const auto bins, reader.Count("bins", 1));
    RETURN_IF_ERROR(reader.Finish());
    ASSIGN_OR_RETURN(const std::string variable, Variable(inputs));
    return Wrap(global::AccumulatedLocalEffects(
        m, d, variable, bins.value_or(global::kDefaultAleBins)));
  }
  if (s == t::kShapDependence) {
    ASSIGN_OR_RETURN(const auto options, ReadShapOptions(reader, inputs, seed));
    ASSIGN_OR_RETURN(const auto cap, reader.Count("instance_cap", 0));
    RETURN_IF_ERROR(reader.Finish());
    ASSIGN_OR_RETURN(const std::string variable, Variable(inputs));
    return Wrap(global::ShapDependence(m, d, variable, options,
                                       Subset(inputs, cap, seed)));
  }
  if (s == t::kPermutationalImportance) {
    ASSIGN_OR_RETURN(const auto loss, ReadLoss(reader));
    ASSIGN_OR_RETURN(const auto repeats, reader.Count("b_repeats", 1));
    RETURN_IF_ERROR(reader.Finish());
    return Wrap(global::PermutationImportance(
        m, d, loss, repeats.value_or(global::kDefaultPermutationRepeats),
        seed));
  }
  if (s == t::kLocoImportance) {
    ASSIGN_OR_RETURN(const auto loss, ReadLoss(reader));
    RETURN_IF_ERROR(reader.Finish());
    return Wrap(global::LocoImportance(m, d, loss));
  }
  if (s == t::kShapImportance) {
    ASSIGN_OR_RETURN(const auto options, ReadShapOptions(reader, inputs, seed));
    ASSIGN_OR_RETURN(const auto cap, reader.Count("instance_cap", 0));
    RETURN_IF_ERROR(reader.Finish());
    return Wrap(
        global::ShapImportance(m, d, options, Subset(inputs, cap, seed)));
  }
  if (s == t::kHistogram || s == t::kBoxplot || s == t::kBarplot) {
    const data::DistributionKind kind =
        s == t::kHistogram ? data::DistributionKind::kHistogram
        : s == t::kBoxplot ? data::DistributionKind::kBoxplot
                           : data::DistributionKind::kBarplot;
    RETURN_IF_ERROR(reader.Finish());
    ASSIGN_OR_RETURN(const std::string variable, Variable(inputs));
    return Wrap(data::SummarizeDistribution(d, variable, kind));
  }
  if (s == t::kScatterPlot) {
    ASSIGN_OR_RETURN(const auto bins, reader.Count("bins", 1));
    RETURN_IF_ERROR(reader.Finish());
    ASSIGN_OR_RETURN(const std::string variable, Variable(inputs));
    // The scatter sample is drawn with the session seed itself, so every
    // scatter of a session shows the same rows.
    return Wrap(data::ComputeDataProfile(d, variable, bins.value_or(10),
                                         inputs.defaults.seed));
  }
  if (s == t::kMosaicPlot) {
    ASSIGN_OR_RETURN(const auto other, reader.String("variable_b"));
    RETURN_IF_ERROR(reader.Finish());
    ASSIGN_OR_RETURN(const std::string variable, Variable(inputs));
    if (!other.has_value()) {
      return absl::InvalidArgumentError(
          "Mosaic_Plot needs option \"variable_b\"");
    }
    return Wrap(data::ComputeMosaicTable(d, variable, *other));
  }
  if (s == t::kPairwiseCorrelation) {
    ASSIGN_OR_RETURN(const auto method, ReadNumericMethod(reader));
    RETURN_IF_ERROR(reader.Finish());
    return Wrap(data::PairwiseCorrelation(d, method));
  }
  if (s == t::kGraphicalNetworks) {
    ASSIGN_OR_RETURN(const auto method, ReadNumericMethod(reader));
    ASSIGN_OR_RETURN(const auto threshold, reader.Number("threshold"));
    RETURN_IF_ERROR(reader.Finish());
    return Wrap(data::BuildCorrelationNetwork(
        d, threshold.value_or(data::kDefaultNetworkThreshold), method));
  }
  return absl::InvalidArgumentError(
      fmt::format("unknown step symbol \"{}\"", s));
}

}  // namespace

const SymbolTraits* FindSymbolTraits(std::string_view symbol) {
  for (const SymbolTraits& traits : kTraits) {
    if (traits.symbol == symbol) return &traits;
  }
  return nullptr;
}

absl::StatusOr<StepRequest> StepRequestFromJson(const json& value,
                                                const data::Dataset& dataset) {
  if (!value.is_object()) {
    return absl::InvalidArgumentError("a step must be a JSON object");
  }
  for (const auto& [key, item] : value.items()) {
    if (key != "symbol" && key != "instance" && key != "variable" &&
        key != "options") {
      return absl::InvalidArgumentError(
          fmt::format("unknown step field \"{}\"", key));
    }
  }
  StepRequest request;
  const auto symbol = value.find("symbol");
  if (symbol == value.end() || !symbol->is_string()) {
    return absl::InvalidArgumentError("a step needs a \"symbol\" string");
  }
  request.symbol = symbol->get<std::string>();
  if (const auto it = value.find("instance");
      it != value.end() && !it->is_null()) {
    ASSIGN_OR_RETURN(request.instance, local::InstanceFromJson(*it, dataset));
  }
  if (const auto it = value.find("variable");
      it != value.end() && !it->is_null()) {
    if (!it->is_string()) {
      return absl::InvalidArgumentError("step \"variable\" must be a string");
    }
    request.variable = it->get<std::string>();
  }
  if (const auto it = value.find("options");
      it != value.end() && !it->is_null()) {
    if (!it->is_object()) {
      return absl::InvalidArgumentError("step \"options\" must be an object");
    }
    request.options = *it;
  }
  return request;
}

json StepRequestToJson(const StepRequest& request,
                       const data::Dataset& dataset) {
  json out = {{"symbol", request.symbol}};
  if (request.instance.has_value()) {
    out["instance"] = local::InstanceToJson(*request.instance, dataset);
  }
  if (request.variable.has_value()) out["variable"] = *request.variable;
  if (!request.options.empty()) out["options"] = request.options;
  return out;
}

absl::StatusOr<ExplanationResult> ComputeStep(const StepRequest& request,
                                              const StepInputs& inputs) {
  OptionReader reader(request.options, request.symbol);
  return Compute(request, inputs, reader);
}

}  // namespace iema::session
