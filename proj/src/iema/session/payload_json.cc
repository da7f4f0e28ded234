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

#include "iema/session/payload_json.h"

#include <string>

#include "iema/grammar/iema_grammar.h"

namespace iema::session {
namespace {

using nlohmann::json;

template <typename T>
json Optional(const std::optional<T>& value) {
  return value.has_value() ? json(*value) : json(nullptr);
}

json ToJson(const VariableSelection& selection) {
  return {{"variable", selection.variable},
          {"variable_kind", data::ColumnKindName(selection.kind)}};
}

json ToJson(const local::Attribution& a) {
  json contributions = json::array();
  for (const auto& c : a.contributions) {
    json item = {{"variable", c.variable}, {"value", c.value}};
    if (c.sd.has_value()) item["sd"] = *c.sd;
    if (c.coefficient.has_value()) item["coefficient"] = *c.coefficient;
    contributions.push_back(std::move(item));
  }
  return {{"method", local::AttributionMethodName(a.method)},
          {"baseline", a.baseline},
          {"prediction", a.prediction},
          {"contributions", std::move(contributions)},
          {"fidelity", Optional(a.fidelity)},
          {"permutations", Optional(a.permutations)}};
}

json ToJson(const local::Profile& p) {
  json anchor = nullptr;
  if (p.anchor.has_value()) {
    anchor = {{"x", p.anchor->x}, {"prediction", p.anchor->prediction}};
  }
  return {
      {"variable", p.variable}, {"variable_kind", data::ColumnKindName(p.kind)},
      {"grid", p.grid},         {"levels", p.levels},
      {"values", p.values},     {"anchor", std::move(anchor)}};
}

json ToJson(const global::ModelProfile& p) {
  json points = json::array();
  for (const auto& point : p.points) {
    points.push_back({{"row", point.row}, {"x", point.x}, {"phi", point.phi}});
  }
  return {{"method", global::ProfileMethodName(p.method)},
          {"variable", p.variable},
          {"variable_kind", data::ColumnKindName(p.kind)},
          {"levels", p.levels},
          {"grid", p.grid},
          {"values", p.values},
          {"bin_counts", p.bin_counts},
          {"points", std::move(points)},
          {"n_instances", p.n_instances}};
}

json ToJson(const global::ImportanceResult& r) {
  json variables = json::array();
  for (const auto& v : r.variables) {
    variables.push_back({{"variable", v.variable},
                         {"importance", v.importance},
                         {"spread", Optional(v.spread)},
                         {"repeats", v.repeats}});
  }
  return {{"method", global::ImportanceMethodName(r.method)},
          {"loss",
           r.loss.has_value() ? json(model::LossName(*r.loss)) : json(nullptr)},
          {"baseline_loss", Optional(r.baseline_loss)},
          {"baseline_value", Optional(r.baseline_value)},
          {"variables", std::move(variables)}};
}

json ToJson(const data::DistributionSummary& s) {
  json bins = json::array();
  for (const auto& bin : s.bins) {
    json item = {{"count", bin.count}};
    if (bin.interval.has_value()) {
      item["lower"] = bin.interval->first;
      item["upper"] = bin.interval->second;
    } else {
      item["label"] = bin.label;
    }
    bins.push_back(std::move(item));
  }
  json stats = nullptr;
  if (s.stats.has_value()) {
    const auto& b = *s.stats;
    stats = {{"min", b.min},
             {"q1", b.q1},
             {"median", b.median},
             {"q3", b.q3},
             {"max", b.max},
             {"mean", b.mean},
             {"lower_whisker", b.lower_whisker},
             {"upper_whisker", b.upper_whisker},
             {"outliers", b.outliers}};
  }
  return {{"variable", s.column},
          {"distribution", data::DistributionKindName(s.kind)},
          {"bins", std::move(bins)},
          {"stats", std::move(stats)},
          {"n_included", s.n_included}};
}

json ToJson(const data::CorrelationMatrix& m) {
  json values = json::array();
  json methods = json::array();
  for (size_t i = 0; i < m.size(); ++i) {
    json value_row = json::array();
    json method_row = json::array();
    for (size_t j = 0; j < m.size(); ++j) {
      value_row.push_back(Optional(m.value(i, j)));
      method_row.push_back(data::CorrelationMethodName(m.method(i, j)));
    }
    values.push_back(std::move(value_row));
    methods.push_back(std::move(method_row));
  }
  return {{"variables", m.variables},
          {"values", std::move(values)},
          {"methods", std::move(methods)}};
}

json ToJson(const data::CorrelationNetwork& n) {
  json edges = json::array();
  for (const auto& edge : n.edges) {
    edges.push_back({{"a", n.nodes[edge.a]},
                     {"b", n.nodes[edge.b]},
                     {"weight", edge.weight}});
  }
  return {{"nodes", n.nodes},
          {"edges", std::move(edges)},
          {"threshold", n.threshold}};
}

json ToJson(const data::DataProfile& p) {
  json curve = json::array();
  for (const auto& point : p.curve) {
    json item = {{"x", point.x},
                 {"mean_target", point.mean_target},
                 {"count", point.count}};
    if (p.kind == data::ColumnKind::kCategorical) {
      item["label"] = point.label;
    } else {
      item["lower"] = point.lower;
      item["upper"] = point.upper;
    }
    curve.push_back(std::move(item));
  }
  json scatter = json::array();
  for (const auto& point : p.scatter) {
    scatter.push_back({{"row", point.row}, {"x", point.x}, {"y", point.y}});
  }
  return {{"variable", p.variable},
          {"variable_kind", data::ColumnKindName(p.kind)},
          {"levels", p.levels},
          {"curve", std::move(curve)},
          {"scatter", std::move(scatter)}};
}

json ToJson(const data::MosaicTable& t) {
  json counts = json::array();
  for (size_t a = 0; a < t.levels_a.size(); ++a) {
    json row = json::array();
    for (size_t b = 0; b < t.levels_b.size(); ++b) row.push_back(t.count(a, b));
    counts.push_back(std::move(row));
  }
  return {{"var_a", t.var_a},
          {"var_b", t.var_b},
          {"levels_a", t.levels_a},
          {"levels_b", t.levels_b},
          {"counts", std::move(counts)},
          {"row_totals", t.row_totals},
          {"column_totals", t.column_totals},
          {"total", t.total}};
}

}  // namespace

json PayloadToJson(std::string_view symbol, const ExplanationResult& result) {
  json payload = std::visit([](const auto& r) { return ToJson(r); }, result);
  const SymbolTraits* traits = FindSymbolTraits(symbol);
  payload["kind"] = traits != nullptr ? traits->payload_kind : "unknown";
  payload["symbol"] = symbol;
  const auto cell = grammar::PreterminalOf(grammar::IemaGrammar(), symbol);
  payload["cell"] = cell.has_value() ? json(*cell) : json(nullptr);
  return payload;
}

}  // namespace iema::session
