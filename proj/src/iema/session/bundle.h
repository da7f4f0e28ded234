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

// The explanation bundle: a versioned JSON record of a session.
//
//   {"iema-bundle": 1, "seed": ..., "settings": {...}, "dataset": {...},
//    "model": {...}, "grammar": {...}, "history": [...],
//    "next_steps": {"terminals": [...], "can_end": ...}, "parse_tree": ...}
//
// Keys are sorted at every level, so equal bundles serialize to equal bytes.
#ifndef IEMA_SESSION_BUNDLE_H_
#define IEMA_SESSION_BUNDLE_H_

#include <memory>
#include <string>
#include <string_view>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "iema/data/dataset.h"
#include "iema/model/model.h"
#include "iema/session/session.h"
#include "json.hpp"

namespace iema::session {

inline constexpr int kBundleVersion = 1;

// Column overview served as the dataset summary and embedded in bundles.
nlohmann::json DatasetSummaryJson(const data::Dataset& dataset);
nlohmann::json ModelCardJson(const model::Model& model);

nlohmann::json ExportBundle(const Session& session);

// Compact JSON with '<', '>' and '&' written as \u escapes, so the text can
// be placed inside an HTML script element unchanged. Invalid UTF-8 in
// strings is replaced rather than rejected.
std::string SerializeBundle(const nlohmann::json& bundle);

absl::StatusOr<nlohmann::json> ParseBundle(std::string_view text);

// Structural checks plus grammar consistency: the history symbols form a
// valid prefix and "next_steps" matches it.
absl::Status ValidateBundle(const nlohmann::json& bundle);

// Rebuilds the session by replaying the recorded requests on "dataset" and
// "model", which must match the bundle's fingerprint and model card. Fails
// if any replayed payload differs from the recorded one.
absl::StatusOr<Session> ImportBundle(
    const nlohmann::json& bundle, std::shared_ptr<const data::Dataset> dataset,
    model::ModelHandle model);

}  // namespace iema::session

#endif  // IEMA_SESSION_BUNDLE_H_
