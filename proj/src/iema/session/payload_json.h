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

#ifndef IEMA_SESSION_PAYLOAD_JSON_H_
#define IEMA_SESSION_PAYLOAD_JSON_H_

#include <string_view>

#include "iema/session/step.h"
#include "json.hpp"

namespace iema::session {

// Payload document of a step result. Every payload carries "kind" (see
// SymbolTraits), "symbol", and "cell": the taxonomy nonterminal deriving the
// symbol, null for Select_Variable.
nlohmann::json PayloadToJson(std::string_view symbol,
                             const ExplanationResult& result);

}  // namespace iema::session

#endif  // IEMA_SESSION_PAYLOAD_JSON_H_
