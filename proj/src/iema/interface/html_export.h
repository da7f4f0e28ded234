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

#ifndef IEMA_INTERFACE_HTML_EXPORT_H_
#define IEMA_INTERFACE_HTML_EXPORT_H_

#include <string>
#include <string_view>

#include "absl/status/statusor.h"

namespace iema::interface {

// Element id of the embedded bundle document.
inline constexpr char kDataElementId[] = "iema-data";

// Minimal read-only viewer used when no dashboard bundle is supplied: one
// panel per step, the suggested next steps and the parse tree.
std::string_view BuiltinViewerScript();

// A single self-contained HTML file: the bundle, in its canonical
// serialization, inside <script type="application/json" id="iema-data">, and
// "ui_script" (or the built-in viewer when empty) inlined after it.
// Rejects text that is not a valid bundle.
absl::StatusOr<std::string> ExportHtml(std::string_view bundle_text,
                                       std::string_view ui_script = {});

// The embedded bundle text of an exported file.
absl::StatusOr<std::string> ExtractBundle(std::string_view html);

}  // namespace iema::interface

#endif  // IEMA_INTERFACE_HTML_EXPORT_H_
