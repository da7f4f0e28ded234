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

#ifndef IEMA_INTERFACE_CLI_H_
#define IEMA_INTERFACE_CLI_H_

#include <iosfwd>
#include <string>
#include <vector>

namespace iema::interface {

// The "iema" command line; "args" excludes the program name. Returns the
// process exit code: 0 on success, 1 for rejected sentences and failed
// steps, 2 for usage and input errors.
int RunCli(const std::vector<std::string>& args, std::istream& in,
           std::ostream& out, std::ostream& err);

}  // namespace iema::interface

#endif  // IEMA_INTERFACE_CLI_H_
