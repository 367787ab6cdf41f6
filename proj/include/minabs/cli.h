// Copyright 2026 The minabs Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef MINABS_CLI_H_
#define MINABS_CLI_H_

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "minabs/core.h"

namespace minabs::cli {

inline constexpr const char* kToolVersion = "0.1.0";
inline constexpr int kSchemaVersion = 1;

enum ExitCode : int { kSuccess = 0, kValidationError = 1, kVerificationFailure = 2 };

// Parses "0.2", "-0.3+0.1i", "0.5i", "0.6-0.2j". Throws ValidationError.
Complex parse_complex(std::string_view text);

// Runs the command line (args excludes the program name). Data goes to `out`
// unless --out names a file; warnings and summaries go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace minabs::cli

#endif  // MINABS_CLI_H_
