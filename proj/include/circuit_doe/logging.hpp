// Copyright 2026 The Authors.
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

#ifndef CIRCUIT_DOE_LOGGING_HPP_
#define CIRCUIT_DOE_LOGGING_HPP_

#include <string_view>

namespace circuit_doe {

enum class LogLevel { kQuiet = 0, kInfo = 1, kDebug = 2 };

void set_log_level(LogLevel level);
LogLevel log_level();

// Writes "[circuit-doe] msg" to stderr when `level` is enabled.
void log_message(LogLevel level, std::string_view msg);

}  // namespace circuit_doe

#endif  // CIRCUIT_DOE_LOGGING_HPP_
