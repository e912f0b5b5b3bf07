// Copyright 2026 The biasprobe Authors
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

#pragma once

#include <string_view>

namespace biasprobe {

enum class LogLevel { debug, info, warn, error, off };

LogLevel parse_log_level(std::string_view name);

// Diagnostics go to standard error so results on standard output stay
// machine-readable. The default level is warn.
void set_log_level(LogLevel level);

}  // namespace biasprobe
