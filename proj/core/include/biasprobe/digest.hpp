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

#include <string>
#include <string_view>

#include <nlohmann/json.hpp>

namespace biasprobe {

/// "fnv1a64:" followed by 16 hex digits, over the bytes given.
std::string fnv1a_digest(std::string_view bytes);

/// Digest of the canonical (sorted-key, compact) serialization of a config.
std::string config_digest(const nlohmann::json& config);

}  // namespace biasprobe
