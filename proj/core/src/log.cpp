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

#include "biasprobe/log.hpp"

#include <memory>

#include <spdlog/sinks/stdout_sinks.h>

#include "biasprobe/error.hpp"
#include "logger.hpp"

namespace biasprobe {

spdlog::logger& logger() {
  static const std::shared_ptr<spdlog::logger> instance = [] {
    auto sink = std::make_shared<spdlog::sinks::stderr_sink_mt>();
    auto log = std::make_shared<spdlog::logger>("biasprobe", std::move(sink));
    log->set_pattern("biasprobe: %l: %v");
    log->set_level(spdlog::level::warn);
    return log;
  }();
  return *instance;
}

LogLevel parse_log_level(std::string_view name) {
  if (name == "debug") return LogLevel::debug;
  if (name == "info") return LogLevel::info;
  if (name == "warn" || name == "warning") return LogLevel::warn;
  if (name == "error") return LogLevel::error;
  if (name == "off") return LogLevel::off;
  throw Error("unknown log level: " + std::string(name) + "; expected debug, info, warn, error or off");
}

void set_log_level(LogLevel level) {
  switch (level) {
    case LogLevel::debug: logger().set_level(spdlog::level::debug); break;
    case LogLevel::info: logger().set_level(spdlog::level::info); break;
    case LogLevel::warn: logger().set_level(spdlog::level::warn); break;
    case LogLevel::error: logger().set_level(spdlog::level::err); break;
    case LogLevel::off: logger().set_level(spdlog::level::off); break;
  }
}

}  // namespace biasprobe
