// Copyright 2026 The spinboson Authors.
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

#include <optional>
#include <string>
#include <string_view>

#include <json.hpp>

#include "spinboson/kernel.hpp"

namespace spinboson {

inline constexpr const char* kKernelEnvVar = "SPINBOSON_KERNEL";

// {"mode": "indicator", "cutoff": 1.0}
// {"mode": "h_table" | "radial_table", "points": [[x, y], ...]}
// Throws ConfigError on anything malformed.
KernelSpec parse_kernel_spec(const nlohmann::json& doc);
KernelSpec parse_kernel_spec_text(std::string_view text);
KernelSpec load_kernel_spec(const std::string& path);

nlohmann::json kernel_spec_to_json(const KernelSpec& spec);

// Explicit path, else the file named by SPINBOSON_KERNEL, else the
// indicator kernel with cutoff 1.
KernelSpec resolve_kernel_spec(const std::optional<std::string>& path);

}  // namespace spinboson
