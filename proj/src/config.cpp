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

#include "spinboson/config.hpp"

#include <cstdlib>
#include <fstream>
#include <sstream>

#include "spinboson/error.hpp"

namespace spinboson {

using nlohmann::json;

namespace {

double number(const json& v, const char* what) {
  if (!v.is_number()) throw ConfigError(std::string(what) + " must be a number");
  return v.get<double>();
}

}  // namespace

KernelSpec parse_kernel_spec(const json& doc) {
  if (!doc.is_object()) throw ConfigError("kernel config must be a JSON object");
  if (!doc.contains("mode") || !doc["mode"].is_string()) throw ConfigError("kernel config needs a string \"mode\"");
  const std::string mode = doc["mode"].get<std::string>();
  KernelSpec spec;
  if (mode == "indicator" || mode == "builtin_indicator") {
    spec = KernelSpec::indicator(doc.contains("cutoff") ? number(doc["cutoff"], "cutoff") : 1.0);
  } else if (mode == "h_table" || mode == "radial_table") {
    if (!doc.contains("points") || !doc["points"].is_array()) throw ConfigError("table mode needs \"points\"");
    std::vector<std::array<double, 2>> pts;
    for (const json& row : doc["points"]) {
      if (!row.is_array() || row.size() != 2) throw ConfigError("each table point must be [x, y]");
      pts.push_back({number(row[0], "table abscissa"), number(row[1], "table value")});
    }
    spec = mode == "h_table" ? KernelSpec::h_table(std::move(pts)) : KernelSpec::radial_table(std::move(pts));
  } else {
    throw ConfigError("unknown kernel mode '" + mode + "'");
  }
  spec.validate();
  return spec;
}

KernelSpec parse_kernel_spec_text(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("kernel config is not valid JSON: ") + e.what());
  }
  return parse_kernel_spec(doc);
}

KernelSpec load_kernel_spec(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read kernel config '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_kernel_spec_text(ss.str());
}

json kernel_spec_to_json(const KernelSpec& spec) {
  json out;
  switch (spec.mode) {
    case KernelMode::indicator:
      out["mode"] = "indicator";
      out["cutoff"] = spec.cutoff;
      return out;
    case KernelMode::h_table:
      out["mode"] = "h_table";
      break;
    case KernelMode::radial_table:
      out["mode"] = "radial_table";
      break;
  }
  out["points"] = json::array();
  for (const auto& pt : spec.points) out["points"].push_back({pt[0], pt[1]});
  return out;
}

KernelSpec resolve_kernel_spec(const std::optional<std::string>& path) {
  if (path) return load_kernel_spec(*path);
  if (const char* env = std::getenv(kKernelEnvVar); env && *env) return load_kernel_spec(env);
  return KernelSpec::indicator(1.0);
}

}  // namespace spinboson
