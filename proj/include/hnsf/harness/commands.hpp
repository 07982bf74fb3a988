/*
 * Copyright 2026 The hnsf Authors. All rights reserved.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#ifndef HNSF_HARNESS_COMMANDS_HPP_
#define HNSF_HARNESS_COMMANDS_HPP_

#include "hnsf/harness/config.hpp"

#include <json.hpp>

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

namespace hnsf::harness {

enum ExitCode : int { kOk = 0, kConfigError = 2, kBlowUp = 3, kInternal = 4 };

struct CommandResult {
  int exit_code = kOk;
  /// Human-readable table, also written to summary.txt.
  std::string summary;
  /// Warnings that belong in the manifest (e.g. a regime outside the proven range).
  std::vector<std::string> flags;
};

/// Each command writes its artifacts into `out_dir` (created if needed) and
/// returns the summary; the caller adds the manifest. Config problems throw
/// ConfigError / RegularityError before any artifact is written.
CommandResult cmd_simulate(const RunConfig& cfg, const std::filesystem::path& out_dir);
CommandResult cmd_convergence(const RunConfig& cfg, const std::filesystem::path& out_dir);
CommandResult cmd_uniqueness(const RunConfig& cfg, const std::filesystem::path& out_dir);
CommandResult cmd_ou_stats(const RunConfig& cfg, const std::filesystem::path& out_dir);
CommandResult cmd_inequalities(const RunConfig& cfg, const std::filesystem::path& out_dir);
CommandResult cmd_alpha_sweep(const RunConfig& cfg, const std::filesystem::path& out_dir);

/// Lowercase hex SHA-256 of a file's bytes.
std::string sha256_file(const std::filesystem::path& path);

/// Manifest listing every regular file in out_dir (except the manifest
/// itself) with its size and checksum, sorted by name.
nlohmann::json make_manifest(const std::string& command, const RunConfig& cfg, const std::filesystem::path& out_dir,
                             double wall_seconds, const CommandResult& result);

/// Entry point shared by the executable and the tests. args[0] is the
/// program name. Returns the process exit code; failures also print one
/// JSON object line to `err` with keys error, exit_code, field, message.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace hnsf::harness

#endif  // HNSF_HARNESS_COMMANDS_HPP_
