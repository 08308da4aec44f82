#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <json.hpp>

namespace adsel {

std::string sha256_hex(std::string_view data);
std::string sha256_file(const std::filesystem::path& path);

// manifest.json: tool version, timestamp, resolved config and its hash,
// content digests of every ingested file, and the produced artifact names.
// Enough to rerun the invocation bit-identically.
nlohmann::json make_manifest(
    const nlohmann::json& config,
    const std::vector<std::pair<std::string, std::filesystem::path>>& inputs,
    const std::vector<std::string>& outputs);

void write_manifest(const std::filesystem::path& out_dir, const nlohmann::json& manifest);

}  // namespace adsel
