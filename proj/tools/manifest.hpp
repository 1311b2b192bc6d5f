#pragma once

#include <filesystem>
#include <string>

#include "json.hpp"

namespace paltile::tools {

std::string sha256_file(const std::filesystem::path& path);

std::string utc_timestamp();

// Appends one JSON object as a single line to the manifest file.
void append_manifest(const std::filesystem::path& manifest_path, const nlohmann::json& entry);

}  // namespace paltile::tools
