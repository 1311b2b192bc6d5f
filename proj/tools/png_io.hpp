#pragma once

#include <filesystem>

#include "paltile/imageio.hpp"

namespace paltile::tools {

// Reads any 8/16-bit gray/palette/RGB/RGBA PNG as RGB888.
PatchImage read_png(const std::filesystem::path& path);

void write_png(const std::filesystem::path& path, const PatchImage& img);

}  // namespace paltile::tools
