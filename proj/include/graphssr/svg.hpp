#pragma once

#include "graphssr/contraction.hpp"

#include <filesystem>
#include <string>

namespace graphssr {

// Heatmap of a slope surface over log10(gamma) x log10(eps), colour range
// [0, max(2, 4 alpha)] clamped, with the curve eps = gamma^(2 / min(1, alpha)) overlaid.
std::string heatmap_svg(const SlopeSurface& s, double alpha, const std::string& title);
void write_heatmap_svg(const std::filesystem::path& path, const SlopeSurface& s, double alpha,
                       const std::string& title);

}  // namespace graphssr
