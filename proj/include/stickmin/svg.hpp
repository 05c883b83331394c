#pragma once

#include <filesystem>

#include "stickmin/polygon.hpp"

namespace stickmin {

/// Writes an orthographic diagram of the polygon viewed along direction,
/// with the under-strand broken at each crossing. If the direction is not
/// generic the projection is retried along deterministically perturbed
/// directions, so the output is a pure function of (poly, direction).
void export_projection_svg(const Polygon& poly, Vec3 direction,
                           const std::filesystem::path& path);

} // namespace stickmin
