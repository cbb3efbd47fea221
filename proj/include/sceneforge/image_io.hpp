// Copyright (C) 2026 SceneForge contributors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "sceneforge/geometry.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace sceneforge {

/// 16-bit single-channel image, row-major. Depth maps store millimeters
/// (0 = invalid); mask images store instance labels (0 = background).
struct Image16 {
    int width = 0, height = 0;
    std::vector<uint16_t> pixels;

    Image16() = default;
    Image16(int w, int h) : width(w), height(h), pixels(size_t(w) * h, 0) {}
    uint16_t at(int x, int y) const { return pixels[size_t(y) * width + x]; }
    void set(int x, int y, uint16_t v) { pixels[size_t(y) * width + x] = v; }
};

Image16 read_png16(const std::string& path);
void write_png16(const std::string& path, const Image16& img);

// Depth <-> PNG conversion at millimeter precision.
Image16 depth_to_png(const DepthMap& depth);
DepthMap png_to_depth(const Image16& img);

}  // namespace sceneforge
