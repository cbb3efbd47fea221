// Copyright (C) 2026 SceneForge contributors
// SPDX-License-Identifier: Apache-2.0
#include "sceneforge/image_io.hpp"

#include <png.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <memory>
#include <stdexcept>

namespace sceneforge {

namespace {

struct FileCloser {
    void operator()(std::FILE* f) const {
        if (f) std::fclose(f);
    }
};
using FilePtr = std::unique_ptr<std::FILE, FileCloser>;

}  // namespace

Image16 read_png16(const std::string& path) {
    FilePtr fp(std::fopen(path.c_str(), "rb"));
    if (!fp) throw std::runtime_error("cannot open PNG: " + path);

    png_structp png = png_create_read_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
    if (!png) throw std::runtime_error("png_create_read_struct failed");
    png_infop info = png_create_info_struct(png);
    if (!info) {
        png_destroy_read_struct(&png, nullptr, nullptr);
        throw std::runtime_error("png_create_info_struct failed");
    }
    if (setjmp(png_jmpbuf(png))) {
        png_destroy_read_struct(&png, &info, nullptr);
        throw std::runtime_error("libpng error while reading " + path);
    }

    png_init_io(png, fp.get());
    png_read_info(png, info);

    const png_uint_32 w = png_get_image_width(png, info);
    const png_uint_32 h = png_get_image_height(png, info);
    const int depth = png_get_bit_depth(png, info);
    const int color = png_get_color_type(png, info);
    if (color != PNG_COLOR_TYPE_GRAY || depth != 16) {
        png_destroy_read_struct(&png, &info, nullptr);
        throw std::runtime_error("expected 16-bit grayscale PNG: " + path);
    }
    png_set_swap(png);  // PNG is big-endian on the wire
    png_read_update_info(png, info);

    Image16 img(static_cast<int>(w), static_cast<int>(h));
    std::vector<png_bytep> rows(h);
    for (png_uint_32 y = 0; y < h; ++y)
        rows[y] = reinterpret_cast<png_bytep>(img.pixels.data() + size_t(y) * w);
    png_read_image(png, rows.data());
    png_read_end(png, nullptr);
    png_destroy_read_struct(&png, &info, nullptr);
    return img;
}

void write_png16(const std::string& path, const Image16& img) {
    namespace fs = std::filesystem;
    const fs::path target(path);
    if (target.has_parent_path()) fs::create_directories(target.parent_path());
    const std::string tmp = path + ".tmp";

    {
        FilePtr fp(std::fopen(tmp.c_str(), "wb"));
        if (!fp) throw std::runtime_error("cannot open for write: " + tmp);

        png_structp png =
            png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
        if (!png) throw std::runtime_error("png_create_write_struct failed");
        png_infop info = png_create_info_struct(png);
        if (!info) {
            png_destroy_write_struct(&png, nullptr);
            throw std::runtime_error("png_create_info_struct failed");
        }
        if (setjmp(png_jmpbuf(png))) {
            png_destroy_write_struct(&png, &info);
            throw std::runtime_error("libpng error while writing " + tmp);
        }

        png_init_io(png, fp.get());
        png_set_IHDR(png, info, img.width, img.height, 16, PNG_COLOR_TYPE_GRAY,
                     PNG_INTERLACE_NONE, PNG_COMPRESSION_TYPE_DEFAULT,
                     PNG_FILTER_TYPE_DEFAULT);
        png_write_info(png, info);
        png_set_swap(png);

        std::vector<png_bytep> rows(img.height);
        for (int y = 0; y < img.height; ++y)
            rows[y] = reinterpret_cast<png_bytep>(
                const_cast<uint16_t*>(img.pixels.data() + size_t(y) * img.width));
        png_write_image(png, rows.data());
        png_write_end(png, nullptr);
        png_destroy_write_struct(&png, &info);
    }
    fs::rename(tmp, target);
}

Image16 depth_to_png(const DepthMap& depth) {
    Image16 img(depth.width, depth.height);
    for (size_t i = 0; i < depth.values.size(); ++i) {
        if (!depth.valid[i]) continue;
        const double mm = std::round(double(depth.values[i]) * 1000.0);
        img.pixels[i] = static_cast<uint16_t>(std::clamp(mm, 1.0, 65535.0));
    }
    return img;
}

DepthMap png_to_depth(const Image16& img) {
    DepthMap d(img.width, img.height);
    for (size_t i = 0; i < img.pixels.size(); ++i) {
        if (img.pixels[i] == 0) continue;
        d.values[i] = static_cast<float>(img.pixels[i]) / 1000.0f;
        d.valid[i] = 1;
    }
    return d;
}

}  // namespace sceneforge
