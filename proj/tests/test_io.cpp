// Copyright (C) 2026 SceneForge contributors
// SPDX-License-Identifier: Apache-2.0
#include "sceneforge/atomic_file.hpp"
#include "sceneforge/depth_fusion.hpp"
#include "sceneforge/image_io.hpp"
#include "sceneforge/json_convert.hpp"
#include "sceneforge/ply_io.hpp"
#include "sceneforge/pose_io.hpp"
#include "sceneforge/rng.hpp"

#include <doctest.h>

#include <filesystem>
#include <fstream>

using namespace sceneforge;
namespace fs = std::filesystem;

namespace {

fs::path temp_dir() {
    const fs::path dir = fs::temp_directory_path() / "sceneforge_io_test";
    fs::create_directories(dir);
    return dir;
}

}  // namespace

TEST_CASE("pose file round trip with comments") {
    const fs::path path = temp_dir() / "poses.txt";
    Rng rng(3);
    std::vector<Pose> poses;
    for (int i = 0; i < 10; ++i) {
        Pose p = pose_from_ground({rng.uniform(-4, 4), rng.uniform(-4, 4),
                                   rng.uniform(-180, 180)},
                                  1.2, i * 3);
        poses.push_back(p);
    }
    write_pose_file(path.string(), poses);

    const std::vector<Pose> loaded = read_pose_file(path.string());
    REQUIRE(loaded.size() == poses.size());
    for (size_t i = 0; i < poses.size(); ++i) {
        CHECK(loaded[i].frame_id == poses[i].frame_id);
        CHECK((loaded[i].rotation - poses[i].rotation).norm() < 1e-12);
        CHECK((loaded[i].translation - poses[i].translation).norm() < 1e-12);
        CHECK(loaded[i].rotation_valid());
    }
}

TEST_CASE("pose file rejects malformed lines and missing files") {
    const fs::path path = temp_dir() / "bad_poses.txt";
    std::ofstream(path) << "0 1 2 3\n";
    CHECK_THROWS(read_pose_file(path.string()));
    CHECK_THROWS_WITH_AS(read_pose_file("/nonexistent/poses.txt"),
                         doctest::Contains("/nonexistent/poses.txt"), std::runtime_error);
}

TEST_CASE("intrinsics JSON round trip and validation") {
    const fs::path path = temp_dir() / "intrinsics.json";
    Intrinsics k;
    k.fx = 123.5;
    k.fy = 124.25;
    k.cx = 79.5;
    k.cy = 59.5;
    k.width = 160;
    k.height = 120;
    write_intrinsics(path.string(), k);
    const Intrinsics loaded = read_intrinsics(path.string());
    CHECK(loaded.fx == k.fx);
    CHECK(loaded.fy == k.fy);
    CHECK(loaded.cx == k.cx);
    CHECK(loaded.cy == k.cy);
    CHECK(loaded.width == k.width);
    CHECK(loaded.height == k.height);

    std::ofstream(path) << R"({"fx": -1, "fy": 1, "cx": 0, "cy": 0, "width": 10, "height": 10})";
    CHECK_THROWS(read_intrinsics(path.string()));
}

TEST_CASE("16-bit PNG round trip preserves every pixel") {
    const fs::path path = temp_dir() / "img.png";
    Rng rng(9);
    Image16 img(37, 23);
    for (auto& p : img.pixels) p = uint16_t(rng.uniform_int(0, 65535));
    write_png16(path.string(), img);
    const Image16 loaded = read_png16(path.string());
    CHECK(loaded.width == img.width);
    CHECK(loaded.height == img.height);
    CHECK(loaded.pixels == img.pixels);
}

TEST_CASE("depth PNG conversion: millimeters, zero means invalid") {
    DepthMap d(4, 1);
    d.set(0, 0, 1.234f);
    d.set(2, 0, 0.0004f);  // rounds to zero mm, stored as the 1 mm floor
    const Image16 img = depth_to_png(d);
    CHECK(img.at(0, 0) == 1234);
    CHECK(img.at(1, 0) == 0);
    CHECK(img.at(2, 0) == 1);
    CHECK(img.at(3, 0) == 0);

    const DepthMap back = png_to_depth(img);
    CHECK(back.is_valid(0, 0));
    CHECK(back.at(0, 0) == doctest::Approx(1.234));
    CHECK_FALSE(back.is_valid(1, 0));
    CHECK_FALSE(back.is_valid(3, 0));
}

TEST_CASE("mesh PLY round trip") {
    const fs::path path = temp_dir() / "mesh.ply";
    TriangleMesh mesh;
    mesh.vertices = {{0, 0, 0}, {1, 0, 0}, {0, 1, 0}, {0, 0, 1}};
    mesh.triangles = {{0, 1, 2}, {0, 2, 3}};
    write_mesh_ply(path.string(), mesh);
    const TriangleMesh loaded = read_mesh_ply(path.string());
    REQUIRE(loaded.vertices.size() == 4);
    REQUIRE(loaded.triangles.size() == 2);
    CHECK(loaded.triangles == mesh.triangles);
    for (size_t i = 0; i < 4; ++i)
        CHECK((loaded.vertices[i] - mesh.vertices[i]).norm() < 1e-6);
}

TEST_CASE("points PLY round trip") {
    const fs::path path = temp_dir() / "points.ply";
    Rng rng(5);
    std::vector<Eigen::Vector3d> points;
    for (int i = 0; i < 100; ++i)
        points.push_back({rng.uniform(-10, 10), rng.uniform(-10, 10), rng.uniform(-10, 10)});
    write_points_ply(path.string(), points);
    const auto loaded = read_points_ply(path.string());
    REQUIRE(loaded.size() == points.size());
    for (size_t i = 0; i < points.size(); ++i)
        CHECK((loaded[i] - points[i]).norm() < 1e-5);  // float32 storage
}

TEST_CASE("jsonl round trip") {
    const fs::path path = temp_dir() / "rows.jsonl";
    std::vector<nlohmann::json> rows = {{{"a", 1}}, {{"b", "x"}}, {{"c", {1, 2, 3}}}};
    write_jsonl(path.string(), rows);
    CHECK(read_jsonl(path.string()) == rows);
}

TEST_CASE("atomic writes leave no temp file behind") {
    const fs::path path = temp_dir() / "atomic.txt";
    write_file_atomic(path.string(), "payload");
    CHECK(fs::exists(path));
    CHECK_FALSE(fs::exists(path.string() + ".tmp"));
}
