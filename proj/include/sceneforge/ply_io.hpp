// Copyright (C) 2026 SceneForge contributors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <Eigen/Core>

#include <array>
#include <string>
#include <vector>

namespace sceneforge {

struct TriangleMesh;

// Binary little-endian PLY. Vertices are float32 x,y,z; faces are
// (uchar count, int32 x3).
void write_mesh_ply(const std::string& path, const TriangleMesh& mesh);
TriangleMesh read_mesh_ply(const std::string& path);

void write_points_ply(const std::string& path, const std::vector<Eigen::Vector3d>& points);
std::vector<Eigen::Vector3d> read_points_ply(const std::string& path);

}  // namespace sceneforge
