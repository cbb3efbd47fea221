// Copyright (C) 2026 SceneForge contributors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "sceneforge/geometry.hpp"

#include <string>
#include <vector>

namespace sceneforge {

// Pose file: plain text, one line per frame
//   frame_id tx ty tz qx qy qz qw
// with the quaternion scalar-last and camera-to-world convention.
// Lines starting with '#' are comments.
std::vector<Pose> read_pose_file(const std::string& path);
void write_pose_file(const std::string& path, const std::vector<Pose>& poses);

// Intrinsics: JSON object with keys fx, fy, cx, cy, width, height.
Intrinsics read_intrinsics(const std::string& path);
void write_intrinsics(const std::string& path, const Intrinsics& k);

}  // namespace sceneforge
