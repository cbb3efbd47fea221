// Copyright (C) 2026 SceneForge contributors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "sceneforge/geometry.hpp"
#include "sceneforge/image_io.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace sceneforge {

/// Box-world scene with exact ground truth. Rooms are axis-aligned shells
/// at the origin; objects are axis-aligned boxes inside them.
struct SceneSpec {
    uint64_t seed = 0;
    Eigen::Vector3d room_extents = Eigen::Vector3d(6, 5, 3);  // meters
    struct Object {
        std::string category;
        Aabb box;
    };
    std::vector<Object> objects;           // pairwise disjoint unless stacked
    std::vector<GroundPose> trajectory;    // camera script
    double camera_height = 1.5;
};

struct SynthConfig {
    int min_objects = 3;
    int max_objects = 8;
    std::vector<std::string> palette = {"chair",   "table", "sofa",  "lamp",
                                        "cabinet", "plant", "shelf", "bed"};
    Eigen::Vector3d room_extents = Eigen::Vector3d(6, 5, 3);
    int trajectory_steps = 40;
    double camera_height = 1.5;
    int render_width = 160;
    int render_height = 120;
    double render_fov_deg = 70.0;
};

/// Deterministic scene generation. Guarantees at least one category with two
/// or more instances and at least two categories with exactly one instance,
/// so every question generator has material to work with.
SceneSpec gen_scene(uint64_t seed, const SynthConfig& config = {});

/// Intrinsics matching the configured render resolution and field of view.
Intrinsics synth_intrinsics(const SynthConfig& config = {});

struct RayHit {
    double depth = 0;   // camera-frame z of the nearest hit
    int object_id = 0;  // 1-based object index; 0 = room shell
};

/// Nearest-hit query shared by depth and mask rendering, so the two outputs
/// agree on every pixel by construction.
std::optional<RayHit> raycast(const SceneSpec& spec, const Pose& pose, const Intrinsics& k,
                              int u, int v, double max_range = 100.0);

DepthMap render_depth(const SceneSpec& spec, const Pose& pose, const Intrinsics& k,
                      double max_range = 100.0);
DepthMap render_depth_serial(const SceneSpec& spec, const Pose& pose, const Intrinsics& k,
                             double max_range = 100.0);

/// Label image: object index + 1 at the nearest hit, 0 for walls/floor.
Image16 render_masks(const SceneSpec& spec, const Pose& pose, const Intrinsics& k,
                     double max_range = 100.0);

/// Analytic ground truth used as the oracle for the reconstruction,
/// scene-graph, and question-generation stages.
struct GroundTruth {
    std::map<std::string, int> category_counts;
    std::map<std::string, int> unique_category_object;   // category -> object index
    double room_area = 0;                                // x extent * y extent
    std::vector<double> longest_dimension_cm;            // per object
    /// Exact closest surface distance between two object boxes.
    static double box_gap(const Aabb& a, const Aabb& b);
};

GroundTruth gt_answers(const SceneSpec& spec);

/// Camera pose for one trajectory node.
Pose synth_camera(const SceneSpec& spec, size_t traj_index);

/// Distance from a point to the union of all scene surfaces (room shell and
/// object boxes); the reference for mesh-accuracy checks.
double distance_to_surface(const SceneSpec& spec, const Eigen::Vector3d& p);

}  // namespace sceneforge
