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

/// Per-frame 2D instance labels (0 = background) with optional category
/// names per label.
struct FrameMaskSet {
    int64_t frame_id = 0;
    Image16 labels;
    std::map<int, std::string> categories;  // label -> category
};

/// One 2D mask lifted to a 3D point set.
struct MaskNode {
    int64_t frame_id = 0;
    int mask_label = 0;
    std::vector<Eigen::Vector3d> points;
    std::optional<std::string> category;
};

/// A merged 3D object instance.
struct Instance3D {
    int instance_id = 0;
    std::vector<Eigen::Vector3d> points;
    Aabb aabb;
    Eigen::Vector3d centroid = Eigen::Vector3d::Zero();
    std::optional<std::string> category;
    std::vector<std::pair<int64_t, int>> members;  // (frame_id, mask_label)
};

/// Everything known about one frame, keyed by frame_id in the maps below.
struct FrameData {
    Pose pose;
    DepthMap depth;
    FrameMaskSet masks;
};

struct LiftParams {
    int min_pixels = 50;          // smallest 2D mask worth lifting
    int neighbor_window = 10;     // max frame distance for consensus edges
    double merge_threshold = 0.7; // consensus rate needed to join masks
    double iou_threshold = 0.5;   // spatial agreement needed to merge instances
    int min_instance_points = 100;
    double voxel_size = 0.02;     // reconstruction scale; drives depth_tolerance
    double depth_tolerance() const { return std::max(3.0 * voxel_size, 0.05); }
    double agreement_voxel = 0.05;  // voxel size for spatial_agreement
};

/// Lift the masks of one frame: one node per label with at least min_pixels
/// valid-depth pixels. Throws std::invalid_argument on size mismatch.
std::vector<MaskNode> lift_masks(const FrameMaskSet& masks, const DepthMap& depth,
                                 const Pose& pose, const Intrinsics& k, int min_pixels);

/// Cross-view agreement of two nodes from different frames: a point agrees
/// when it projects inside the other node's mask with matching depth; the
/// rate is min(agree(a->b), agree(b->a)).
double consensus_rate(const MaskNode& a, const MaskNode& b,
                      const std::map<int64_t, FrameData>& frames, const Intrinsics& k,
                      double depth_tolerance);

/// Connected components over the consensus graph; each component merges its
/// member points. Category by majority vote, ties to the lexicographically
/// smallest. Instances under min_instance_points are discarded as noise.
std::vector<Instance3D> cluster_masks(const std::vector<MaskNode>& nodes,
                                      const std::map<int64_t, FrameData>& frames,
                                      const Intrinsics& k, const LiftParams& params);

/// Voxelized point-set IoU at the given voxel size.
double spatial_agreement(const std::vector<Eigen::Vector3d>& a,
                         const std::vector<Eigen::Vector3d>& b, double voxel_size);

/// Greedy second-stage merge: repeatedly join the pair with the highest
/// spatial agreement >= iou_threshold (ties by instance id), then renumber.
std::vector<Instance3D> merge_by_spatial_agreement(std::vector<Instance3D> instances,
                                                   double iou_threshold, double voxel_size);

/// Recompute centroid/aabb from points (after any point edit).
void refresh_instance_geometry(Instance3D& instance);

}  // namespace sceneforge
