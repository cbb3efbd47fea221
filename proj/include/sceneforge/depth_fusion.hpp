// Copyright (C) 2026 SceneForge contributors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "sceneforge/geometry.hpp"

#include <array>
#include <cstdint>
#include <functional>
#include <vector>

namespace sceneforge {

/// Sparse SfM point cloud with per-point observation counts.
struct SparseCloud {
    std::vector<Eigen::Vector3d> points;
    std::vector<int> observations;  // >= 1 per point
};

/// Truncated signed distance grid. Distances are stored normalized by the
/// truncation band, so |dist| <= 1 everywhere; untouched voxels have
/// weight == 0.
struct TsdfVolume {
    Eigen::Vector3d origin = Eigen::Vector3d::Zero();  // min corner, meters
    double voxel_size = 0.02;
    Eigen::Vector3i dims = Eigen::Vector3i::Zero();
    double trunc = 0.08;  // tau, meters
    float max_weight = 64.f;
    std::vector<float> dist;    // normalized signed distance, [-1, 1]
    std::vector<float> weight;  // accumulated, [0, max_weight]

    TsdfVolume() = default;
    /// Grid covering [origin, origin + dims * voxel_size). trunc defaults to
    /// 4 * voxel_size when not given.
    TsdfVolume(const Eigen::Vector3d& origin_, double voxel_size_, const Eigen::Vector3i& dims_,
               double trunc_ = 0.0, float max_weight_ = 64.f);

    size_t voxel_count() const { return dist.size(); }
    size_t idx(int x, int y, int z) const {
        return (size_t(z) * dims.y() + y) * dims.x() + x;
    }
    Eigen::Vector3d voxel_center(int x, int y, int z) const {
        return origin + voxel_size * Eigen::Vector3d(x + 0.5, y + 0.5, z + 0.5);
    }
    /// Smallest grid aligned to `voxel_size` that covers `box`.
    static TsdfVolume covering(const Aabb& box, double voxel_size, double trunc = 0.0,
                               float max_weight = 64.f);
};

struct TriangleMesh {
    std::vector<Eigen::Vector3d> vertices;
    std::vector<std::array<int32_t, 3>> triangles;
};

/// Render the sparse cloud into a depth map: every visible point writes its
/// camera depth to its nearest pixel, collisions keep the smaller depth.
DepthMap sparse_depth_prior(const SparseCloud& cloud, const Pose& pose, const Intrinsics& k);

/// Invalidate depths beyond max_depth.
DepthMap truncate_depth(const DepthMap& depth, double max_depth);

/// Fuse one depth frame into the volume (voxel-centric projective update):
/// for every voxel seen at a valid pixel with sdf = measured - voxel_depth
/// and sdf > -trunc,
///   D <- (W * D + clamp(sdf / trunc, -1, 1)) / (W + 1),  W <- min(W + 1, max_weight).
/// Throws std::invalid_argument when depth and intrinsics sizes disagree.
void integrate_frame(TsdfVolume& volume, const DepthMap& depth, const Pose& pose,
                     const Intrinsics& k);
/// Reference single-threaded implementation; bitwise-identical results.
void integrate_frame_serial(TsdfVolume& volume, const DepthMap& depth, const Pose& pose,
                            const Intrinsics& k);

/// Marching cubes at the zero isolevel, restricted to cells whose 8 corners
/// all carry weight > 0. Vertices on shared cell edges are welded exactly.
TriangleMesh extract_mesh(const TsdfVolume& volume);
TriangleMesh extract_mesh_serial(const TsdfVolume& volume);

/// Fill a volume from an analytic signed-distance function (meters); weights
/// set to 1 everywhere. Intended for tests and benchmarks.
void fill_from_sdf(TsdfVolume& volume, const std::function<double(const Eigen::Vector3d&)>& sdf);

}  // namespace sceneforge
