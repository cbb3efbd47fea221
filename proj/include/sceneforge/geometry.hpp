// Copyright (C) 2026 SceneForge contributors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <Eigen/Core>
#include <Eigen/Geometry>

#include <cstdint>
#include <optional>
#include <vector>

namespace sceneforge {

// World convention used throughout: right-handed, z-up. The ground plane is
// x-y and yaw is measured about +z from +x, in degrees. The camera forward
// axis is +z of the camera frame (the optical axis), image right is +x and
// image down is +y.

/// Rigid camera-to-world transform.
struct Pose {
    int64_t frame_id = 0;
    Eigen::Matrix3d rotation = Eigen::Matrix3d::Identity();  // camera-to-world
    Eigen::Vector3d translation = Eigen::Vector3d::Zero();   // camera center, meters

    Eigen::Vector3d to_world(const Eigen::Vector3d& p_cam) const {
        return rotation * p_cam + translation;
    }
    Eigen::Vector3d to_camera(const Eigen::Vector3d& p_world) const {
        return rotation.transpose() * (p_world - translation);
    }
    /// Orthonormal with determinant +1, within tol.
    bool rotation_valid(double tol = 1e-6) const;
};

/// Pinhole camera, no distortion.
struct Intrinsics {
    double fx = 0, fy = 0;  // focal lengths, pixels
    double cx = 0, cy = 0;  // principal point, pixels
    int width = 0, height = 0;

    bool valid() const {
        return fx > 0 && fy > 0 && width > 0 && height > 0 &&
               cx >= 0 && cx < width && cy >= 0 && cy < height;
    }
    double diagonal() const {
        return std::sqrt(double(width) * width + double(height) * height);
    }
};

/// Per-pixel metric depth with a validity mask (invalid = no measurement).
struct DepthMap {
    int width = 0, height = 0;
    std::vector<float> values;  // meters, row-major
    std::vector<uint8_t> valid;

    DepthMap() = default;
    DepthMap(int w, int h)
        : width(w), height(h), values(size_t(w) * h, 0.f), valid(size_t(w) * h, 0) {}

    size_t idx(int x, int y) const { return size_t(y) * width + x; }
    bool is_valid(int x, int y) const { return valid[idx(x, y)] != 0; }
    float at(int x, int y) const { return values[idx(x, y)]; }
    void set(int x, int y, float d) {
        values[idx(x, y)] = d;
        valid[idx(x, y)] = 1;
    }
    void clear(int x, int y) {
        values[idx(x, y)] = 0.f;
        valid[idx(x, y)] = 0;
    }
    size_t valid_count() const;
};

/// Axis-aligned bounding box.
struct Aabb {
    Eigen::Vector3d min = Eigen::Vector3d::Zero();
    Eigen::Vector3d max = Eigen::Vector3d::Zero();

    Eigen::Vector3d extents() const { return max - min; }
    Eigen::Vector3d center() const { return 0.5 * (min + max); }
    double volume() const {
        Eigen::Vector3d e = extents();
        return e.x() * e.y() * e.z();
    }
    bool contains(const Eigen::Vector3d& p) const {
        return (p.array() >= min.array()).all() && (p.array() <= max.array()).all();
    }
    void expand(const Eigen::Vector3d& p) {
        min = min.cwiseMin(p);
        max = max.cwiseMax(p);
    }
    static Aabb of_points(const std::vector<Eigen::Vector3d>& pts);
};

/// Camera pose projected onto the ground plane: position plus yaw in degrees.
struct GroundPose {
    double x = 0, y = 0;
    double theta = 0;  // degrees in (-180, 180]
};

struct PixelDepth {
    double u = 0, v = 0;
    double depth = 0;  // camera-frame z, meters
};

/// Wrap an angle in degrees into (-180, 180].
double wrap_deg(double deg);

/// Project a world point through the camera. Absent when the point is behind
/// the camera or its nearest pixel falls outside the image.
std::optional<PixelDepth> project(const Eigen::Vector3d& point_world, const Pose& pose,
                                  const Intrinsics& k);

/// Inverse of project: pixel + camera depth back to a world point.
/// Throws std::invalid_argument for non-positive depth.
Eigen::Vector3d unproject(double u, double v, double depth, const Pose& pose,
                          const Intrinsics& k);

/// Drop a pose to the ground plane. Yaw is the heading of the camera forward
/// axis projected to x-y. Throws std::domain_error when the forward axis is
/// within 1e-6 of vertical (yaw undefined).
GroundPose ground_pose(const Pose& pose);

/// Build a camera pose standing at a ground pose: optical axis horizontal
/// along theta, image up aligned with world up.
Pose pose_from_ground(const GroundPose& g, double height, int64_t frame_id = 0);

/// Distance in the ground plane.
inline double planar_distance(const GroundPose& a, const GroundPose& b) {
    const double dx = a.x - b.x, dy = a.y - b.y;
    return std::sqrt(dx * dx + dy * dy);
}

}  // namespace sceneforge
