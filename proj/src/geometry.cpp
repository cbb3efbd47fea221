// Copyright (C) 2026 SceneForge contributors
// SPDX-License-Identifier: Apache-2.0
#include "sceneforge/geometry.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace sceneforge {

namespace {
constexpr double kRadToDeg = 180.0 / std::numbers::pi;
}

bool Pose::rotation_valid(double tol) const {
    const Eigen::Matrix3d should_be_identity = rotation * rotation.transpose();
    if ((should_be_identity - Eigen::Matrix3d::Identity()).cwiseAbs().maxCoeff() > tol)
        return false;
    return std::abs(rotation.determinant() - 1.0) <= tol;
}

size_t DepthMap::valid_count() const {
    size_t n = 0;
    for (uint8_t v : valid) n += v != 0;
    return n;
}

Aabb Aabb::of_points(const std::vector<Eigen::Vector3d>& pts) {
    Aabb box;
    if (pts.empty()) return box;
    box.min = box.max = pts[0];
    for (const auto& p : pts) box.expand(p);
    return box;
}

double wrap_deg(double deg) {
    deg = std::fmod(deg, 360.0);
    if (deg > 180.0) deg -= 360.0;
    if (deg <= -180.0) deg += 360.0;
    return deg;
}

std::optional<PixelDepth> project(const Eigen::Vector3d& point_world, const Pose& pose,
                                  const Intrinsics& k) {
    const Eigen::Vector3d pc = pose.to_camera(point_world);
    if (pc.z() <= 0.0) return std::nullopt;
    const double u = k.fx * pc.x() / pc.z() + k.cx;
    const double v = k.fy * pc.y() / pc.z() + k.cy;
    // In-image means the nearest pixel exists.
    if (u < -0.5 || u >= k.width - 0.5 || v < -0.5 || v >= k.height - 0.5)
        return std::nullopt;
    return PixelDepth{u, v, pc.z()};
}

Eigen::Vector3d unproject(double u, double v, double depth, const Pose& pose,
                          const Intrinsics& k) {
    if (!(depth > 0.0))
        throw std::invalid_argument("unproject: depth must be positive");
    const Eigen::Vector3d pc((u - k.cx) / k.fx * depth, (v - k.cy) / k.fy * depth, depth);
    return pose.to_world(pc);
}

GroundPose ground_pose(const Pose& pose) {
    const Eigen::Vector3d fwd = pose.rotation.col(2);  // camera +z in world
    const double nxy = std::hypot(fwd.x(), fwd.y());
    if (nxy < 1e-6)
        throw std::domain_error("ground_pose: camera forward axis is vertical, yaw undefined");
    GroundPose g;
    g.x = pose.translation.x();
    g.y = pose.translation.y();
    g.theta = wrap_deg(std::atan2(fwd.y(), fwd.x()) * kRadToDeg);
    return g;
}

Pose pose_from_ground(const GroundPose& g, double height, int64_t frame_id) {
    const double t = g.theta / kRadToDeg;
    const double c = std::cos(t), s = std::sin(t);
    Pose pose;
    pose.frame_id = frame_id;
    // Columns are the camera axes in world coordinates:
    // image right = (sin, -cos, 0), image down = -z, forward = (cos, sin, 0).
    pose.rotation.col(0) = Eigen::Vector3d(s, -c, 0);
    pose.rotation.col(1) = Eigen::Vector3d(0, 0, -1);
    pose.rotation.col(2) = Eigen::Vector3d(c, s, 0);
    pose.translation = Eigen::Vector3d(g.x, g.y, height);
    return pose;
}

}  // namespace sceneforge
