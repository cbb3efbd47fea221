// Copyright (C) 2026 SceneForge contributors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "sceneforge/geometry.hpp"

#include <optional>
#include <string>
#include <vector>

namespace sceneforge {

/// One executed navigation episode against its goal.
struct EpisodeResult {
    std::vector<GroundPose> executed_path;
    Eigen::Vector2d goal = Eigen::Vector2d::Zero();
    double shortest_path_length = 0;  // > 0
};

struct NavReport {
    double success_rate = 0;      // SR
    double oracle_success = 0;    // OS
    double spl = 0;               // success-weighted path length
    double distance_to_goal = 0;  // mean final distance
    double path_length = 0;       // mean executed length
};

/// Sum of consecutive planar distances.
double path_length(const std::vector<GroundPose>& path);

/// Standard navigation metrics at the given success radius.
/// Throws std::invalid_argument on empty input.
NavReport nav_metrics(const std::vector<EpisodeResult>& results, double success_radius = 3.0);

struct Detection {
    Aabb box;
    std::string category;
    std::optional<double> confidence;
};

using DetectionSet = std::vector<Detection>;

/// Volume intersection over union; 0 for disjoint boxes.
double aabb_iou(const Aabb& a, const Aabb& b);

/// Micro F1 with per-category greedy one-to-one matching in descending IoU;
/// a match counts when IoU >= threshold.
double f1_at_iou(const DetectionSet& pred, const DetectionSet& gt, double iou_threshold);

/// Mean average precision over the categories present in the ground truth,
/// confidence-ranked, all-point interpolated PR integration.
double average_precision(const DetectionSet& pred, const DetectionSet& gt, double iou_threshold);

}  // namespace sceneforge
