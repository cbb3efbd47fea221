// Copyright (C) 2026 SceneForge contributors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "sceneforge/geometry.hpp"
#include "sceneforge/instance_lift.hpp"

#include <optional>
#include <string>
#include <vector>

namespace sceneforge {

enum class ActionKind { kForward, kTurnLeft, kTurnRight, kStop };

std::string action_kind_name(ActionKind k);
ActionKind action_kind_from_name(const std::string& name);

/// One discrete navigation action. Forward magnitudes come from the
/// {25, 50, 75} cm bins, turns from {15, 30, 45} degrees; Stop carries none.
struct ActionStep {
    ActionKind kind = ActionKind::kStop;
    double magnitude = 0;  // cm for Forward, degrees for turns, 0 for Stop
};

using ActionSequence = std::vector<ActionStep>;

/// One summary entry: an action phrase plus an optional landmark category.
struct SummaryEntry {
    std::string phrase;  // "go forward" / "turn left" / "turn right" / "turn back" / "stop"
    std::optional<std::string> landmark;
};

struct NavEpisode {
    std::string episode_id;
    std::string scene_id;
    GroundPose start;
    std::vector<GroundPose> gt_path;
    ActionSequence actions;  // always ends with Stop
    std::vector<SummaryEntry> summary;
};

struct VlnParams {
    double cluster_radius = 0.5;          // meters
    int min_split_steps = 15;             // steps per side required to split
    double max_rotation_deg = 90.0;
    double max_translation_m = 0.70;
    double lookaround_deviation_deg = 45.0;
    double landmark_radius = 2.0;         // meters for summary landmarks
};

/// Greedy sequential clustering: a cluster opens at the first unassigned
/// pose and absorbs the following poses while they stay within radius of
/// that seed; the seed is the representative. Throws on an empty path.
std::vector<GroundPose> cluster_positions(const std::vector<GroundPose>& path,
                                          double radius = 0.5);

/// Split at revisited positions (within cluster radius of an earlier pose),
/// left to right, but only where both adjacent segments exceed min_steps
/// transitions. Consecutive sub-paths share the split pose.
std::vector<std::vector<GroundPose>> split_subpaths(const std::vector<GroundPose>& path,
                                                    int min_steps = 15,
                                                    double revisit_radius = 0.5);

/// Drop poses that would require a rotation above max_rot or a translation
/// above max_trans from the previous kept pose.
std::vector<GroundPose> filter_steps(const std::vector<GroundPose>& path,
                                     double max_rot_deg = 90.0, double max_trans_m = 0.70);

/// Remove interior poses whose viewing direction deviates from the walking
/// direction by more than the threshold while actually translating
/// (in-place rotations are kept). Endpoints are kept.
std::vector<GroundPose> remove_lookaround(const std::vector<GroundPose>& path,
                                          double deviation_threshold_deg = 45.0);

/// Discretize a pre-processed path: per transition a turn part (nearest of
/// 15/30/45 degrees, decomposed greedily when the residual stays above the
/// half-bin dead zone) then a forward part (nearest of 25/50/75 cm), with a
/// terminal Stop. Throws when a translation exceeds 87.5 cm, which the step
/// filter is supposed to prevent.
ActionSequence encode_actions(const std::vector<GroundPose>& path);

/// Apply actions kinematically from start; returns start plus one pose per
/// non-Stop action.
std::vector<GroundPose> replay_actions(const GroundPose& start, const ActionSequence& actions);

/// Depth-scale factor from (monocular depth, reconstruction depth) anchors:
/// the mean of per-anchor ratios after discarding ratios outside
/// median x [0.5, 2]. Throws on empty or non-positive input.
double calibrate_scale(const std::vector<std::pair<double, double>>& anchors);

/// Landmark-annotated action summary: forward runs become "go forward"
/// entries tagged with the nearest instance within landmark_radius of the
/// segment end; consecutive same-direction turns merge (>= 135 degrees total
/// reads "turn back"); a trailing "stop" entry closes the list.
std::vector<SummaryEntry> summarize_episode(const std::vector<GroundPose>& path,
                                            const ActionSequence& actions,
                                            const std::vector<Instance3D>& instances,
                                            double landmark_radius = 2.0);

}  // namespace sceneforge
