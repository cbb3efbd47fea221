// Copyright (C) 2026 SceneForge contributors
// SPDX-License-Identifier: Apache-2.0
#include "sceneforge/vln_encode.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace sceneforge {

std::string action_kind_name(ActionKind k) {
    switch (k) {
        case ActionKind::kForward: return "forward";
        case ActionKind::kTurnLeft: return "turn_left";
        case ActionKind::kTurnRight: return "turn_right";
        case ActionKind::kStop: return "stop";
    }
    return "?";
}

ActionKind action_kind_from_name(const std::string& name) {
    for (ActionKind k : {ActionKind::kForward, ActionKind::kTurnLeft, ActionKind::kTurnRight,
                         ActionKind::kStop})
        if (action_kind_name(k) == name) return k;
    throw std::invalid_argument("unknown action kind: " + name);
}

std::vector<GroundPose> cluster_positions(const std::vector<GroundPose>& path, double radius) {
    if (path.empty()) throw std::invalid_argument("cluster_positions: empty path");
    if (!(radius > 0.0)) throw std::invalid_argument("cluster_positions: radius must be positive");
    std::vector<GroundPose> reps;
    size_t i = 0;
    while (i < path.size()) {
        const GroundPose& seed = path[i];
        reps.push_back(seed);
        size_t j = i + 1;
        while (j < path.size() && planar_distance(path[j], seed) <= radius) ++j;
        i = j;
    }
    return reps;
}

std::vector<std::vector<GroundPose>> split_subpaths(const std::vector<GroundPose>& path,
                                                    int min_steps, double revisit_radius) {
    if (min_steps < 1) throw std::invalid_argument("split_subpaths: min_steps must be >= 1");
    std::vector<std::vector<GroundPose>> out;
    const int n = int(path.size());
    if (n == 0) return out;

    int seg_start = 0;
    for (int c = 1; c + 1 < n; ++c) {
        bool revisit = false;
        for (int e = 0; e < c && !revisit; ++e)
            revisit = planar_distance(path[size_t(c)], path[size_t(e)]) <= revisit_radius;
        if (!revisit) continue;
        const int left = c - seg_start;
        const int right = (n - 1) - c;
        if (left > min_steps && right > min_steps) {
            out.emplace_back(path.begin() + seg_start, path.begin() + c + 1);
            seg_start = c;
        }
    }
    out.emplace_back(path.begin() + seg_start, path.end());
    return out;
}

std::vector<GroundPose> filter_steps(const std::vector<GroundPose>& path, double max_rot_deg,
                                     double max_trans_m) {
    std::vector<GroundPose> kept;
    for (const GroundPose& p : path) {
        if (!kept.empty()) {
            const double rot = std::abs(wrap_deg(p.theta - kept.back().theta));
            const double trans = planar_distance(p, kept.back());
            if (rot > max_rot_deg || trans > max_trans_m) continue;
        }
        kept.push_back(p);
    }
    return kept;
}

std::vector<GroundPose> remove_lookaround(const std::vector<GroundPose>& path,
                                          double deviation_threshold_deg) {
    if (path.size() < 3) return path;
    std::vector<GroundPose> kept;
    kept.push_back(path.front());
    for (size_t i = 1; i + 1 < path.size(); ++i) {
        const double trans = planar_distance(path[i], path[i + 1]);
        if (trans > 0.05) {
            const double bearing = std::atan2(path[i + 1].y - path[i].y,
                                              path[i + 1].x - path[i].x) *
                                   180.0 / std::numbers::pi;
            if (std::abs(wrap_deg(path[i].theta - bearing)) > deviation_threshold_deg) continue;
        }
        kept.push_back(path[i]);
    }
    kept.push_back(path.back());
    return kept;
}

namespace {

double nearest_turn_bin(double deg) {
    if (deg >= 37.5) return 45;
    if (deg >= 22.5) return 30;
    return 15;
}

double nearest_forward_bin_cm(double meters) {
    if (meters >= 0.625) return 75;
    if (meters >= 0.375) return 50;
    return 25;
}

}  // namespace

ActionSequence encode_actions(const std::vector<GroundPose>& path) {
    ActionSequence actions;
    for (size_t i = 0; i + 1 < path.size(); ++i) {
        double rem = wrap_deg(path[i + 1].theta - path[i].theta);
        // Greedy bin decomposition keeps the per-transition heading error
        // below the 7.5 degree half bin even for turns past 52.5 degrees.
        while (std::abs(rem) >= 7.5) {
            const double mag = nearest_turn_bin(std::abs(rem));
            actions.push_back({rem > 0 ? ActionKind::kTurnLeft : ActionKind::kTurnRight, mag});
            rem -= std::copysign(mag, rem);
        }
        const double dist = planar_distance(path[i], path[i + 1]);
        if (dist > 0.875)
            throw std::runtime_error("encode_actions: translation above 87.5 cm, path was not "
                                     "filtered");
        if (dist >= 0.125)
            actions.push_back({ActionKind::kForward, nearest_forward_bin_cm(dist)});
    }
    actions.push_back({ActionKind::kStop, 0});
    return actions;
}

std::vector<GroundPose> replay_actions(const GroundPose& start, const ActionSequence& actions) {
    std::vector<GroundPose> poses{start};
    GroundPose cur = start;
    for (const ActionStep& a : actions) {
        switch (a.kind) {
            case ActionKind::kStop:
                continue;
            case ActionKind::kTurnLeft:
                cur.theta = wrap_deg(cur.theta + a.magnitude);
                break;
            case ActionKind::kTurnRight:
                cur.theta = wrap_deg(cur.theta - a.magnitude);
                break;
            case ActionKind::kForward: {
                const double t = cur.theta * std::numbers::pi / 180.0;
                const double m = a.magnitude / 100.0;
                cur.x += std::cos(t) * m;
                cur.y += std::sin(t) * m;
                break;
            }
        }
        poses.push_back(cur);
    }
    return poses;
}

double calibrate_scale(const std::vector<std::pair<double, double>>& anchors) {
    if (anchors.empty()) throw std::invalid_argument("calibrate_scale: no anchors");
    std::vector<double> factors;
    factors.reserve(anchors.size());
    for (const auto& [mono, sfm] : anchors) {
        if (!(mono > 0.0) || !(sfm > 0.0))
            throw std::invalid_argument("calibrate_scale: anchors must be positive");
        factors.push_back(mono / sfm);
    }
    std::vector<double> sorted = factors;
    std::sort(sorted.begin(), sorted.end());
    const size_t n = sorted.size();
    const double med = n % 2 ? sorted[n / 2] : 0.5 * (sorted[n / 2 - 1] + sorted[n / 2]);

    double sum = 0;
    size_t count = 0;
    for (double f : factors) {
        if (f < 0.5 * med || f > 2.0 * med) continue;
        sum += f;
        ++count;
    }
    if (count == 0) return med;  // every factor gated out: degenerate, fall back
    return sum / double(count);
}

std::vector<SummaryEntry> summarize_episode(const std::vector<GroundPose>& path,
                                            const ActionSequence& actions,
                                            const std::vector<Instance3D>& instances,
                                            double landmark_radius) {
    std::vector<SummaryEntry> summary;
    if (path.empty()) return summary;

    const std::vector<GroundPose> replayed = replay_actions(path.front(), actions);
    size_t pose_idx = 0;  // index into replayed, advanced per non-Stop action

    auto nearest_landmark = [&](const GroundPose& at) -> std::optional<std::string> {
        std::optional<std::string> best;
        double best_dist = landmark_radius;
        for (const auto& inst : instances) {
            if (!inst.category) continue;
            const double d =
                std::hypot(inst.centroid.x() - at.x, inst.centroid.y() - at.y);
            if (d <= best_dist) {
                best_dist = d;
                best = inst.category;
            }
        }
        return best;
    };

    size_t i = 0;
    while (i < actions.size()) {
        const ActionKind kind = actions[i].kind;
        if (kind == ActionKind::kStop) {
            ++i;
            continue;
        }
        if (kind == ActionKind::kForward) {
            while (i < actions.size() && actions[i].kind == ActionKind::kForward) {
                ++i;
                ++pose_idx;
            }
            summary.push_back({"go forward", nearest_landmark(replayed[pose_idx])});
        } else {
            double total = 0;
            while (i < actions.size() && actions[i].kind == kind) {
                total += actions[i].magnitude;
                ++i;
                ++pose_idx;
            }
            std::string phrase = kind == ActionKind::kTurnLeft ? "turn left" : "turn right";
            if (total >= 135.0) phrase = "turn back";
            summary.push_back({phrase, std::nullopt});
        }
    }
    summary.push_back({"stop", std::nullopt});
    return summary;
}

}  // namespace sceneforge
