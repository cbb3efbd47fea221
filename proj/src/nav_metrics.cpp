// Copyright (C) 2026 SceneForge contributors
// SPDX-License-Identifier: Apache-2.0
#include "sceneforge/nav_metrics.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <stdexcept>

namespace sceneforge {

double path_length(const std::vector<GroundPose>& path) {
    double total = 0;
    for (size_t i = 0; i + 1 < path.size(); ++i) total += planar_distance(path[i], path[i + 1]);
    return total;
}

NavReport nav_metrics(const std::vector<EpisodeResult>& results, double success_radius) {
    if (results.empty()) throw std::invalid_argument("nav_metrics: no episodes");
    NavReport report;
    for (const auto& r : results) {
        if (r.executed_path.empty())
            throw std::invalid_argument("nav_metrics: empty executed path");
        if (!(r.shortest_path_length > 0.0))
            throw std::invalid_argument("nav_metrics: shortest path length must be positive");

        auto goal_dist = [&](const GroundPose& p) {
            return std::hypot(p.x - r.goal.x(), p.y - r.goal.y());
        };
        const double final_dist = goal_dist(r.executed_path.back());
        double min_dist = final_dist;
        for (const auto& p : r.executed_path) min_dist = std::min(min_dist, goal_dist(p));

        const bool success = final_dist <= success_radius;
        const double executed = path_length(r.executed_path);

        report.distance_to_goal += final_dist;
        report.success_rate += success ? 1.0 : 0.0;
        report.oracle_success += min_dist <= success_radius ? 1.0 : 0.0;
        if (success)
            report.spl += r.shortest_path_length / std::max(executed, r.shortest_path_length);
        report.path_length += executed;
    }
    const double n = double(results.size());
    report.distance_to_goal /= n;
    report.success_rate /= n;
    report.oracle_success /= n;
    report.spl /= n;
    report.path_length /= n;
    return report;
}

double aabb_iou(const Aabb& a, const Aabb& b) {
    double inter = 1.0;
    for (int i = 0; i < 3; ++i) {
        const double lo = std::max(a.min[i], b.min[i]);
        const double hi = std::min(a.max[i], b.max[i]);
        if (hi <= lo) return 0.0;
        inter *= hi - lo;
    }
    const double uni = a.volume() + b.volume() - inter;
    return uni <= 0.0 ? 0.0 : inter / uni;
}

namespace {

struct Match {
    double iou;
    int pred, gt;
};

/// Greedy one-to-one matching in descending IoU; ties prefer the lower gt
/// index, then the lower pred index. Returns matched pred indices.
std::vector<std::pair<int, int>> greedy_match(const std::vector<Match>& candidates) {
    std::vector<Match> sorted = candidates;
    std::sort(sorted.begin(), sorted.end(), [](const Match& a, const Match& b) {
        if (a.iou != b.iou) return a.iou > b.iou;
        if (a.gt != b.gt) return a.gt < b.gt;
        return a.pred < b.pred;
    });
    std::set<int> used_pred, used_gt;
    std::vector<std::pair<int, int>> matches;
    for (const Match& m : sorted) {
        if (used_pred.count(m.pred) || used_gt.count(m.gt)) continue;
        used_pred.insert(m.pred);
        used_gt.insert(m.gt);
        matches.emplace_back(m.pred, m.gt);
    }
    return matches;
}

}  // namespace

double f1_at_iou(const DetectionSet& pred, const DetectionSet& gt, double iou_threshold) {
    std::map<std::string, std::vector<int>> pred_by_cat, gt_by_cat;
    for (int i = 0; i < int(pred.size()); ++i) pred_by_cat[pred[size_t(i)].category].push_back(i);
    for (int i = 0; i < int(gt.size()); ++i) gt_by_cat[gt[size_t(i)].category].push_back(i);

    size_t tp = 0;
    for (const auto& [cat, gt_ids] : gt_by_cat) {
        const auto it = pred_by_cat.find(cat);
        if (it == pred_by_cat.end()) continue;
        std::vector<Match> candidates;
        for (int p : it->second)
            for (int g : gt_ids) {
                const double iou = aabb_iou(pred[size_t(p)].box, gt[size_t(g)].box);
                if (iou >= iou_threshold) candidates.push_back({iou, p, g});
            }
        tp += greedy_match(candidates).size();
    }
    if (pred.empty() && gt.empty()) return 0.0;
    const double precision = pred.empty() ? 0.0 : double(tp) / double(pred.size());
    const double recall = gt.empty() ? 0.0 : double(tp) / double(gt.size());
    return precision + recall == 0.0 ? 0.0 : 2.0 * precision * recall / (precision + recall);
}

double average_precision(const DetectionSet& pred, const DetectionSet& gt, double iou_threshold) {
    std::map<std::string, std::vector<int>> gt_by_cat;
    for (int i = 0; i < int(gt.size()); ++i) gt_by_cat[gt[size_t(i)].category].push_back(i);
    if (gt_by_cat.empty()) return 0.0;

    double ap_sum = 0;
    for (const auto& [cat, gt_ids] : gt_by_cat) {
        std::vector<int> preds;
        for (int i = 0; i < int(pred.size()); ++i)
            if (pred[size_t(i)].category == cat) preds.push_back(i);
        // Rank by confidence (descending), stable on input order for ties.
        std::stable_sort(preds.begin(), preds.end(), [&](int a, int b) {
            return pred[size_t(a)].confidence.value_or(1.0) >
                   pred[size_t(b)].confidence.value_or(1.0);
        });

        std::set<int> matched_gt;
        std::vector<bool> is_tp;
        for (int p : preds) {
            double best_iou = 0;
            int best_gt = -1;
            for (int g : gt_ids) {
                if (matched_gt.count(g)) continue;
                const double iou = aabb_iou(pred[size_t(p)].box, gt[size_t(g)].box);
                if (iou > best_iou) {
                    best_iou = iou;
                    best_gt = g;
                }
            }
            if (best_gt >= 0 && best_iou >= iou_threshold) {
                matched_gt.insert(best_gt);
                is_tp.push_back(true);
            } else {
                is_tp.push_back(false);
            }
        }

        // Precision-recall points, then the all-point interpolated area.
        std::vector<double> precision, recall;
        size_t tp = 0;
        for (size_t k = 0; k < is_tp.size(); ++k) {
            if (is_tp[k]) ++tp;
            precision.push_back(double(tp) / double(k + 1));
            recall.push_back(double(tp) / double(gt_ids.size()));
        }
        for (int k = int(precision.size()) - 2; k >= 0; --k)
            precision[size_t(k)] = std::max(precision[size_t(k)], precision[size_t(k) + 1]);

        double ap = 0, prev_recall = 0;
        for (size_t k = 0; k < precision.size(); ++k) {
            ap += (recall[k] - prev_recall) * precision[k];
            prev_recall = recall[k];
        }
        ap_sum += ap;
    }
    return ap_sum / double(gt_by_cat.size());
}

}  // namespace sceneforge
