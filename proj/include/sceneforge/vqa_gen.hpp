// Copyright (C) 2026 SceneForge contributors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "sceneforge/scene_graph.hpp"
#include "sceneforge/vln_encode.hpp"

#include <json.hpp>

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace sceneforge {

enum class QaTask {
    kObjectCount,
    kRelativeDistance,
    kRelativeDirection,
    kObjectSize,
    kAbsoluteDistance,
    kRoomSize,
    kRoutePlan,
};

enum class QaFormat { kMca, kNa };

std::string qa_task_name(QaTask t);
QaTask qa_task_from_name(const std::string& name);

struct QaItem {
    std::string id;
    std::string scene_id;
    QaTask task = QaTask::kObjectCount;
    QaFormat format = QaFormat::kNa;
    std::string question;
    std::vector<std::pair<std::string, std::string>> options;  // (letter, text), MCA only
    std::string answer;  // option letter for MCA, number string for NA
    nlohmann::json provenance;  // node ids and parameters to recompute the answer
};

struct GenConfig {
    uint64_t seed = 0;
    int max_per_task = 20;
    double min_margin_m = 0.15;           // ambiguity margin for relative distance
    double direction_deadzone_deg = 10.0; // skip near quadrant boundaries
};

// One generator per task type. All are deterministic in (inputs, config).
std::vector<QaItem> gen_object_count(const SceneGraph& graph, const CategoryIndex& index,
                                     const GenConfig& cfg, const std::string& scene_id);
std::vector<QaItem> gen_relative_distance(const SceneGraph& graph, const CategoryIndex& index,
                                          const GenConfig& cfg, const std::string& scene_id);
std::vector<QaItem> gen_relative_direction(const SceneGraph& graph, const CategoryIndex& index,
                                           const GenConfig& cfg, const std::string& scene_id);
std::vector<QaItem> gen_object_size(const SceneGraph& graph, const CategoryIndex& index,
                                    const GenConfig& cfg, const std::string& scene_id);
std::vector<QaItem> gen_absolute_distance(const SceneGraph& graph, const CategoryIndex& index,
                                          const GenConfig& cfg, const std::string& scene_id);
std::optional<QaItem> gen_room_size(const SceneGraph& graph, const GenConfig& cfg,
                                    const std::string& scene_id);
std::optional<QaItem> gen_route_plan(const NavEpisode& episode, const GenConfig& cfg);

/// All generators over one scene, in task order.
std::vector<QaItem> generate_all(const SceneGraph& graph, const std::vector<NavEpisode>& episodes,
                                 const GenConfig& cfg, const std::string& scene_id);

/// Re-derive the answer of an item from its provenance record plus the graph
/// (and episodes for route plans). Used to audit generated items.
std::string recompute_answer(const QaItem& item, const SceneGraph& graph,
                             const std::map<std::string, NavEpisode>& episodes_by_id);

/// Exact-letter accuracy over items; missing predictions count as wrong.
double eval_mca(const std::map<std::string, std::string>& predictions,
                const std::vector<QaItem>& items);

/// Mean relative accuracy: mean over thresholds theta in {0.50 ... 0.95} of
/// the indicator |pred - truth| / truth < 1 - theta, averaged over items.
/// Items with non-positive ground truth are excluded (with a warning on
/// stderr).
double eval_na_mra(const std::vector<double>& predictions, const std::vector<double>& answers);

/// NA answers use one decimal; counts and sizes are integers.
std::string format_na(double value, int decimals);

}  // namespace sceneforge
