// Copyright (C) 2026 SceneForge contributors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "sceneforge/instance_lift.hpp"
#include "sceneforge/nav_metrics.hpp"
#include "sceneforge/scene_graph.hpp"
#include "sceneforge/vln_encode.hpp"
#include "sceneforge/vqa_gen.hpp"

#include <json.hpp>

#include <string>
#include <vector>

namespace sceneforge {

nlohmann::json instance_to_json(const Instance3D& inst);
Instance3D instance_from_json(const nlohmann::json& j);

nlohmann::json graph_to_json(const SceneGraph& graph);
SceneGraph graph_from_json(const nlohmann::json& j);

nlohmann::json qa_item_to_json(const QaItem& item);
QaItem qa_item_from_json(const nlohmann::json& j);

nlohmann::json episode_to_json(const NavEpisode& episode);
NavEpisode episode_from_json(const nlohmann::json& j);

nlohmann::json detection_to_json(const Detection& det);
Detection detection_from_json(const nlohmann::json& j);

nlohmann::json episode_result_to_json(const EpisodeResult& r);
EpisodeResult episode_result_from_json(const nlohmann::json& j);

// JSONL: one JSON document per line.
std::vector<nlohmann::json> read_jsonl(const std::string& path);
void write_jsonl(const std::string& path, const std::vector<nlohmann::json>& rows);

nlohmann::json load_json(const std::string& path);
void save_json(const std::string& path, const nlohmann::json& j);

}  // namespace sceneforge
