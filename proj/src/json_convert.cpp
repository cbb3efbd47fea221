// Copyright (C) 2026 SceneForge contributors
// SPDX-License-Identifier: Apache-2.0
#include "sceneforge/json_convert.hpp"

#include "sceneforge/atomic_file.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

namespace sceneforge {

namespace {

nlohmann::json vec3(const Eigen::Vector3d& v) { return {v.x(), v.y(), v.z()}; }

Eigen::Vector3d vec3_from(const nlohmann::json& j) {
    return {j.at(0).get<double>(), j.at(1).get<double>(), j.at(2).get<double>()};
}

nlohmann::json ground_pose_json(const GroundPose& g) { return {g.x, g.y, g.theta}; }

GroundPose ground_pose_from(const nlohmann::json& j) {
    return {j.at(0).get<double>(), j.at(1).get<double>(), j.at(2).get<double>()};
}

}  // namespace

nlohmann::json instance_to_json(const Instance3D& inst) {
    nlohmann::json members = nlohmann::json::array();
    for (const auto& [frame, label] : inst.members) members.push_back({frame, label});
    return {{"id", inst.instance_id},
            {"category", inst.category ? nlohmann::json(*inst.category) : nlohmann::json()},
            {"centroid", vec3(inst.centroid)},
            {"aabb", {{"min", vec3(inst.aabb.min)}, {"max", vec3(inst.aabb.max)}}},
            {"point_count", inst.points.size()},
            {"members", members}};
}

Instance3D instance_from_json(const nlohmann::json& j) {
    Instance3D inst;
    inst.instance_id = j.at("id").get<int>();
    if (!j.at("category").is_null()) inst.category = j.at("category").get<std::string>();
    inst.centroid = vec3_from(j.at("centroid"));
    inst.aabb.min = vec3_from(j.at("aabb").at("min"));
    inst.aabb.max = vec3_from(j.at("aabb").at("max"));
    for (const auto& m : j.at("members"))
        inst.members.emplace_back(m.at(0).get<int64_t>(), m.at(1).get<int>());
    return inst;
}

nlohmann::json graph_to_json(const SceneGraph& graph) {
    nlohmann::json nodes = nlohmann::json::array();
    for (const auto& n : graph.nodes) nodes.push_back(instance_to_json(n));
    nlohmann::json edges = nlohmann::json::array();
    for (const auto& e : graph.edges)
        edges.push_back({{"a", e.a}, {"b", e.b}, {"relation", relation_name(e.relation)}});
    return {{"nodes", nodes},
            {"edges", edges},
            {"room_extent", {graph.room_extent_x, graph.room_extent_y}}};
}

SceneGraph graph_from_json(const nlohmann::json& j) {
    SceneGraph graph;
    for (const auto& n : j.at("nodes")) graph.nodes.push_back(instance_from_json(n));
    for (const auto& e : j.at("edges"))
        graph.edges.push_back({e.at("a").get<int>(), e.at("b").get<int>(),
                               relation_from_name(e.at("relation").get<std::string>())});
    graph.room_extent_x = j.at("room_extent").at(0).get<double>();
    graph.room_extent_y = j.at("room_extent").at(1).get<double>();
    return graph;
}

nlohmann::json qa_item_to_json(const QaItem& item) {
    nlohmann::json j{{"id", item.id},
                     {"scene_id", item.scene_id},
                     {"task", qa_task_name(item.task)},
                     {"format", item.format == QaFormat::kMca ? "MCA" : "NA"},
                     {"question", item.question},
                     {"answer", item.answer},
                     {"provenance", item.provenance}};
    if (item.format == QaFormat::kMca) {
        nlohmann::json options = nlohmann::json::array();
        for (const auto& [letter, text] : item.options) options.push_back({letter, text});
        j["options"] = options;
    }
    return j;
}

QaItem qa_item_from_json(const nlohmann::json& j) {
    QaItem item;
    item.id = j.at("id").get<std::string>();
    item.scene_id = j.at("scene_id").get<std::string>();
    item.task = qa_task_from_name(j.at("task").get<std::string>());
    item.format = j.at("format").get<std::string>() == "MCA" ? QaFormat::kMca : QaFormat::kNa;
    item.question = j.at("question").get<std::string>();
    item.answer = j.at("answer").get<std::string>();
    item.provenance = j.at("provenance");
    if (j.contains("options"))
        for (const auto& o : j.at("options"))
            item.options.emplace_back(o.at(0).get<std::string>(), o.at(1).get<std::string>());
    return item;
}

nlohmann::json episode_to_json(const NavEpisode& episode) {
    nlohmann::json path = nlohmann::json::array();
    for (const auto& p : episode.gt_path) path.push_back(ground_pose_json(p));
    nlohmann::json actions = nlohmann::json::array();
    for (const auto& a : episode.actions)
        actions.push_back({{"kind", action_kind_name(a.kind)}, {"magnitude", a.magnitude}});
    nlohmann::json summary = nlohmann::json::array();
    for (const auto& s : episode.summary)
        summary.push_back({{"phrase", s.phrase},
                           {"landmark", s.landmark ? nlohmann::json(*s.landmark)
                                                   : nlohmann::json()}});
    return {{"episode_id", episode.episode_id},
            {"scene_id", episode.scene_id},
            {"start", ground_pose_json(episode.start)},
            {"gt_path", path},
            {"actions", actions},
            {"summary", summary}};
}

NavEpisode episode_from_json(const nlohmann::json& j) {
    NavEpisode episode;
    episode.episode_id = j.at("episode_id").get<std::string>();
    episode.scene_id = j.at("scene_id").get<std::string>();
    episode.start = ground_pose_from(j.at("start"));
    for (const auto& p : j.at("gt_path")) episode.gt_path.push_back(ground_pose_from(p));
    for (const auto& a : j.at("actions"))
        episode.actions.push_back({action_kind_from_name(a.at("kind").get<std::string>()),
                                   a.at("magnitude").get<double>()});
    for (const auto& s : j.at("summary")) {
        SummaryEntry entry;
        entry.phrase = s.at("phrase").get<std::string>();
        if (!s.at("landmark").is_null()) entry.landmark = s.at("landmark").get<std::string>();
        episode.summary.push_back(std::move(entry));
    }
    return episode;
}

nlohmann::json detection_to_json(const Detection& det) {
    nlohmann::json j{{"aabb", {{"min", vec3(det.box.min)}, {"max", vec3(det.box.max)}}},
                     {"category", det.category}};
    if (det.confidence) j["confidence"] = *det.confidence;
    return j;
}

Detection detection_from_json(const nlohmann::json& j) {
    Detection det;
    det.box.min = vec3_from(j.at("aabb").at("min"));
    det.box.max = vec3_from(j.at("aabb").at("max"));
    det.category = j.at("category").get<std::string>();
    if (j.contains("confidence")) det.confidence = j.at("confidence").get<double>();
    return det;
}

nlohmann::json episode_result_to_json(const EpisodeResult& r) {
    nlohmann::json path = nlohmann::json::array();
    for (const auto& p : r.executed_path) path.push_back(ground_pose_json(p));
    return {{"executed_path", path},
            {"goal", {r.goal.x(), r.goal.y()}},
            {"shortest_path_length", r.shortest_path_length}};
}

EpisodeResult episode_result_from_json(const nlohmann::json& j) {
    EpisodeResult r;
    for (const auto& p : j.at("executed_path")) r.executed_path.push_back(ground_pose_from(p));
    r.goal = Eigen::Vector2d(j.at("goal").at(0).get<double>(), j.at("goal").at(1).get<double>());
    r.shortest_path_length = j.at("shortest_path_length").get<double>();
    return r;
}

std::vector<nlohmann::json> read_jsonl(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open: " + path);
    std::vector<nlohmann::json> rows;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        rows.push_back(nlohmann::json::parse(line));
    }
    return rows;
}

void write_jsonl(const std::string& path, const std::vector<nlohmann::json>& rows) {
    std::ostringstream out;
    for (const auto& row : rows) out << row.dump() << "\n";
    write_file_atomic(path, out.str());
}

nlohmann::json load_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open: " + path);
    nlohmann::json j;
    in >> j;
    return j;
}

void save_json(const std::string& path, const nlohmann::json& j) {
    write_file_atomic(path, j.dump(2) + "\n");
}

}  // namespace sceneforge
