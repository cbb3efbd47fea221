// Copyright (C) 2026 SceneForge contributors
// SPDX-License-Identifier: Apache-2.0
#include "sceneforge/vqa_gen.hpp"

#include "sceneforge/rng.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <iostream>
#include <numbers>
#include <set>
#include <stdexcept>

namespace sceneforge {

std::string qa_task_name(QaTask t) {
    switch (t) {
        case QaTask::kObjectCount: return "object_count";
        case QaTask::kRelativeDistance: return "relative_distance";
        case QaTask::kRelativeDirection: return "relative_direction";
        case QaTask::kObjectSize: return "object_size";
        case QaTask::kAbsoluteDistance: return "absolute_distance";
        case QaTask::kRoomSize: return "room_size";
        case QaTask::kRoutePlan: return "route_plan";
    }
    return "?";
}

QaTask qa_task_from_name(const std::string& name) {
    for (QaTask t : {QaTask::kObjectCount, QaTask::kRelativeDistance, QaTask::kRelativeDirection,
                     QaTask::kObjectSize, QaTask::kAbsoluteDistance, QaTask::kRoomSize,
                     QaTask::kRoutePlan})
        if (qa_task_name(t) == name) return t;
    throw std::invalid_argument("unknown task: " + name);
}

std::string format_na(double value, int decimals) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.*f", decimals, value);
    // Avoid the signed zero artifact of rounding small negatives.
    std::string s(buf);
    if (s == "-0" || s == "-0.0") s = s.substr(1);
    return s;
}

namespace {

constexpr const char* kLetters[] = {"A", "B", "C", "D"};

const Instance3D& node_by_id(const SceneGraph& graph, int id) {
    for (const auto& n : graph.nodes)
        if (n.instance_id == id) return n;
    throw std::out_of_range("no node with id " + std::to_string(id));
}

/// Node ids whose category appears exactly once, sorted by category name.
std::vector<int> unique_category_nodes(const CategoryIndex& index) {
    std::vector<int> ids;
    for (const auto& [cat, nodes] : index)
        if (nodes.size() == 1) ids.push_back(nodes[0]);
    return ids;
}

std::string item_id(const std::string& scene_id, QaTask task, size_t n) {
    return scene_id + ":" + qa_task_name(task) + ":" + std::to_string(n);
}

/// Shuffle option texts; returns the answer letter for `correct_index`.
std::string assign_options(QaItem& item, std::vector<std::string> texts, size_t correct_index,
                           Rng& rng) {
    std::vector<size_t> order(texts.size());
    for (size_t i = 0; i < order.size(); ++i) order[i] = i;
    rng.shuffle(order);
    std::string answer;
    for (size_t pos = 0; pos < order.size(); ++pos) {
        item.options.emplace_back(kLetters[pos], texts[order[pos]]);
        if (order[pos] == correct_index) answer = kLetters[pos];
    }
    return answer;
}

/// Bearing of (to - from) in degrees.
double bearing_deg(const Eigen::Vector3d& from, const Eigen::Vector3d& to) {
    return std::atan2(to.y() - from.y(), to.x() - from.x()) * 180.0 / std::numbers::pi;
}

struct DirectionCall {
    std::string word;     // front / back / left / right
    double boundary_gap;  // degrees to the nearest quadrant boundary
};

DirectionCall classify_direction(double relative_bearing_deg) {
    const double a = wrap_deg(relative_bearing_deg);
    DirectionCall call;
    if (a > -45.0 && a <= 45.0) call.word = "front";
    else if (a > 45.0 && a <= 135.0) call.word = "left";
    else if (a > -135.0 && a <= -45.0) call.word = "right";
    else call.word = "back";
    double gap = 360;
    for (double b : {-135.0, -45.0, 45.0, 135.0}) gap = std::min(gap, std::abs(a - b));
    call.boundary_gap = gap;
    return call;
}

}  // namespace

std::vector<QaItem> gen_object_count(const SceneGraph& graph, const CategoryIndex& index,
                                     const GenConfig& cfg, const std::string& scene_id) {
    std::vector<QaItem> items;
    for (const auto& [cat, nodes] : index) {
        if (nodes.size() < 2) continue;
        if (int(items.size()) >= cfg.max_per_task) break;
        QaItem item;
        item.id = item_id(scene_id, QaTask::kObjectCount, items.size());
        item.scene_id = scene_id;
        item.task = QaTask::kObjectCount;
        item.format = QaFormat::kNa;
        item.question = "How many " + cat + "(s) are in this room?";
        item.answer = std::to_string(nodes.size());
        item.provenance = {{"category", cat}, {"node_ids", nodes}};
        items.push_back(std::move(item));
    }
    (void)graph;
    return items;
}

std::vector<QaItem> gen_relative_distance(const SceneGraph& graph, const CategoryIndex& index,
                                          const GenConfig& cfg, const std::string& scene_id) {
    std::vector<QaItem> items;
    const std::vector<int> uniques = unique_category_nodes(index);
    if (uniques.size() < 5) return items;

    Rng rng(cfg.seed ^ 0x52656c44697374ull);
    for (int target_id : uniques) {
        if (int(items.size()) >= cfg.max_per_task) break;
        Rng item_rng = rng.fork(uint64_t(target_id));
        const Instance3D& target = node_by_id(graph, target_id);

        std::vector<int> pool;
        for (int id : uniques)
            if (id != target_id) pool.push_back(id);
        item_rng.shuffle(pool);
        pool.resize(4);
        std::sort(pool.begin(), pool.end());

        std::vector<double> dist(4);
        for (size_t i = 0; i < 4; ++i)
            dist[i] = closest_distance(target, node_by_id(graph, pool[i]));
        std::vector<size_t> rank = {0, 1, 2, 3};
        std::sort(rank.begin(), rank.end(), [&](size_t x, size_t y) { return dist[x] < dist[y]; });
        // Ambiguity guard: the winner must beat the runner-up by the margin.
        if (dist[rank[1]] - dist[rank[0]] < cfg.min_margin_m) continue;

        std::vector<std::string> texts;
        for (int id : pool) texts.push_back(*node_by_id(graph, id).category);

        QaItem item;
        item.id = item_id(scene_id, QaTask::kRelativeDistance, items.size());
        item.scene_id = scene_id;
        item.task = QaTask::kRelativeDistance;
        item.format = QaFormat::kMca;
        item.answer = assign_options(item, texts, rank[0], item_rng);
        item.question = "Measuring from the closest point of each object, which of these objects (" +
                        texts[0] + ", " + texts[1] + ", " + texts[2] + ", " + texts[3] +
                        ") is the closest to the " + *target.category + "?";
        item.provenance = {{"target", target_id}, {"candidates", pool}};
        items.push_back(std::move(item));
    }
    return items;
}

std::vector<QaItem> gen_relative_direction(const SceneGraph& graph, const CategoryIndex& index,
                                           const GenConfig& cfg, const std::string& scene_id) {
    std::vector<QaItem> items;
    const std::vector<int> uniques = unique_category_nodes(index);
    if (uniques.size() < 3) return items;

    Rng rng(cfg.seed ^ 0x52656c446972ull);
    std::set<std::array<int, 3>> seen;
    const int attempts = cfg.max_per_task * 8;
    for (int t = 0; t < attempts && int(items.size()) < cfg.max_per_task; ++t) {
        Rng item_rng = rng.fork(uint64_t(t));
        std::vector<int> pick = uniques;
        item_rng.shuffle(pick);
        const int a = pick[0], b = pick[1], c = pick[2];
        if (!seen.insert({a, b, c}).second) continue;

        const Instance3D& na = node_by_id(graph, a);
        const Instance3D& nb = node_by_id(graph, b);
        const Instance3D& nc = node_by_id(graph, c);
        if (std::hypot(nb.centroid.x() - na.centroid.x(), nb.centroid.y() - na.centroid.y()) <
            1e-6)
            continue;

        const double facing = bearing_deg(na.centroid, nb.centroid);
        const DirectionCall call =
            classify_direction(bearing_deg(na.centroid, nc.centroid) - facing);
        if (call.boundary_gap < cfg.direction_deadzone_deg) continue;

        std::vector<std::string> texts = {"front", "back", "left", "right"};
        const size_t correct =
            size_t(std::find(texts.begin(), texts.end(), call.word) - texts.begin());

        QaItem item;
        item.id = item_id(scene_id, QaTask::kRelativeDirection, items.size());
        item.scene_id = scene_id;
        item.task = QaTask::kRelativeDirection;
        item.format = QaFormat::kMca;
        item.answer = assign_options(item, texts, correct, item_rng);
        item.question = "If I am standing by the " + *na.category + " and facing the " +
                        *nb.category + ", is the " + *nc.category +
                        " to my front, back, left, or right?";
        item.provenance = {{"observer", a}, {"facing", b}, {"query", c}};
        items.push_back(std::move(item));
    }
    return items;
}

std::vector<QaItem> gen_object_size(const SceneGraph& graph, const CategoryIndex& index,
                                    const GenConfig& cfg, const std::string& scene_id) {
    std::vector<QaItem> items;
    for (int id : unique_category_nodes(index)) {
        if (int(items.size()) >= cfg.max_per_task) break;
        const Instance3D& node = node_by_id(graph, id);
        QaItem item;
        item.id = item_id(scene_id, QaTask::kObjectSize, items.size());
        item.scene_id = scene_id;
        item.task = QaTask::kObjectSize;
        item.format = QaFormat::kNa;
        item.question = "What is the length of the longest dimension (length, width, or height) "
                        "of the " +
                        *node.category + ", measured in centimeters?";
        item.answer = std::to_string(int64_t(std::llround(longest_dimension_cm(node))));
        item.provenance = {{"node", id}};
        items.push_back(std::move(item));
    }
    return items;
}

std::vector<QaItem> gen_absolute_distance(const SceneGraph& graph, const CategoryIndex& index,
                                          const GenConfig& cfg, const std::string& scene_id) {
    std::vector<QaItem> items;
    const std::vector<int> uniques = unique_category_nodes(index);
    if (uniques.size() < 2) return items;

    Rng rng(cfg.seed ^ 0x416273446973ull);
    std::set<std::pair<int, int>> seen;
    const int attempts = cfg.max_per_task * 8;
    for (int t = 0; t < attempts && int(items.size()) < cfg.max_per_task; ++t) {
        Rng item_rng = rng.fork(uint64_t(t));
        std::vector<int> pick = uniques;
        item_rng.shuffle(pick);
        const int a = std::min(pick[0], pick[1]);
        const int b = std::max(pick[0], pick[1]);
        if (!seen.insert({a, b}).second) continue;

        const Instance3D& na = node_by_id(graph, a);
        const Instance3D& nb = node_by_id(graph, b);
        QaItem item;
        item.id = item_id(scene_id, QaTask::kAbsoluteDistance, items.size());
        item.scene_id = scene_id;
        item.task = QaTask::kAbsoluteDistance;
        item.format = QaFormat::kNa;
        item.question = "Measuring from the closest point of each object, what is the distance "
                        "between the " +
                        *na.category + " and the " + *nb.category + " (in meters)?";
        item.answer = format_na(closest_distance(na, nb), 1);
        item.provenance = {{"a", a}, {"b", b}};
        items.push_back(std::move(item));
    }
    return items;
}

std::optional<QaItem> gen_room_size(const SceneGraph& graph, const GenConfig& cfg,
                                    const std::string& scene_id) {
    (void)cfg;
    if (graph.nodes.empty()) return std::nullopt;
    QaItem item;
    item.id = item_id(scene_id, QaTask::kRoomSize, 0);
    item.scene_id = scene_id;
    item.task = QaTask::kRoomSize;
    item.format = QaFormat::kNa;
    item.question = "What is the size of this room (in square meters)?";
    item.answer = format_na(graph.room_extent_x * graph.room_extent_y, 1);
    item.provenance = {{"extent", {graph.room_extent_x, graph.room_extent_y}}};
    return item;
}

namespace {

uint64_t fnv1a(const std::string& s) {
    uint64_t h = 0xcbf29ce484222325ull;
    for (char c : s) {
        h ^= uint64_t(uint8_t(c));
        h *= 0x100000001b3ull;
    }
    return h;
}

std::vector<std::string> summary_turns(const NavEpisode& episode) {
    std::vector<std::string> turns;
    for (const auto& entry : episode.summary)
        if (entry.phrase == "turn left" || entry.phrase == "turn right" ||
            entry.phrase == "turn back")
            turns.push_back(entry.phrase);
    return turns;
}

std::string join_turns(const std::vector<std::string>& turns) {
    std::string s;
    for (size_t i = 0; i < turns.size(); ++i) {
        if (i) s += ", ";
        s += turns[i];
    }
    return s;
}

}  // namespace

std::optional<QaItem> gen_route_plan(const NavEpisode& episode, const GenConfig& cfg) {
    const std::vector<std::string> turns = summary_turns(episode);
    if (turns.empty()) return std::nullopt;

    std::string steps;
    int step_no = 0;
    for (const auto& entry : episode.summary) {
        if (entry.phrase == "stop") continue;
        ++step_no;
        steps += std::to_string(step_no) + ". ";
        if (entry.phrase == "go forward") {
            steps += "Go forward until " +
                     (entry.landmark ? "the " + *entry.landmark : "the next landmark");
        } else {
            steps += "[please fill in]";
        }
        steps += "\n";
    }

    const std::vector<std::string> alphabet = {"turn back", "turn left", "turn right"};
    const std::string correct = join_turns(turns);
    std::set<std::string> option_set{correct};
    std::vector<std::string> texts{correct};

    Rng rng(cfg.seed ^ 0x526f757465506cull ^ fnv1a(episode.episode_id));
    const size_t n_options = turns.size() == 1 ? 3 : 4;
    while (texts.size() < n_options) {
        std::vector<std::string> fake;
        for (size_t i = 0; i < turns.size(); ++i)
            fake.push_back(alphabet[size_t(rng.uniform_int(0, 2))]);
        const std::string joined = join_turns(fake);
        if (option_set.insert(joined).second) texts.push_back(joined);
    }

    QaItem item;
    item.id = episode.scene_id + ":route_plan:" + episode.episode_id;
    item.scene_id = episode.scene_id;
    item.task = QaTask::kRoutePlan;
    item.format = QaFormat::kMca;
    item.answer = assign_options(item, texts, 0, rng);
    item.question =
        "You are a robot beginning at the start position. You want to navigate to the final "
        "position. You will perform the following actions:\n" +
        steps +
        "You have reached the final destination. (Note: for each [please fill in], choose "
        "either 'turn back,' 'turn left,' or 'turn right.')";
    item.provenance = {{"episode_id", episode.episode_id}, {"turns", turns}};
    return item;
}

std::vector<QaItem> generate_all(const SceneGraph& graph, const std::vector<NavEpisode>& episodes,
                                 const GenConfig& cfg, const std::string& scene_id) {
    const CategoryIndex index = build_category_index(graph);
    std::vector<QaItem> items;
    auto append = [&](std::vector<QaItem> batch) {
        for (auto& item : batch) items.push_back(std::move(item));
    };
    append(gen_object_count(graph, index, cfg, scene_id));
    append(gen_relative_distance(graph, index, cfg, scene_id));
    append(gen_relative_direction(graph, index, cfg, scene_id));
    append(gen_object_size(graph, index, cfg, scene_id));
    append(gen_absolute_distance(graph, index, cfg, scene_id));
    if (auto item = gen_room_size(graph, cfg, scene_id)) items.push_back(std::move(*item));
    for (const auto& episode : episodes)
        if (auto item = gen_route_plan(episode, cfg)) items.push_back(std::move(*item));
    return items;
}

std::string recompute_answer(const QaItem& item, const SceneGraph& graph,
                             const std::map<std::string, NavEpisode>& episodes_by_id) {
    switch (item.task) {
        case QaTask::kObjectCount: {
            const std::string cat = item.provenance.at("category").get<std::string>();
            int count = 0;
            for (const auto& n : graph.nodes)
                if (n.category && *n.category == cat) ++count;
            return std::to_string(count);
        }
        case QaTask::kRelativeDistance: {
            const int target = item.provenance.at("target").get<int>();
            const auto candidates = item.provenance.at("candidates").get<std::vector<int>>();
            double best = std::numeric_limits<double>::infinity();
            int best_id = -1;
            for (int id : candidates) {
                const double d = closest_distance(node_by_id(graph, target), node_by_id(graph, id));
                if (d < best) {
                    best = d;
                    best_id = id;
                }
            }
            const std::string winner = *node_by_id(graph, best_id).category;
            for (const auto& [letter, text] : item.options)
                if (text == winner) return letter;
            return "?";
        }
        case QaTask::kRelativeDirection: {
            const Instance3D& a = node_by_id(graph, item.provenance.at("observer").get<int>());
            const Instance3D& b = node_by_id(graph, item.provenance.at("facing").get<int>());
            const Instance3D& c = node_by_id(graph, item.provenance.at("query").get<int>());
            const double facing = bearing_deg(a.centroid, b.centroid);
            const DirectionCall call =
                classify_direction(bearing_deg(a.centroid, c.centroid) - facing);
            for (const auto& [letter, text] : item.options)
                if (text == call.word) return letter;
            return "?";
        }
        case QaTask::kObjectSize: {
            const Instance3D& node = node_by_id(graph, item.provenance.at("node").get<int>());
            return std::to_string(int64_t(std::llround(longest_dimension_cm(node))));
        }
        case QaTask::kAbsoluteDistance: {
            const Instance3D& a = node_by_id(graph, item.provenance.at("a").get<int>());
            const Instance3D& b = node_by_id(graph, item.provenance.at("b").get<int>());
            return format_na(closest_distance(a, b), 1);
        }
        case QaTask::kRoomSize:
            return format_na(graph.room_extent_x * graph.room_extent_y, 1);
        case QaTask::kRoutePlan: {
            const auto& episode =
                episodes_by_id.at(item.provenance.at("episode_id").get<std::string>());
            const std::string correct = join_turns(summary_turns(episode));
            for (const auto& [letter, text] : item.options)
                if (text == correct) return letter;
            return "?";
        }
    }
    return "?";
}

double eval_mca(const std::map<std::string, std::string>& predictions,
                const std::vector<QaItem>& items) {
    if (items.empty()) return 0.0;
    size_t correct = 0;
    for (const auto& item : items) {
        const auto it = predictions.find(item.id);
        if (it != predictions.end() && it->second == item.answer) ++correct;
    }
    return double(correct) / double(items.size());
}

double eval_na_mra(const std::vector<double>& predictions, const std::vector<double>& answers) {
    if (predictions.size() != answers.size())
        throw std::invalid_argument("eval_na_mra: size mismatch");
    double sum = 0;
    size_t used = 0;
    for (size_t i = 0; i < answers.size(); ++i) {
        if (!(answers[i] > 0.0)) {
            std::cerr << "eval_na_mra: skipping item " << i << " with non-positive ground truth\n";
            continue;
        }
        const double rel = std::abs(predictions[i] - answers[i]) / answers[i];
        int passed = 0;
        for (int t = 0; t < 10; ++t) {
            const double theta = 0.50 + 0.05 * t;
            if (rel < 1.0 - theta) ++passed;
        }
        sum += double(passed) / 10.0;
        ++used;
    }
    return used == 0 ? 0.0 : sum / double(used);
}

}  // namespace sceneforge
