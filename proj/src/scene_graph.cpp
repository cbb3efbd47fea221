// Copyright (C) 2026 SceneForge contributors
// SPDX-License-Identifier: Apache-2.0
#include "sceneforge/scene_graph.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <unordered_map>

namespace sceneforge {

std::string relation_name(Relation r) {
    switch (r) {
        case Relation::kLeftOf: return "left-of";
        case Relation::kRightOf: return "right-of";
        case Relation::kInFrontOf: return "in-front-of";
        case Relation::kBehind: return "behind";
        case Relation::kAbove: return "above";
        case Relation::kBelow: return "below";
        case Relation::kNear: return "near";
    }
    return "?";
}

Relation relation_from_name(const std::string& name) {
    for (Relation r : {Relation::kLeftOf, Relation::kRightOf, Relation::kInFrontOf,
                       Relation::kBehind, Relation::kAbove, Relation::kBelow, Relation::kNear})
        if (relation_name(r) == name) return r;
    throw std::invalid_argument("unknown relation: " + name);
}

CategoryIndex build_category_index(const SceneGraph& graph) {
    CategoryIndex index;
    for (const auto& node : graph.nodes)
        if (node.category) index[*node.category].push_back(node.instance_id);
    return index;
}

namespace {

bool footprints_overlap(const Aabb& a, const Aabb& b) {
    return a.min.x() <= b.max.x() && b.min.x() <= a.max.x() && a.min.y() <= b.max.y() &&
           b.min.y() <= a.max.y();
}

}  // namespace

std::set<Relation> pairwise_relations(const Instance3D& a, const Instance3D& b,
                                      const std::optional<GroundPose>& observer,
                                      const RelationParams& params) {
    std::set<Relation> rel;
    if (footprints_overlap(a.aabb, b.aabb)) {
        if (a.aabb.min.z() >= b.aabb.max.z() - params.contact_eps) rel.insert(Relation::kAbove);
        if (b.aabb.min.z() >= a.aabb.max.z() - params.contact_eps) rel.insert(Relation::kBelow);
    }
    if (closest_distance(a, b) <= params.near_threshold) rel.insert(Relation::kNear);

    if (observer) {
        const double t = observer->theta * std::numbers::pi / 180.0;
        const Eigen::Vector2d fwd(std::cos(t), std::sin(t));
        const Eigen::Vector2d left(-std::sin(t), std::cos(t));
        const Eigen::Vector2d delta(b.centroid.x() - a.centroid.x(),
                                    b.centroid.y() - a.centroid.y());
        const double f = delta.dot(fwd);
        const double l = delta.dot(left);
        if (f > 0) rel.insert(Relation::kInFrontOf);
        if (f < 0) rel.insert(Relation::kBehind);
        if (l > 0) rel.insert(Relation::kLeftOf);
        if (l < 0) rel.insert(Relation::kRightOf);
    }
    return rel;
}

namespace {

struct CellHash {
    size_t operator()(const std::array<int64_t, 3>& c) const {
        uint64_t h = 0xcbf29ce484222325ull;
        for (int64_t v : c) {
            h ^= uint64_t(v);
            h *= 0x100000001b3ull;
        }
        return size_t(h);
    }
};

}  // namespace

double closest_distance_serial(const Instance3D& a, const Instance3D& b) {
    double best = std::numeric_limits<double>::infinity();
    for (const auto& pa : a.points)
        for (const auto& pb : b.points) best = std::min(best, (pa - pb).squaredNorm());
    return std::sqrt(best);
}

double closest_distance(const Instance3D& a, const Instance3D& b) {
    if (a.points.empty() || b.points.empty())
        return std::numeric_limits<double>::infinity();
    if (a.points.size() * b.points.size() < 4096) return closest_distance_serial(a, b);

    // Lower bound from the boxes tells us how far to search in the grid.
    Eigen::Vector3d gap = Eigen::Vector3d::Zero();
    for (int i = 0; i < 3; ++i)
        gap[i] = std::max({0.0, a.aabb.min[i] - b.aabb.max[i], b.aabb.min[i] - a.aabb.max[i]});
    const double lower = gap.norm();
    const double h = std::max(lower, 0.1);

    std::unordered_map<std::array<int64_t, 3>, std::vector<int>, CellHash> grid;
    for (int i = 0; i < int(b.points.size()); ++i) {
        const auto& p = b.points[size_t(i)];
        grid[{int64_t(std::floor(p.x() / h)), int64_t(std::floor(p.y() / h)),
              int64_t(std::floor(p.z() / h))}]
            .push_back(i);
    }

    double best2 = std::numeric_limits<double>::infinity();
    for (int64_t ring = 1;; ++ring) {
        best2 = std::numeric_limits<double>::infinity();
        for (const auto& pa : a.points) {
            const std::array<int64_t, 3> c = {int64_t(std::floor(pa.x() / h)),
                                              int64_t(std::floor(pa.y() / h)),
                                              int64_t(std::floor(pa.z() / h))};
            for (int64_t dz = -ring; dz <= ring; ++dz)
                for (int64_t dy = -ring; dy <= ring; ++dy)
                    for (int64_t dx = -ring; dx <= ring; ++dx) {
                        const auto it = grid.find({c[0] + dx, c[1] + dy, c[2] + dz});
                        if (it == grid.end()) continue;
                        for (int j : it->second)
                            best2 = std::min(best2, (b.points[size_t(j)] - pa).squaredNorm());
                    }
        }
        // Anything outside the searched rings is at least ring*h away.
        if (best2 <= double(ring) * h * double(ring) * h) break;
        if (double(ring) * h > 1e6) break;  // degenerate inputs
    }
    return std::sqrt(best2);
}

double room_size(const std::vector<Eigen::Vector3d>& points) {
    if (points.empty()) throw std::invalid_argument("room_size: empty scene");
    double min_x = points[0].x(), max_x = points[0].x();
    double min_y = points[0].y(), max_y = points[0].y();
    for (const auto& p : points) {
        min_x = std::min(min_x, p.x());
        max_x = std::max(max_x, p.x());
        min_y = std::min(min_y, p.y());
        max_y = std::max(max_y, p.y());
    }
    return (max_x - min_x) * (max_y - min_y);
}

double room_size(const std::vector<Instance3D>& instances) {
    std::vector<Eigen::Vector3d> all;
    for (const auto& inst : instances) all.insert(all.end(), inst.points.begin(), inst.points.end());
    return room_size(all);
}

double longest_dimension_cm(const Instance3D& a) {
    return 100.0 * a.aabb.extents().maxCoeff();
}

void set_room_extent(SceneGraph& graph, const std::vector<Eigen::Vector3d>& scene_points) {
    if (scene_points.empty()) throw std::invalid_argument("set_room_extent: empty scene");
    double min_x = scene_points[0].x(), max_x = scene_points[0].x();
    double min_y = scene_points[0].y(), max_y = scene_points[0].y();
    for (const auto& p : scene_points) {
        min_x = std::min(min_x, p.x());
        max_x = std::max(max_x, p.x());
        min_y = std::min(min_y, p.y());
        max_y = std::max(max_y, p.y());
    }
    graph.room_extent_x = max_x - min_x;
    graph.room_extent_y = max_y - min_y;
}

SceneGraph build_graph(const std::vector<Instance3D>& instances, const RelationParams& params) {
    SceneGraph graph;
    graph.nodes = instances;

    double min_x = 0, max_x = 0, min_y = 0, max_y = 0;
    bool any = false;
    for (const auto& inst : graph.nodes) {
        if (inst.points.empty()) continue;
        if (!any) {
            min_x = inst.aabb.min.x();
            max_x = inst.aabb.max.x();
            min_y = inst.aabb.min.y();
            max_y = inst.aabb.max.y();
            any = true;
        } else {
            min_x = std::min(min_x, inst.aabb.min.x());
            max_x = std::max(max_x, inst.aabb.max.x());
            min_y = std::min(min_y, inst.aabb.min.y());
            max_y = std::max(max_y, inst.aabb.max.y());
        }
    }
    if (any) {
        graph.room_extent_x = max_x - min_x;
        graph.room_extent_y = max_y - min_y;
    }

    for (size_t i = 0; i < graph.nodes.size(); ++i) {
        for (size_t j = i + 1; j < graph.nodes.size(); ++j) {
            const auto rel = pairwise_relations(graph.nodes[i], graph.nodes[j], std::nullopt,
                                                params);
            const int a = graph.nodes[i].instance_id;
            const int b = graph.nodes[j].instance_id;
            if (rel.count(Relation::kAbove)) {
                graph.edges.push_back({a, b, Relation::kAbove});
                graph.edges.push_back({b, a, Relation::kBelow});
            }
            if (rel.count(Relation::kBelow)) {
                graph.edges.push_back({a, b, Relation::kBelow});
                graph.edges.push_back({b, a, Relation::kAbove});
            }
            if (rel.count(Relation::kNear)) graph.edges.push_back({a, b, Relation::kNear});
        }
    }
    return graph;
}

}  // namespace sceneforge
