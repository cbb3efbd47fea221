// Copyright (C) 2026 SceneForge contributors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "sceneforge/geometry.hpp"
#include "sceneforge/instance_lift.hpp"

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace sceneforge {

enum class Relation {
    kLeftOf,
    kRightOf,
    kInFrontOf,
    kBehind,
    kAbove,
    kBelow,
    kNear,
};

std::string relation_name(Relation r);
Relation relation_from_name(const std::string& name);

struct SceneGraph {
    std::vector<Instance3D> nodes;
    struct Edge {
        int a, b;  // node ids
        Relation relation;
    };
    std::vector<Edge> edges;           // stored: above/below, near (once per pair)
    double room_extent_x = 0, room_extent_y = 0;
};

/// Category -> node ids, restricted to nodes that carry a category.
using CategoryIndex = std::map<std::string, std::vector<int>>;

CategoryIndex build_category_index(const SceneGraph& graph);

struct RelationParams {
    double contact_eps = 0.05;    // vertical contact tolerance, meters
    double near_threshold = 1.0;  // meters
};

/// Relations of the pair (a, b). Vertical and proximity relations are
/// observer-free. With an observer, horizontal relations classify where b
/// sits relative to a, in the observer's facing frame: the edge
/// (a, b, left-of) states that b lies in the observer's left half-plane
/// through a. Swapping a and b flips left/right and front/behind.
std::set<Relation> pairwise_relations(const Instance3D& a, const Instance3D& b,
                                      const std::optional<GroundPose>& observer = std::nullopt,
                                      const RelationParams& params = {});

/// Minimum distance between the stored point sets. Grid-accelerated; the
/// serial variant is the exhaustive reference.
double closest_distance(const Instance3D& a, const Instance3D& b);
double closest_distance_serial(const Instance3D& a, const Instance3D& b);

/// Ground-plane bounding-rectangle area over all instance points.
/// Throws std::invalid_argument when the scene has no points.
double room_size(const std::vector<Instance3D>& instances);
double room_size(const std::vector<Eigen::Vector3d>& points);

/// Longest bounding-box dimension, centimeters.
double longest_dimension_cm(const Instance3D& a);

/// Build the stored graph: vertical/near edges for all pairs plus the scene
/// extent. Horizontal relations stay on-demand (they need an observer).
SceneGraph build_graph(const std::vector<Instance3D>& instances,
                       const RelationParams& params = {});

/// Replace the room extent with the bounds of the full scene cloud (walls
/// included); instance extents alone underestimate the room.
void set_room_extent(SceneGraph& graph, const std::vector<Eigen::Vector3d>& scene_points);

}  // namespace sceneforge
