// Copyright (C) 2026 SceneForge contributors
// SPDX-License-Identifier: Apache-2.0
#include "sceneforge/instance_lift.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <stdexcept>
#include <unordered_set>

namespace sceneforge {

std::vector<MaskNode> lift_masks(const FrameMaskSet& masks, const DepthMap& depth,
                                 const Pose& pose, const Intrinsics& k, int min_pixels) {
    if (masks.labels.width != depth.width || masks.labels.height != depth.height ||
        depth.width != k.width || depth.height != k.height)
        throw std::invalid_argument("lift_masks: mask/depth/intrinsics sizes disagree");

    std::map<int, std::vector<Eigen::Vector3d>> points_by_label;
    for (int y = 0; y < depth.height; ++y) {
        for (int x = 0; x < depth.width; ++x) {
            const int label = masks.labels.at(x, y);
            if (label == 0 || !depth.is_valid(x, y)) continue;
            points_by_label[label].push_back(
                unproject(double(x), double(y), double(depth.at(x, y)), pose, k));
        }
    }

    std::vector<MaskNode> nodes;
    for (auto& [label, pts] : points_by_label) {
        if (int(pts.size()) < min_pixels) continue;
        MaskNode node;
        node.frame_id = masks.frame_id;
        node.mask_label = label;
        node.points = std::move(pts);
        const auto it = masks.categories.find(label);
        if (it != masks.categories.end()) node.category = it->second;
        nodes.push_back(std::move(node));
    }
    return nodes;
}

namespace {

// Fraction of src points that land on dst's mask with consistent depth.
double directed_agreement(const MaskNode& src, const MaskNode& dst, const FrameData& dst_frame,
                          const Intrinsics& k, double depth_tolerance) {
    if (src.points.empty()) return 0.0;
    size_t agree = 0;
    for (const auto& p : src.points) {
        const auto px = project(p, dst_frame.pose, k);
        if (!px) continue;
        const int u = int(std::lround(px->u));
        const int v = int(std::lround(px->v));
        if (dst_frame.masks.labels.at(u, v) != dst.mask_label) continue;
        if (!dst_frame.depth.is_valid(u, v)) continue;
        if (std::abs(double(dst_frame.depth.at(u, v)) - px->depth) > depth_tolerance) continue;
        ++agree;
    }
    return double(agree) / double(src.points.size());
}

struct UnionFind {
    std::vector<int> parent;
    explicit UnionFind(int n) : parent(size_t(n)) {
        std::iota(parent.begin(), parent.end(), 0);
    }
    int find(int x) {
        while (parent[size_t(x)] != x) {
            parent[size_t(x)] = parent[size_t(parent[size_t(x)])];
            x = parent[size_t(x)];
        }
        return x;
    }
    void unite(int a, int b) {
        a = find(a);
        b = find(b);
        if (a != b) parent[size_t(std::max(a, b))] = std::min(a, b);
    }
};

std::optional<std::string> majority_category(const std::vector<const MaskNode*>& nodes) {
    std::map<std::string, int> votes;
    for (const MaskNode* n : nodes)
        if (n->category) votes[*n->category]++;
    if (votes.empty()) return std::nullopt;
    // std::map iterates in key order, so ties resolve to the smallest name.
    auto best = votes.begin();
    for (auto it = votes.begin(); it != votes.end(); ++it)
        if (it->second > best->second) best = it;
    return best->first;
}

uint64_t voxel_key(const Eigen::Vector3d& p, double voxel_size) {
    const auto q = [&](double v) {
        return uint64_t(int64_t(std::floor(v / voxel_size)) + (int64_t(1) << 20)) & 0x1fffffull;
    };
    return q(p.x()) | (q(p.y()) << 21) | (q(p.z()) << 42);
}

}  // namespace

double consensus_rate(const MaskNode& a, const MaskNode& b,
                      const std::map<int64_t, FrameData>& frames, const Intrinsics& k,
                      double depth_tolerance) {
    if (a.frame_id == b.frame_id)
        throw std::invalid_argument("consensus_rate: nodes must come from different frames");
    const double ab = directed_agreement(a, b, frames.at(b.frame_id), k, depth_tolerance);
    const double ba = directed_agreement(b, a, frames.at(a.frame_id), k, depth_tolerance);
    return std::min(ab, ba);
}

std::vector<Instance3D> cluster_masks(const std::vector<MaskNode>& nodes,
                                      const std::map<int64_t, FrameData>& frames,
                                      const Intrinsics& k, const LiftParams& params) {
    const int n = int(nodes.size());
    std::vector<std::pair<int, int>> candidates;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            if (nodes[size_t(i)].frame_id == nodes[size_t(j)].frame_id) continue;
            if (std::llabs(nodes[size_t(i)].frame_id - nodes[size_t(j)].frame_id) >
                params.neighbor_window)
                continue;
            candidates.emplace_back(i, j);
        }

    std::vector<uint8_t> connected(candidates.size(), 0);
    const double tol = params.depth_tolerance();
#pragma omp parallel for schedule(dynamic, 16)
    for (int c = 0; c < int(candidates.size()); ++c) {
        const auto [i, j] = candidates[size_t(c)];
        connected[size_t(c)] =
            consensus_rate(nodes[size_t(i)], nodes[size_t(j)], frames, k, tol) >=
            params.merge_threshold;
    }

    UnionFind uf(n);
    for (size_t c = 0; c < candidates.size(); ++c)
        if (connected[c]) uf.unite(candidates[c].first, candidates[c].second);

    std::map<int, std::vector<int>> components;  // root -> node indices
    for (int i = 0; i < n; ++i) components[uf.find(i)].push_back(i);

    std::vector<Instance3D> instances;
    for (const auto& [root, member_ids] : components) {
        Instance3D inst;
        std::vector<const MaskNode*> member_nodes;
        for (int i : member_ids) {
            const MaskNode& node = nodes[size_t(i)];
            inst.points.insert(inst.points.end(), node.points.begin(), node.points.end());
            inst.members.emplace_back(node.frame_id, node.mask_label);
            member_nodes.push_back(&node);
        }
        if (int(inst.points.size()) < params.min_instance_points) continue;
        inst.category = majority_category(member_nodes);
        refresh_instance_geometry(inst);
        inst.instance_id = int(instances.size());
        instances.push_back(std::move(inst));
    }
    return instances;
}

double spatial_agreement(const std::vector<Eigen::Vector3d>& a,
                         const std::vector<Eigen::Vector3d>& b, double voxel_size) {
    if (a.empty() && b.empty()) return 0.0;
    std::unordered_set<uint64_t> va, vb;
    va.reserve(a.size());
    vb.reserve(b.size());
    for (const auto& p : a) va.insert(voxel_key(p, voxel_size));
    for (const auto& p : b) vb.insert(voxel_key(p, voxel_size));
    size_t inter = 0;
    for (uint64_t key : va) inter += vb.count(key);
    const size_t uni = va.size() + vb.size() - inter;
    return uni == 0 ? 0.0 : double(inter) / double(uni);
}

void refresh_instance_geometry(Instance3D& instance) {
    instance.aabb = Aabb::of_points(instance.points);
    Eigen::Vector3d sum = Eigen::Vector3d::Zero();
    for (const auto& p : instance.points) sum += p;
    instance.centroid =
        instance.points.empty() ? Eigen::Vector3d::Zero() : sum / double(instance.points.size());
}

std::vector<Instance3D> merge_by_spatial_agreement(std::vector<Instance3D> instances,
                                                   double iou_threshold, double voxel_size) {
    if (!(iou_threshold > 0.0) || iou_threshold > 1.0)
        throw std::invalid_argument("merge_by_spatial_agreement: threshold must be in (0, 1]");

    for (;;) {
        double best_iou = 0;
        int best_a = -1, best_b = -1;
        for (size_t i = 0; i < instances.size(); ++i)
            for (size_t j = i + 1; j < instances.size(); ++j) {
                const double iou = spatial_agreement(instances[i].points, instances[j].points,
                                                     voxel_size);
                if (iou < iou_threshold) continue;
                const auto key = std::make_tuple(-iou, instances[i].instance_id,
                                                 instances[j].instance_id);
                const auto best_key =
                    std::make_tuple(-best_iou, best_a < 0 ? 0 : instances[size_t(best_a)].instance_id,
                                    best_b < 0 ? 0 : instances[size_t(best_b)].instance_id);
                if (best_a < 0 || key < best_key) {
                    best_iou = iou;
                    best_a = int(i);
                    best_b = int(j);
                }
            }
        if (best_a < 0) break;

        Instance3D& keep = instances[size_t(best_a)];
        Instance3D& drop = instances[size_t(best_b)];
        keep.points.insert(keep.points.end(), drop.points.begin(), drop.points.end());
        keep.members.insert(keep.members.end(), drop.members.begin(), drop.members.end());
        if (!keep.category && drop.category) keep.category = drop.category;
        refresh_instance_geometry(keep);
        instances.erase(instances.begin() + best_b);
    }

    std::sort(instances.begin(), instances.end(),
              [](const Instance3D& a, const Instance3D& b) {
                  return a.instance_id < b.instance_id;
              });
    for (size_t i = 0; i < instances.size(); ++i) instances[i].instance_id = int(i);
    return instances;
}

}  // namespace sceneforge
