// Copyright (C) 2026 SceneForge contributors
// SPDX-License-Identifier: Apache-2.0
#include "sceneforge/instance_lift.hpp"
#include "sceneforge/rng.hpp"
#include "sceneforge/synth_world.hpp"

#include <doctest.h>

#include <algorithm>
#include <map>
#include <set>

using namespace sceneforge;

namespace {

SynthConfig lift_config() {
    SynthConfig cfg;
    cfg.trajectory_steps = 20;
    return cfg;
}

FrameMaskSet masks_from_image(int64_t frame_id, Image16 labels) {
    FrameMaskSet m;
    m.frame_id = frame_id;
    m.labels = std::move(labels);
    return m;
}

// Render one synthetic frame into FrameData plus its lifted nodes.
FrameData make_frame(const SceneSpec& spec, const Intrinsics& k, size_t traj_index) {
    FrameData data;
    data.pose = synth_camera(spec, traj_index);
    data.depth = render_depth(spec, data.pose, k);
    data.masks.frame_id = int64_t(traj_index);
    data.masks.labels = render_masks(spec, data.pose, k);
    for (size_t o = 0; o < spec.objects.size(); ++o)
        data.masks.categories[int(o) + 1] = spec.objects[o].category;
    return data;
}

}  // namespace

TEST_CASE("lift_masks: background-only frame produces nothing") {
    const Intrinsics k = synth_intrinsics(lift_config());
    DepthMap depth(k.width, k.height);
    for (int y = 0; y < k.height; ++y)
        for (int x = 0; x < k.width; ++x) depth.set(x, y, 2.0f);
    const auto nodes = lift_masks(masks_from_image(0, Image16(k.width, k.height)), depth,
                                  Pose{}, k, 10);
    CHECK(nodes.empty());
}

TEST_CASE("lift_masks: label with only invalid depth is dropped") {
    const Intrinsics k = synth_intrinsics(lift_config());
    Image16 labels(k.width, k.height);
    for (int y = 0; y < 20; ++y)
        for (int x = 0; x < 20; ++x) labels.set(x, y, 3);
    const auto nodes =
        lift_masks(masks_from_image(0, std::move(labels)), DepthMap(k.width, k.height),
                   Pose{}, k, 1);
    CHECK(nodes.empty());
}

TEST_CASE("lift_masks: node point count equals the label's valid-depth pixels") {
    const SceneSpec spec = gen_scene(4, lift_config());
    const Intrinsics k = synth_intrinsics(lift_config());
    const FrameData frame = make_frame(spec, k, 0);

    std::map<int, size_t> pixel_count;
    for (int y = 0; y < k.height; ++y)
        for (int x = 0; x < k.width; ++x) {
            const int label = frame.masks.labels.at(x, y);
            if (label != 0 && frame.depth.is_valid(x, y)) pixel_count[label]++;
        }

    const auto nodes = lift_masks(frame.masks, frame.depth, frame.pose, k, 1);
    REQUIRE(!nodes.empty());
    for (const auto& node : nodes) {
        CHECK(node.points.size() == pixel_count.at(node.mask_label));
        CHECK(node.category == spec.objects[size_t(node.mask_label) - 1].category);
    }
}

TEST_CASE("lift_masks rejects mismatched sizes") {
    const Intrinsics k = synth_intrinsics(lift_config());
    CHECK_THROWS_AS(lift_masks(masks_from_image(0, Image16(8, 8)), DepthMap(k.width, k.height),
                               Pose{}, k, 1),
                    std::invalid_argument);
}

TEST_CASE("consensus_rate: same physical box face from two views scores high") {
    const SceneSpec spec = gen_scene(5, lift_config());
    const Intrinsics k = synth_intrinsics(lift_config());
    std::map<int64_t, FrameData> frames;
    frames[0] = make_frame(spec, k, 0);
    frames[1] = make_frame(spec, k, 1);

    const auto nodes_a = lift_masks(frames[0].masks, frames[0].depth, frames[0].pose, k, 50);
    const auto nodes_b = lift_masks(frames[1].masks, frames[1].depth, frames[1].pose, k, 50);
    REQUIRE(!nodes_a.empty());

    bool found_shared_label = false;
    for (const auto& a : nodes_a)
        for (const auto& b : nodes_b)
            if (a.mask_label == b.mask_label) {
                found_shared_label = true;
                CHECK(consensus_rate(a, b, frames, k, 0.06) >= 0.9);
            }
    CHECK(found_shared_label);
}

TEST_CASE("consensus_rate: disjoint frustums score zero") {
    SceneSpec spec;
    spec.room_extents = Eigen::Vector3d(10, 5, 3);
    spec.objects.push_back({"a", {{4.0, 2.0, 0.0}, {4.5, 2.5, 1.0}}});
    spec.trajectory = {{1.0, 2.2, 0.0}, {9.0, 2.2, 180.0}};  // facing away from each other
    const Intrinsics k = synth_intrinsics({});
    std::map<int64_t, FrameData> frames;
    frames[0] = make_frame(spec, k, 0);
    frames[1] = make_frame(spec, k, 1);
    const auto na = lift_masks(frames[0].masks, frames[0].depth, frames[0].pose, k, 1);
    REQUIRE(na.size() == 1);
    // Fabricate a node in frame 1 from the same label id; frame 1 looks at
    // the opposite wall so nothing can agree.
    MaskNode fake;
    fake.frame_id = 1;
    fake.mask_label = 1;
    fake.points = {{9.5, 2.2, 1.0}};
    CHECK(consensus_rate(na[0], fake, frames, k, 0.06) == doctest::Approx(0.0));
}

TEST_CASE("consensus_rate: depth gate rejects projections onto another surface") {
    // One box hides a fabricated node far behind it: pixels match the mask
    // only if depth agrees, so the rate must be zero.
    SceneSpec spec;
    spec.room_extents = Eigen::Vector3d(8, 5, 3);
    spec.objects.push_back({"a", {{4.0, 1.5, 0.0}, {4.6, 3.5, 2.5}}});
    spec.trajectory = {{1.0, 2.5, 0.0}};
    const Intrinsics k = synth_intrinsics({});
    std::map<int64_t, FrameData> frames;
    frames[0] = make_frame(spec, k, 0);

    MaskNode behind;
    behind.frame_id = 1;
    behind.mask_label = 1;
    for (double y = 2.0; y <= 3.0; y += 0.05)
        behind.points.push_back({6.5, y, 1.0});  // 2.5 m behind the box face
    frames[1] = frames[0];
    frames[1].masks.frame_id = 1;

    const auto nodes = lift_masks(frames[0].masks, frames[0].depth, frames[0].pose, k, 50);
    REQUIRE(!nodes.empty());
    CHECK(consensus_rate(nodes[0], behind, frames, k, 0.06) == doctest::Approx(0.0));
}

TEST_CASE("consensus_rate requires different frames") {
    std::map<int64_t, FrameData> frames;
    MaskNode a, b;
    a.frame_id = b.frame_id = 2;
    CHECK_THROWS_AS(consensus_rate(a, b, frames, synth_intrinsics({}), 0.05),
                    std::invalid_argument);
}

TEST_CASE("cluster_masks: no edges means one instance per node") {
    // Two frames looking at opposite ends of a long room, no shared content.
    SceneSpec spec;
    spec.room_extents = Eigen::Vector3d(12, 5, 3);
    spec.objects.push_back({"a", {{2.0, 2.0, 0.0}, {2.6, 2.6, 1.2}}});
    spec.objects.push_back({"b", {{10.0, 2.0, 0.0}, {10.6, 2.6, 1.2}}});
    spec.trajectory = {{4.0, 2.3, 180.0}, {8.0, 2.3, 0.0}};
    const Intrinsics k = synth_intrinsics({});
    std::map<int64_t, FrameData> frames;
    frames[0] = make_frame(spec, k, 0);
    frames[1] = make_frame(spec, k, 1);
    std::vector<MaskNode> nodes;
    for (auto& [id, f] : frames) {
        auto lifted = lift_masks(f.masks, f.depth, f.pose, k, 50);
        nodes.insert(nodes.end(), lifted.begin(), lifted.end());
    }
    REQUIRE(nodes.size() == 2);

    LiftParams params;
    params.min_instance_points = 10;
    const auto instances = cluster_masks(nodes, frames, k, params);
    CHECK(instances.size() == 2);
}

TEST_CASE("cluster_masks: duplicate nodes merge into a single instance") {
    const SceneSpec spec = gen_scene(6, lift_config());
    const Intrinsics k = synth_intrinsics(lift_config());
    std::map<int64_t, FrameData> frames;
    frames[0] = make_frame(spec, k, 0);
    frames[1] = frames[0];
    frames[1].masks.frame_id = 1;

    auto nodes0 = lift_masks(frames[0].masks, frames[0].depth, frames[0].pose, k, 50);
    REQUIRE(!nodes0.empty());
    std::vector<MaskNode> nodes;
    nodes.push_back(nodes0[0]);
    nodes.push_back(nodes0[0]);
    nodes[1].frame_id = 1;  // same points observed in the "next" frame

    LiftParams params;
    params.min_instance_points = 10;
    const auto instances = cluster_masks(nodes, frames, k, params);
    REQUIRE(instances.size() == 1);
    CHECK(instances[0].members.size() == 2);
}

TEST_CASE("cluster_masks: three-box scene over twenty views recovers the objects") {
    SynthConfig cfg = lift_config();
    cfg.min_objects = cfg.max_objects = 3;
    const SceneSpec spec = gen_scene(8, cfg);
    const Intrinsics k = synth_intrinsics(cfg);

    std::map<int64_t, FrameData> frames;
    std::vector<MaskNode> nodes;
    std::map<int, std::vector<Eigen::Vector3d>> gt_points;
    for (size_t f = 0; f < spec.trajectory.size(); ++f) {
        FrameData data = make_frame(spec, k, f);
        auto lifted = lift_masks(data.masks, data.depth, data.pose, k, 50);
        for (const auto& node : lifted) {
            auto& bucket = gt_points[node.mask_label];
            bucket.insert(bucket.end(), node.points.begin(), node.points.end());
        }
        nodes.insert(nodes.end(), lifted.begin(), lifted.end());
        frames.emplace(int64_t(f), std::move(data));
    }

    LiftParams params;
    const auto instances = cluster_masks(nodes, frames, k, params);
    REQUIRE(instances.size() == 3);

    // Greedy match instances to ground-truth labels by voxel IoU.
    std::set<int> used;
    for (const auto& inst : instances) {
        double best = 0;
        int best_label = -1;
        for (const auto& [label, pts] : gt_points) {
            if (used.count(label)) continue;
            const double iou = spatial_agreement(inst.points, pts, params.agreement_voxel);
            if (iou > best) {
                best = iou;
                best_label = label;
            }
        }
        REQUIRE(best_label != -1);
        used.insert(best_label);
        CHECK(best >= 0.9);
        CHECK(inst.category == spec.objects[size_t(best_label) - 1].category);
    }
}

TEST_CASE("cluster_masks output is independent of node order") {
    SynthConfig cfg = lift_config();
    cfg.trajectory_steps = 8;
    const SceneSpec spec = gen_scene(9, cfg);
    const Intrinsics k = synth_intrinsics(cfg);
    std::map<int64_t, FrameData> frames;
    std::vector<MaskNode> nodes;
    for (size_t f = 0; f < spec.trajectory.size(); ++f) {
        FrameData data = make_frame(spec, k, f);
        auto lifted = lift_masks(data.masks, data.depth, data.pose, k, 50);
        nodes.insert(nodes.end(), lifted.begin(), lifted.end());
        frames.emplace(int64_t(f), std::move(data));
    }
    LiftParams params;
    const auto forward = cluster_masks(nodes, frames, k, params);
    std::reverse(nodes.begin(), nodes.end());
    auto reversed = cluster_masks(nodes, frames, k, params);

    REQUIRE(forward.size() == reversed.size());
    // Same components: compare member sets as unordered collections.
    auto member_sets = [](const std::vector<Instance3D>& instances) {
        std::set<std::set<std::pair<int64_t, int>>> sets;
        for (const auto& inst : instances)
            sets.insert(std::set<std::pair<int64_t, int>>(inst.members.begin(),
                                                          inst.members.end()));
        return sets;
    };
    CHECK(member_sets(forward) == member_sets(reversed));
}

TEST_CASE("every valid mask pixel lands in at most one instance") {
    SynthConfig cfg = lift_config();
    cfg.trajectory_steps = 6;
    const SceneSpec spec = gen_scene(10, cfg);
    const Intrinsics k = synth_intrinsics(cfg);
    std::map<int64_t, FrameData> frames;
    std::vector<MaskNode> nodes;
    for (size_t f = 0; f < spec.trajectory.size(); ++f) {
        FrameData data = make_frame(spec, k, f);
        auto lifted = lift_masks(data.masks, data.depth, data.pose, k, 50);
        nodes.insert(nodes.end(), lifted.begin(), lifted.end());
        frames.emplace(int64_t(f), std::move(data));
    }
    LiftParams params;
    const auto instances = cluster_masks(nodes, frames, k, params);
    std::set<std::pair<int64_t, int>> seen;
    for (const auto& inst : instances)
        for (const auto& member : inst.members) CHECK(seen.insert(member).second);
}

TEST_CASE("spatial_agreement: identical, disjoint, half-overlapping") {
    Rng rng(14);
    std::vector<Eigen::Vector3d> cube_a, cube_b, far;
    for (int i = 0; i < 20000; ++i) {
        const Eigen::Vector3d p(rng.uniform(0, 1), rng.uniform(0, 1), rng.uniform(0, 1));
        cube_a.push_back(p);
        cube_b.push_back(p + Eigen::Vector3d(0.5, 0, 0));
        far.push_back(p + Eigen::Vector3d(10, 0, 0));
    }
    CHECK(spatial_agreement(cube_a, cube_a, 0.05) == doctest::Approx(1.0));
    CHECK(spatial_agreement(cube_a, far, 0.05) == doctest::Approx(0.0));
    // Unit cubes offset by half a side: intersection 0.5, union 1.5.
    CHECK(spatial_agreement(cube_a, cube_b, 0.05) == doctest::Approx(1.0 / 3.0).epsilon(0.15));
}

TEST_CASE("merge_by_spatial_agreement: thresholds and fixed points") {
    auto make_instance = [](int id, const Eigen::Vector3d& offset, int n, uint64_t seed) {
        Rng rng(seed);
        Instance3D inst;
        inst.instance_id = id;
        for (int i = 0; i < n; ++i)
            inst.points.push_back(offset + Eigen::Vector3d(rng.uniform(0, 1), rng.uniform(0, 1),
                                                           rng.uniform(0, 1)));
        refresh_instance_geometry(inst);
        return inst;
    };

    // All pairwise IoU zero: unchanged.
    std::vector<Instance3D> apart = {make_instance(0, {0, 0, 0}, 500, 1),
                                     make_instance(1, {5, 0, 0}, 500, 2)};
    CHECK(merge_by_spatial_agreement(apart, 0.5, 0.1).size() == 2);

    // Two half-observations of one object merge at threshold 0.5.
    std::vector<Instance3D> overlap = {make_instance(0, {0, 0, 0}, 4000, 3),
                                       make_instance(1, {0.1, 0, 0}, 4000, 4)};
    const auto merged = merge_by_spatial_agreement(overlap, 0.5, 0.1);
    REQUIRE(merged.size() == 1);
    CHECK(merged[0].points.size() == 8000);

    // Threshold 1.0 with non-identical sets: unchanged.
    std::vector<Instance3D> strict = {make_instance(0, {0, 0, 0}, 500, 5),
                                      make_instance(1, {0.1, 0, 0}, 500, 6)};
    CHECK(merge_by_spatial_agreement(strict, 1.0, 0.1).size() == 2);
}
