// Copyright (C) 2026 SceneForge contributors
// SPDX-License-Identifier: Apache-2.0
#include "sceneforge/synth_world.hpp"

#include <doctest.h>

#include <cmath>
#include <map>

using namespace sceneforge;

TEST_CASE("gen_scene is deterministic and respects the configured range") {
    SynthConfig cfg;
    for (uint64_t seed : {0u, 1u, 2u, 7u}) {
        const SceneSpec a = gen_scene(seed, cfg);
        const SceneSpec b = gen_scene(seed, cfg);
        REQUIRE(a.objects.size() == b.objects.size());
        for (size_t i = 0; i < a.objects.size(); ++i) {
            CHECK(a.objects[i].category == b.objects[i].category);
            CHECK((a.objects[i].box.min - b.objects[i].box.min).norm() == 0.0);
            CHECK((a.objects[i].box.max - b.objects[i].box.max).norm() == 0.0);
        }
        CHECK(a.objects.size() >= size_t(cfg.min_objects));
        CHECK(a.objects.size() <= size_t(cfg.max_objects));
        CHECK(a.trajectory.size() == size_t(cfg.trajectory_steps));
    }
}

TEST_CASE("gen_scene: boxes stay inside the room and pairwise disjoint") {
    const SceneSpec spec = gen_scene(1);
    const Aabb room{Eigen::Vector3d::Zero(), spec.room_extents};
    for (const auto& o : spec.objects) {
        CHECK(room.contains(o.box.min));
        CHECK(room.contains(o.box.max));
    }
    for (size_t i = 0; i < spec.objects.size(); ++i)
        for (size_t j = i + 1; j < spec.objects.size(); ++j)
            CHECK(GroundTruth::box_gap(spec.objects[i].box, spec.objects[j].box) > 0.0);
}

TEST_CASE("gen_scene guarantees material for every question type") {
    for (uint64_t seed = 0; seed < 10; ++seed) {
        const GroundTruth gt = gt_answers(gen_scene(seed));
        int repeated = 0, singletons = 0;
        for (const auto& [cat, count] : gt.category_counts) {
            if (count >= 2) ++repeated;
            if (count == 1) ++singletons;
        }
        CHECK(repeated >= 1);
        CHECK(singletons >= 2);
        CHECK(gt.unique_category_object.size() == size_t(singletons));
    }
}

TEST_CASE("render_depth: wall straight ahead gives a constant band") {
    SceneSpec spec;
    spec.objects.clear();
    spec.room_extents = Eigen::Vector3d(6, 5, 3);
    spec.trajectory = {{3.0, 2.5, 0.0}};  // facing +x, wall at x=6 is 3 m away
    const SynthConfig cfg;
    const Intrinsics k = synth_intrinsics(cfg);
    const Pose pose = synth_camera(spec, 0);
    const DepthMap depth = render_depth(spec, pose, k);
    // Central pixel looks straight at the wall.
    const int cx = int(std::lround(k.cx)), cy = int(std::lround(k.cy));
    REQUIRE(depth.is_valid(cx, cy));
    CHECK(depth.at(cx, cy) == doctest::Approx(3.0).epsilon(1e-6));
}

TEST_CASE("render_depth: rays beyond max range are invalid") {
    SceneSpec spec;
    spec.room_extents = Eigen::Vector3d(6, 5, 3);
    spec.trajectory = {{3.0, 2.5, 0.0}};
    const Intrinsics k = synth_intrinsics({});
    const DepthMap depth = render_depth(spec, synth_camera(spec, 0), k, 2.0);
    const int cx = int(std::lround(k.cx)), cy = int(std::lround(k.cy));
    CHECK_FALSE(depth.is_valid(cx, cy));  // wall is 3 m away, range is 2 m
}

TEST_CASE("raycast: on-axis box face at 2 m") {
    SceneSpec spec;
    spec.room_extents = Eigen::Vector3d(6, 5, 3);
    spec.objects.push_back({"cabinet", {{3.0, 2.0, 0.0}, {3.6, 3.0, 2.5}}});
    spec.trajectory = {{1.0, 2.5, 0.0}};  // box face x=3 is 2 m ahead
    const Intrinsics k = synth_intrinsics({});
    const auto hit = raycast(spec, synth_camera(spec, 0), k, int(std::lround(k.cx)),
                             int(std::lround(k.cy)));
    REQUIRE(hit.has_value());
    CHECK(hit->depth == doctest::Approx(2.0).epsilon(1e-9));
    CHECK(hit->object_id == 1);
}

TEST_CASE("render_depth and render_masks agree on every pixel") {
    const SceneSpec spec = gen_scene(3);
    const Intrinsics k = synth_intrinsics({});
    for (size_t f : {size_t(0), spec.trajectory.size() / 2}) {
        const Pose pose = synth_camera(spec, f);
        const DepthMap depth = render_depth(spec, pose, k);
        const Image16 masks = render_masks(spec, pose, k);
        size_t object_pixels = 0;
        for (int y = 0; y < k.height; ++y)
            for (int x = 0; x < k.width; ++x) {
                const auto hit = raycast(spec, pose, k, x, y);
                REQUIRE(hit.has_value());  // closed room: every ray hits
                CHECK(depth.is_valid(x, y));
                CHECK(depth.at(x, y) == doctest::Approx(hit->depth));
                CHECK(masks.at(x, y) == uint16_t(hit->object_id));
                if (masks.at(x, y) != 0) ++object_pixels;
            }
        CHECK(object_pixels > 0);  // the tour actually sees objects
    }
}

TEST_CASE("gt_answers: area, counts, gaps, longest dimensions") {
    SceneSpec spec;
    spec.room_extents = Eigen::Vector3d(4, 5, 3);
    spec.objects.push_back({"sofa", {{0.5, 0.5, 0.0}, {2.7, 1.4, 0.8}}});
    spec.objects.push_back({"chair", {{3.0, 0.5, 0.0}, {3.5, 1.0, 1.0}}});
    spec.objects.push_back({"chair", {{3.0, 3.0, 0.0}, {3.5, 3.5, 1.0}}});
    const GroundTruth gt = gt_answers(spec);

    CHECK(gt.room_area == doctest::Approx(20.0));
    CHECK(gt.category_counts.at("sofa") == 1);
    CHECK(gt.category_counts.at("chair") == 2);
    CHECK(gt.unique_category_object.at("sofa") == 0);
    CHECK(gt.unique_category_object.count("chair") == 0);
    CHECK(gt.longest_dimension_cm[0] == doctest::Approx(220.0));

    // Unit cubes 3 m apart on x: surface gap is 2 m.
    const Aabb a{{0, 0, 0}, {1, 1, 1}};
    const Aabb b{{3, 0, 0}, {4, 1, 1}};
    CHECK(GroundTruth::box_gap(a, b) == doctest::Approx(2.0));
    CHECK(GroundTruth::box_gap(a, a) == doctest::Approx(0.0));
}

TEST_CASE("distance_to_surface: room shell and object faces") {
    SceneSpec spec;
    spec.room_extents = Eigen::Vector3d(6, 5, 3);
    spec.objects.push_back({"table", {{2, 2, 0}, {3, 3, 1}}});
    CHECK(distance_to_surface(spec, {0.0, 2.5, 1.5}) == doctest::Approx(0.0));   // on a wall
    CHECK(distance_to_surface(spec, {0.2, 2.5, 1.5}) == doctest::Approx(0.2));   // near a wall
    CHECK(distance_to_surface(spec, {2.5, 2.5, 1.0}) == doctest::Approx(0.0));   // on the box top
    CHECK(distance_to_surface(spec, {2.5, 2.5, 1.2}) == doctest::Approx(0.2));   // above the box
}

TEST_CASE("gt determinism: same seed yields the same relations twice") {
    const GroundTruth a = gt_answers(gen_scene(2));
    const GroundTruth b = gt_answers(gen_scene(2));
    CHECK(a.category_counts == b.category_counts);
    CHECK(a.room_area == b.room_area);
    CHECK(a.longest_dimension_cm == b.longest_dimension_cm);
}
