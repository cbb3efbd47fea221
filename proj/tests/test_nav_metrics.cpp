// Copyright (C) 2026 SceneForge contributors
// SPDX-License-Identifier: Apache-2.0
#include "sceneforge/nav_metrics.hpp"
#include "sceneforge/rng.hpp"

#include <doctest.h>

#include <cmath>

using namespace sceneforge;

namespace {

EpisodeResult episode_to(const Eigen::Vector2d& goal, std::vector<GroundPose> path,
                         double shortest) {
    EpisodeResult r;
    r.executed_path = std::move(path);
    r.goal = goal;
    r.shortest_path_length = shortest;
    return r;
}

Detection det(const Aabb& box, const std::string& cat, double conf = 1.0) {
    return {box, cat, conf};
}

Aabb unit_cube(double x0, double y0 = 0, double z0 = 0) {
    return {{x0, y0, z0}, {x0 + 1, y0 + 1, z0 + 1}};
}

}  // namespace

TEST_CASE("path_length: single pose, straight path, random oracle") {
    CHECK(path_length({{1, 1, 0}}) == 0.0);
    CHECK(path_length({{0, 0, 0}, {1, 0, 0}, {2, 0, 0}}) == doctest::Approx(2.0));

    Rng rng(10);
    std::vector<GroundPose> path;
    for (int i = 0; i < 30; ++i) path.push_back({rng.uniform(-5, 5), rng.uniform(-5, 5), 0});
    double expect = 0;
    for (size_t i = 0; i + 1 < path.size(); ++i)
        expect += std::hypot(path[i + 1].x - path[i].x, path[i + 1].y - path[i].y);
    CHECK(path_length(path) == doctest::Approx(expect));
}

TEST_CASE("nav_metrics: perfect shortest-path episode") {
    const auto r = nav_metrics({episode_to({2, 0}, {{0, 0, 0}, {1, 0, 0}, {2, 0, 0}}, 2.0)});
    CHECK(r.success_rate == doctest::Approx(1.0));
    CHECK(r.oracle_success == doctest::Approx(1.0));
    CHECK(r.spl == doctest::Approx(1.0));
    CHECK(r.distance_to_goal == doctest::Approx(0.0));
    CHECK(r.path_length == doctest::Approx(2.0));
}

TEST_CASE("nav_metrics: success with double-length path contributes SPL 0.5") {
    std::vector<GroundPose> wander;
    for (int i = 0; i <= 8; ++i) wander.push_back({0.5 * i, (i % 2) ? 0.66143783 : 0.0, 0});
    // Zig-zag reaching (4, 0): executed length 8 x 0.83, shortest 4 x 0.83...
    // keep it simple: straight there and back plus there.
    const auto r = nav_metrics(
        {episode_to({2, 0}, {{0, 0, 0}, {4, 0, 0}, {2, 0, 0}}, 2.0)});  // executed 6, best 2
    CHECK(r.success_rate == doctest::Approx(1.0));
    CHECK(r.spl == doctest::Approx(2.0 / 6.0));
}

TEST_CASE("nav_metrics: failures contribute zero SPL regardless of length") {
    const auto r = nav_metrics({episode_to({100, 0}, {{0, 0, 0}, {1, 0, 0}}, 50.0)});
    CHECK(r.success_rate == doctest::Approx(0.0));
    CHECK(r.spl == doctest::Approx(0.0));
    CHECK(r.distance_to_goal == doctest::Approx(99.0));
}

TEST_CASE("nav_metrics: oracle success counts passing near the goal") {
    // Walks through the goal and away: OS hits, SR misses.
    const auto r = nav_metrics({episode_to({2, 0}, {{0, 0, 0}, {2, 0, 0}, {20, 0, 0}}, 2.0)});
    CHECK(r.success_rate == doctest::Approx(0.0));
    CHECK(r.oracle_success == doctest::Approx(1.0));
}

TEST_CASE("nav_metrics: SPL <= SR and OS >= SR on randomized episode sets") {
    Rng rng(77);
    for (int trial = 0; trial < 200; ++trial) {
        std::vector<EpisodeResult> results;
        const int n = int(rng.uniform_int(1, 6));
        for (int e = 0; e < n; ++e) {
            std::vector<GroundPose> path;
            const int len = int(rng.uniform_int(1, 12));
            for (int i = 0; i < len; ++i)
                path.push_back({rng.uniform(-8, 8), rng.uniform(-8, 8), 0});
            results.push_back(episode_to({rng.uniform(-8, 8), rng.uniform(-8, 8)},
                                         std::move(path), rng.uniform(0.5, 12.0)));
        }
        const auto r = nav_metrics(results);
        CHECK(r.spl <= r.success_rate + 1e-12);
        CHECK(r.oracle_success >= r.success_rate - 1e-12);
    }
}

TEST_CASE("nav_metrics rejects empty input and degenerate episodes") {
    CHECK_THROWS_AS(nav_metrics({}), std::invalid_argument);
    CHECK_THROWS_AS(nav_metrics({episode_to({0, 0}, {}, 1.0)}), std::invalid_argument);
    CHECK_THROWS_AS(nav_metrics({episode_to({0, 0}, {{0, 0, 0}}, 0.0)}), std::invalid_argument);
}

TEST_CASE("aabb_iou: identical, disjoint, half-overlapping unit cubes") {
    const Aabb a = unit_cube(0);
    CHECK(aabb_iou(a, a) == doctest::Approx(1.0));
    CHECK(aabb_iou(a, unit_cube(5)) == doctest::Approx(0.0));
    // Offset by half along x: intersection 0.5, union 1.5.
    CHECK(aabb_iou(a, unit_cube(0.5)) == doctest::Approx(1.0 / 3.0).epsilon(1e-9));
    CHECK(aabb_iou(a, unit_cube(0.5)) == doctest::Approx(aabb_iou(unit_cube(0.5), a)));
}

TEST_CASE("f1_at_iou: perfect, empty, and the 2-of-3 confusion") {
    DetectionSet gt = {det(unit_cube(0), "chair"), det(unit_cube(3), "chair"),
                       det(unit_cube(6), "table")};
    CHECK(f1_at_iou(gt, gt, 0.5) == doctest::Approx(1.0));
    CHECK(f1_at_iou({}, gt, 0.5) == doctest::Approx(0.0));

    // Two correct predictions plus one spurious: P = R = 2/3.
    DetectionSet pred = {det(unit_cube(0), "chair"), det(unit_cube(6), "table"),
                         det(unit_cube(20), "chair")};
    CHECK(f1_at_iou(pred, gt, 0.5) == doctest::Approx(2.0 / 3.0));
}

TEST_CASE("f1_at_iou: category must match even at perfect overlap") {
    DetectionSet gt = {det(unit_cube(0), "chair")};
    DetectionSet pred = {det(unit_cube(0), "table")};
    CHECK(f1_at_iou(pred, gt, 0.25) == doctest::Approx(0.0));
}

TEST_CASE("f1 and AP are monotone nonincreasing in the IoU threshold") {
    Rng rng(21);
    DetectionSet gt, pred;
    for (int i = 0; i < 12; ++i) {
        const double x = rng.uniform(-10, 10), y = rng.uniform(-10, 10);
        gt.push_back(det({{x, y, 0}, {x + 1, y + 1, 1}}, i % 2 ? "a" : "b"));
        const double dx = rng.uniform(0, 0.8);
        pred.push_back(det({{x + dx, y, 0}, {x + dx + 1, y + 1, 1}}, i % 2 ? "a" : "b",
                           rng.uniform(0.1, 1.0)));
    }
    double prev_f1 = 2, prev_ap = 2;
    for (double threshold : {0.1, 0.25, 0.5, 0.75, 0.9}) {
        const double f1 = f1_at_iou(pred, gt, threshold);
        const double ap = average_precision(pred, gt, threshold);
        CHECK(f1 <= prev_f1 + 1e-12);
        CHECK(ap <= prev_ap + 1e-12);
        prev_f1 = f1;
        prev_ap = ap;
    }
}

TEST_CASE("average_precision: perfect detector and no predictions") {
    DetectionSet gt = {det(unit_cube(0), "chair"), det(unit_cube(3), "chair")};
    DetectionSet pred = {det(unit_cube(0), "chair", 0.9), det(unit_cube(3), "chair", 0.8)};
    CHECK(average_precision(pred, gt, 0.5) == doctest::Approx(1.0));
    CHECK(average_precision({}, gt, 0.5) == doctest::Approx(0.0));
}

TEST_CASE("average_precision: hand-computed toy case with one FP ranked second") {
    // 4 ground-truth instances; 5 predictions with the false positive in
    // rank 2. PR points: (1/4,1) (1/4,1/2) (2/4,2/3) (3/4,3/4) (1,4/5).
    // All-point interpolation: 0.25*1 + 0.75*0.8 = 0.85.
    DetectionSet gt = {det(unit_cube(0), "chair"), det(unit_cube(3), "chair"),
                       det(unit_cube(6), "chair"), det(unit_cube(9), "chair")};
    DetectionSet pred = {det(unit_cube(0), "chair", 0.95), det(unit_cube(30), "chair", 0.90),
                         det(unit_cube(3), "chair", 0.85), det(unit_cube(6), "chair", 0.80),
                         det(unit_cube(9), "chair", 0.75)};
    CHECK(average_precision(pred, gt, 0.5) == doctest::Approx(0.85));
}

TEST_CASE("average_precision averages over ground-truth categories") {
    DetectionSet gt = {det(unit_cube(0), "chair"), det(unit_cube(5), "table")};
    // chair found, table entirely missed: AP = (1 + 0) / 2.
    DetectionSet pred = {det(unit_cube(0), "chair", 0.9)};
    CHECK(average_precision(pred, gt, 0.5) == doctest::Approx(0.5));
}
