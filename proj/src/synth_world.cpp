// Copyright (C) 2026 SceneForge contributors
// SPDX-License-Identifier: Apache-2.0
#include "sceneforge/synth_world.hpp"

#include "sceneforge/rng.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace sceneforge {

namespace {

constexpr double kWallMargin = 0.7;    // camera circuit distance from walls
constexpr double kCircuitClear = 0.4;  // object clearance from the circuit
constexpr double kInwardBiasDeg = 25.0;
constexpr double kMinGap = 0.12;       // gap between placed objects

bool boxes_overlap(const Aabb& a, const Aabb& b, double gap) {
    for (int i = 0; i < 3; ++i)
        if (a.max[i] + gap <= b.min[i] || b.max[i] + gap <= a.min[i]) return false;
    return true;
}

// Rectangular tour at kWallMargin from the walls, counter-clockwise, camera
// yawed slightly toward the room interior.
std::vector<GroundPose> make_circuit(const Eigen::Vector3d& room, int steps, Rng& rng) {
    const double m = kWallMargin;
    const Eigen::Vector2d c0(m, m), c1(room.x() - m, m), c2(room.x() - m, room.y() - m),
        c3(m, room.y() - m);
    const Eigen::Vector2d corners[4] = {c0, c1, c2, c3};
    double edge_len[4];
    double perimeter = 0;
    for (int e = 0; e < 4; ++e) {
        edge_len[e] = (corners[(e + 1) % 4] - corners[e]).norm();
        perimeter += edge_len[e];
    }
    std::vector<GroundPose> path;
    const double phase = rng.uniform(0.0, perimeter);
    for (int i = 0; i < steps; ++i) {
        double s = std::fmod(phase + perimeter * double(i) / double(steps), perimeter);
        int e = 0;
        while (s > edge_len[e]) {
            s -= edge_len[e];
            e = (e + 1) % 4;
        }
        const Eigen::Vector2d dir = (corners[(e + 1) % 4] - corners[e]) / edge_len[e];
        const Eigen::Vector2d pos = corners[e] + s * dir;
        GroundPose g;
        g.x = pos.x();
        g.y = pos.y();
        g.theta = wrap_deg(std::atan2(dir.y(), dir.x()) * 180.0 / std::numbers::pi +
                           kInwardBiasDeg);
        path.push_back(g);
    }
    return path;
}

}  // namespace

SceneSpec gen_scene(uint64_t seed, const SynthConfig& config) {
    Rng rng(seed * 0x9e3779b97f4a7c15ull + 1);
    SceneSpec spec;
    spec.seed = seed;
    spec.room_extents = config.room_extents;
    spec.camera_height = config.camera_height;

    const int n_objects =
        int(rng.uniform_int(std::max(3, config.min_objects), std::max(3, config.max_objects)));

    // Category plan: one category twice, two singleton categories, the rest
    // drawn freely but re-drawn if they break the singleton guarantee.
    const auto& palette = config.palette;
    if (palette.size() < 3) throw std::invalid_argument("gen_scene: palette too small");
    std::vector<std::string> cats;
    for (int attempt = 0; attempt < 1000; ++attempt) {
        cats.clear();
        std::vector<int> order(palette.size());
        for (size_t i = 0; i < order.size(); ++i) order[i] = int(i);
        rng.shuffle(order);
        cats.push_back(palette[size_t(order[0])]);
        cats.push_back(palette[size_t(order[0])]);
        cats.push_back(palette[size_t(order[1])]);
        if (n_objects >= 4) cats.push_back(palette[size_t(order[2])]);
        while (int(cats.size()) < n_objects)
            cats.push_back(palette[size_t(rng.uniform_int(0, int64_t(palette.size()) - 1))]);

        std::map<std::string, int> counts;
        for (const auto& c : cats) counts[c]++;
        int singletons = 0, repeated = 0;
        for (const auto& [c, k] : counts) {
            if (k == 1) ++singletons;
            if (k >= 2) ++repeated;
        }
        if (repeated >= 1 && singletons >= 2) break;
    }

    // Placement region: the rectangle inside the camera circuit.
    const double lo_x = kWallMargin + kCircuitClear, hi_x = spec.room_extents.x() - lo_x;
    const double lo_y = kWallMargin + kCircuitClear, hi_y = spec.room_extents.y() - lo_y;
    if (hi_x - lo_x < 1.0 || hi_y - lo_y < 1.0)
        throw std::invalid_argument("gen_scene: room too small for the camera circuit");

    for (const auto& cat : cats) {
        for (int attempt = 0;; ++attempt) {
            const double sx = rng.uniform(0.3, 0.8);
            const double sy = rng.uniform(0.3, 0.8);
            const double sz = rng.uniform(0.4, 1.4);
            const double px = rng.uniform(lo_x, hi_x - sx);
            const double py = rng.uniform(lo_y, hi_y - sy);
            Aabb box{Eigen::Vector3d(px, py, 0.0), Eigen::Vector3d(px + sx, py + sy, sz)};
            bool ok = true;
            for (const auto& o : spec.objects)
                if (boxes_overlap(o.box, box, kMinGap)) {
                    ok = false;
                    break;
                }
            if (ok) {
                spec.objects.push_back({cat, box});
                break;
            }
            if (attempt > 5000)
                throw std::runtime_error("gen_scene: could not place objects without overlap");
        }
    }

    spec.trajectory = make_circuit(spec.room_extents, std::max(4, config.trajectory_steps), rng);
    return spec;
}

Intrinsics synth_intrinsics(const SynthConfig& config) {
    Intrinsics k;
    k.width = config.render_width;
    k.height = config.render_height;
    const double f =
        0.5 * config.render_width / std::tan(0.5 * config.render_fov_deg * std::numbers::pi / 180.0);
    k.fx = k.fy = f;
    k.cx = 0.5 * (config.render_width - 1);
    k.cy = 0.5 * (config.render_height - 1);
    return k;
}

namespace {

// Slab intersection with the ray p = origin + t * dir. Returns [t_in, t_out].
inline void slab(const Aabb& box, const Eigen::Vector3d& o, const Eigen::Vector3d& d,
                 double& t_in, double& t_out) {
    t_in = -std::numeric_limits<double>::infinity();
    t_out = std::numeric_limits<double>::infinity();
    for (int a = 0; a < 3; ++a) {
        if (std::abs(d[a]) < 1e-15) {
            if (o[a] < box.min[a] || o[a] > box.max[a]) {
                t_in = std::numeric_limits<double>::infinity();
                t_out = -std::numeric_limits<double>::infinity();
                return;
            }
            continue;
        }
        double t0 = (box.min[a] - o[a]) / d[a];
        double t1 = (box.max[a] - o[a]) / d[a];
        if (t0 > t1) std::swap(t0, t1);
        t_in = std::max(t_in, t0);
        t_out = std::min(t_out, t1);
    }
}

}  // namespace

std::optional<RayHit> raycast(const SceneSpec& spec, const Pose& pose, const Intrinsics& k,
                              int u, int v, double max_range) {
    // Unnormalized direction with unit camera z, so the ray parameter is the
    // camera-frame depth directly.
    const Eigen::Vector3d dir_cam((u - k.cx) / k.fx, (v - k.cy) / k.fy, 1.0);
    const Eigen::Vector3d dir = pose.rotation * dir_cam;
    const Eigen::Vector3d& origin = pose.translation;

    const Aabb room{Eigen::Vector3d::Zero(), spec.room_extents};
    double t_in, t_out;
    slab(room, origin, dir, t_in, t_out);

    RayHit hit;
    hit.object_id = 0;
    hit.depth = t_out > 0 ? t_out : std::numeric_limits<double>::infinity();

    for (size_t i = 0; i < spec.objects.size(); ++i) {
        slab(spec.objects[i].box, origin, dir, t_in, t_out);
        if (t_in <= t_out && t_in > 1e-9 && t_in < hit.depth) {
            hit.depth = t_in;
            hit.object_id = int(i) + 1;
        }
    }
    if (!std::isfinite(hit.depth) || hit.depth > max_range) return std::nullopt;
    return hit;
}

namespace {

template <typename PixelFn>
void render_rows(const SceneSpec& spec, const Pose& pose, const Intrinsics& k, double max_range,
                 int y0, int y1, PixelFn&& fn) {
    for (int y = y0; y < y1; ++y)
        for (int x = 0; x < k.width; ++x) fn(x, y, raycast(spec, pose, k, x, y, max_range));
}

}  // namespace

DepthMap render_depth_serial(const SceneSpec& spec, const Pose& pose, const Intrinsics& k,
                             double max_range) {
    DepthMap d(k.width, k.height);
    render_rows(spec, pose, k, max_range, 0, k.height,
                [&](int x, int y, const std::optional<RayHit>& h) {
                    if (h) d.set(x, y, float(h->depth));
                });
    return d;
}

DepthMap render_depth(const SceneSpec& spec, const Pose& pose, const Intrinsics& k,
                      double max_range) {
    DepthMap d(k.width, k.height);
#pragma omp parallel for schedule(static)
    for (int y = 0; y < k.height; ++y)
        render_rows(spec, pose, k, max_range, y, y + 1,
                    [&](int x, int yy, const std::optional<RayHit>& h) {
                        if (h) d.set(x, yy, float(h->depth));
                    });
    return d;
}

Image16 render_masks(const SceneSpec& spec, const Pose& pose, const Intrinsics& k,
                     double max_range) {
    Image16 labels(k.width, k.height);
#pragma omp parallel for schedule(static)
    for (int y = 0; y < k.height; ++y)
        render_rows(spec, pose, k, max_range, y, y + 1,
                    [&](int x, int yy, const std::optional<RayHit>& h) {
                        if (h) labels.set(x, yy, uint16_t(h->object_id));
                    });
    return labels;
}

double GroundTruth::box_gap(const Aabb& a, const Aabb& b) {
    Eigen::Vector3d gap = Eigen::Vector3d::Zero();
    for (int i = 0; i < 3; ++i)
        gap[i] = std::max({0.0, a.min[i] - b.max[i], b.min[i] - a.max[i]});
    return gap.norm();
}

GroundTruth gt_answers(const SceneSpec& spec) {
    GroundTruth gt;
    for (size_t i = 0; i < spec.objects.size(); ++i) gt.category_counts[spec.objects[i].category]++;
    for (size_t i = 0; i < spec.objects.size(); ++i) {
        const auto& cat = spec.objects[i].category;
        if (gt.category_counts[cat] == 1) gt.unique_category_object[cat] = int(i);
    }
    gt.room_area = spec.room_extents.x() * spec.room_extents.y();
    for (const auto& o : spec.objects)
        gt.longest_dimension_cm.push_back(100.0 * o.box.extents().maxCoeff());
    return gt;
}

Pose synth_camera(const SceneSpec& spec, size_t traj_index) {
    if (traj_index >= spec.trajectory.size())
        throw std::out_of_range("synth_camera: trajectory index out of range");
    return pose_from_ground(spec.trajectory[traj_index], spec.camera_height,
                            int64_t(traj_index));
}

namespace {

double box_surface_distance(const Aabb& box, const Eigen::Vector3d& p) {
    const Eigen::Vector3d c = box.center();
    const Eigen::Vector3d h = 0.5 * box.extents();
    const Eigen::Vector3d q = (p - c).cwiseAbs() - h;
    const double outside = q.cwiseMax(0.0).norm();
    const double inside = std::min(q.maxCoeff(), 0.0);
    return std::abs(outside + inside);
}

}  // namespace

double distance_to_surface(const SceneSpec& spec, const Eigen::Vector3d& p) {
    const Aabb room{Eigen::Vector3d::Zero(), spec.room_extents};
    double best = box_surface_distance(room, p);
    for (const auto& o : spec.objects) best = std::min(best, box_surface_distance(o.box, p));
    return best;
}

}  // namespace sceneforge
