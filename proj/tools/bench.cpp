// Copyright (C) 2026 SceneForge contributors
// SPDX-License-Identifier: Apache-2.0
//
// Compares the OpenMP kernels against their serial references on a mid-size
// synthetic scene and checks that both paths produce identical results.

#include "sceneforge/depth_fusion.hpp"
#include "sceneforge/instance_lift.hpp"
#include "sceneforge/point_filters.hpp"
#include "sceneforge/rng.hpp"
#include "sceneforge/synth_world.hpp"

#include <omp.h>

#include <cstdio>
#include <functional>
#include <string>
#include <vector>

using namespace sceneforge;

namespace {

struct Row {
    std::string name;
    double serial_ms;
    double parallel_ms;
    bool match;
};

double time_ms(const std::function<void()>& fn) {
    const double t0 = omp_get_wtime();
    fn();
    return (omp_get_wtime() - t0) * 1000.0;
}

void print_rows(const std::vector<Row>& rows) {
    std::printf("%-28s %12s %12s %10s %8s\n", "kernel", "serial ms", "parallel ms", "speedup",
                "match");
    for (const auto& r : rows)
        std::printf("%-28s %12.1f %12.1f %9.2fx %8s\n", r.name.c_str(), r.serial_ms,
                    r.parallel_ms, r.serial_ms / std::max(r.parallel_ms, 1e-9),
                    r.match ? "yes" : "NO");
}

}  // namespace

int main() {
    std::printf("threads: %d\n\n", omp_get_max_threads());
    std::vector<Row> rows;

    SynthConfig sc;
    sc.trajectory_steps = 12;
    const SceneSpec spec = gen_scene(7, sc);
    const Intrinsics k = synth_intrinsics(sc);

    // Depth rendering.
    std::vector<DepthMap> depths_serial, depths_parallel;
    const double render_serial = time_ms([&] {
        for (size_t i = 0; i < spec.trajectory.size(); ++i)
            depths_serial.push_back(render_depth_serial(spec, synth_camera(spec, i), k));
    });
    const double render_parallel = time_ms([&] {
        for (size_t i = 0; i < spec.trajectory.size(); ++i)
            depths_parallel.push_back(render_depth(spec, synth_camera(spec, i), k));
    });
    bool render_match = true;
    for (size_t i = 0; i < depths_serial.size(); ++i)
        render_match &= depths_serial[i].values == depths_parallel[i].values &&
                        depths_serial[i].valid == depths_parallel[i].valid;
    rows.push_back({"render_depth", render_serial, render_parallel, render_match});

    // TSDF integration at 2.5 cm over the full room.
    const Aabb room{Eigen::Vector3d::Constant(-0.2),
                    spec.room_extents + Eigen::Vector3d::Constant(0.2)};
    TsdfVolume vol_serial = TsdfVolume::covering(room, 0.025);
    TsdfVolume vol_parallel = vol_serial;
    const double integrate_serial_ms = time_ms([&] {
        for (size_t i = 0; i < spec.trajectory.size(); ++i)
            integrate_frame_serial(vol_serial, depths_serial[i], synth_camera(spec, i), k);
    });
    const double integrate_parallel_ms = time_ms([&] {
        for (size_t i = 0; i < spec.trajectory.size(); ++i)
            integrate_frame(vol_parallel, depths_serial[i], synth_camera(spec, i), k);
    });
    rows.push_back({"integrate_frame", integrate_serial_ms, integrate_parallel_ms,
                    vol_serial.dist == vol_parallel.dist &&
                        vol_serial.weight == vol_parallel.weight});

    // Mesh extraction.
    TriangleMesh mesh_serial, mesh_parallel;
    const double extract_serial_ms =
        time_ms([&] { mesh_serial = extract_mesh_serial(vol_serial); });
    const double extract_parallel_ms = time_ms([&] { mesh_parallel = extract_mesh(vol_serial); });
    rows.push_back({"extract_mesh", extract_serial_ms, extract_parallel_ms,
                    mesh_serial.vertices == mesh_parallel.vertices &&
                        mesh_serial.triangles == mesh_parallel.triangles});

    // Outlier filters on the mesh vertices.
    const std::vector<Eigen::Vector3d>& pts = mesh_serial.vertices;
    std::vector<int> radius_serial_idx, radius_parallel_idx;
    const double radius_serial_ms =
        time_ms([&] { radius_serial_idx = radius_filter_serial(pts, 0.08, 8); });
    const double radius_parallel_ms =
        time_ms([&] { radius_parallel_idx = radius_filter(pts, 0.08, 8); });
    rows.push_back(
        {"radius_filter", radius_serial_ms, radius_parallel_ms,
         radius_serial_idx == radius_parallel_idx});

    std::vector<int> stat_serial_idx, stat_parallel_idx;
    const double stat_serial_ms =
        time_ms([&] { stat_serial_idx = statistical_filter_serial(pts, 16, 2.0); });
    const double stat_parallel_ms =
        time_ms([&] { stat_parallel_idx = statistical_filter(pts, 16, 2.0); });
    rows.push_back({"statistical_filter", stat_serial_ms, stat_parallel_ms,
                    stat_serial_idx == stat_parallel_idx});

    std::printf("scene: %zu objects, %zu frames, %zu mesh vertices\n\n", spec.objects.size(),
                spec.trajectory.size(), mesh_serial.vertices.size());
    print_rows(rows);

    bool all_match = true;
    for (const auto& r : rows) all_match &= r.match;
    return all_match ? 0 : 1;
}
