// Copyright (C) 2026 SceneForge contributors
// SPDX-License-Identifier: Apache-2.0
#include "sceneforge/depth_fusion.hpp"

#include "mc_tables.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <unordered_map>

namespace sceneforge {

TsdfVolume::TsdfVolume(const Eigen::Vector3d& origin_, double voxel_size_,
                       const Eigen::Vector3i& dims_, double trunc_, float max_weight_)
    : origin(origin_),
      voxel_size(voxel_size_),
      dims(dims_),
      trunc(trunc_ > 0.0 ? trunc_ : 4.0 * voxel_size_),
      max_weight(max_weight_) {
    if (!(voxel_size > 0.0)) throw std::invalid_argument("voxel_size must be positive");
    if (trunc < voxel_size) throw std::invalid_argument("truncation must be >= voxel_size");
    if ((dims.array() < 0).any()) throw std::invalid_argument("negative grid dims");
    const size_t n = size_t(dims.x()) * dims.y() * dims.z();
    dist.assign(n, 0.f);
    weight.assign(n, 0.f);
}

TsdfVolume TsdfVolume::covering(const Aabb& box, double voxel_size, double trunc,
                                float max_weight) {
    Eigen::Vector3i dims;
    for (int a = 0; a < 3; ++a)
        dims[a] = std::max(1, int(std::ceil((box.max[a] - box.min[a]) / voxel_size)));
    return TsdfVolume(box.min, voxel_size, dims, trunc, max_weight);
}

DepthMap sparse_depth_prior(const SparseCloud& cloud, const Pose& pose, const Intrinsics& k) {
    DepthMap out(k.width, k.height);
    for (const auto& p : cloud.points) {
        const auto px = project(p, pose, k);
        if (!px) continue;
        const int u = int(std::lround(px->u));
        const int v = int(std::lround(px->v));
        if (!out.is_valid(u, v) || px->depth < out.at(u, v))
            out.set(u, v, float(px->depth));
    }
    return out;
}

DepthMap truncate_depth(const DepthMap& depth, double max_depth) {
    if (!(max_depth > 0.0)) throw std::invalid_argument("max_depth must be positive");
    DepthMap out = depth;
    for (size_t i = 0; i < out.values.size(); ++i) {
        if (out.valid[i] && out.values[i] > max_depth) {
            out.valid[i] = 0;
            out.values[i] = 0.f;
        }
    }
    return out;
}

namespace {

// Shared per-voxel update; identical between serial and OpenMP paths.
inline void integrate_slice(TsdfVolume& vol, const DepthMap& depth, const Eigen::Matrix3d& r_wc,
                            const Eigen::Vector3d& t_wc, const Intrinsics& k, int z) {
    const double inv_trunc = 1.0 / vol.trunc;
    for (int y = 0; y < vol.dims.y(); ++y) {
        for (int x = 0; x < vol.dims.x(); ++x) {
            const Eigen::Vector3d pc = r_wc * vol.voxel_center(x, y, z) + t_wc;
            if (pc.z() <= 0.0) continue;
            const double u = k.fx * pc.x() / pc.z() + k.cx;
            const double v = k.fy * pc.y() / pc.z() + k.cy;
            if (u < -0.5 || u >= k.width - 0.5 || v < -0.5 || v >= k.height - 0.5) continue;
            const int px = int(std::lround(u));
            const int py = int(std::lround(v));
            if (!depth.is_valid(px, py)) continue;
            const double sdf = double(depth.at(px, py)) - pc.z();
            if (sdf <= -vol.trunc) continue;  // behind the band: no carving
            const float tsdf = float(std::clamp(sdf * inv_trunc, -1.0, 1.0));
            const size_t i = vol.idx(x, y, z);
            const float w = vol.weight[i];
            vol.dist[i] = (w * vol.dist[i] + tsdf) / (w + 1.f);
            vol.weight[i] = std::min(w + 1.f, vol.max_weight);
        }
    }
}

void check_frame(const TsdfVolume& vol, const DepthMap& depth, const Intrinsics& k) {
    if (depth.width != k.width || depth.height != k.height)
        throw std::invalid_argument("depth map size does not match intrinsics");
    if (!(vol.voxel_size > 0.0) || vol.trunc < vol.voxel_size)
        throw std::invalid_argument("volume not initialized");
}

}  // namespace

void integrate_frame_serial(TsdfVolume& volume, const DepthMap& depth, const Pose& pose,
                            const Intrinsics& k) {
    check_frame(volume, depth, k);
    const Eigen::Matrix3d r_wc = pose.rotation.transpose();
    const Eigen::Vector3d t_wc = -r_wc * pose.translation;
    for (int z = 0; z < volume.dims.z(); ++z)
        integrate_slice(volume, depth, r_wc, t_wc, k, z);
}

void integrate_frame(TsdfVolume& volume, const DepthMap& depth, const Pose& pose,
                     const Intrinsics& k) {
    check_frame(volume, depth, k);
    const Eigen::Matrix3d r_wc = pose.rotation.transpose();
    const Eigen::Vector3d t_wc = -r_wc * pose.translation;
    const int nz = volume.dims.z();
    // Each voxel is written by exactly one iteration; slices are independent.
#pragma omp parallel for schedule(dynamic, 4)
    for (int z = 0; z < nz; ++z)
        integrate_slice(volume, depth, r_wc, t_wc, k, z);
}

namespace {

// One surface vertex candidate on a grid edge, keyed so shared edges weld.
struct EdgeVertex {
    uint64_t key;
    Eigen::Vector3d position;
};

struct CellOutput {
    std::vector<EdgeVertex> vertices;      // in first-use order
    std::vector<std::array<uint64_t, 3>> triangles;  // edge keys
};

inline uint64_t edge_key(const TsdfVolume& vol, int x, int y, int z, int axis) {
    const uint64_t vertex =
        (uint64_t(z) * uint64_t(vol.dims.y()) + uint64_t(y)) * uint64_t(vol.dims.x()) +
        uint64_t(x);
    return vertex * 3 + uint64_t(axis);
}

// Marching cubes over cells with z in [z0, z1).
void polygonize_range(const TsdfVolume& vol, int z0, int z1, CellOutput& out) {
    const auto& etable = mc::edge_table();
    const int nx = vol.dims.x(), ny = vol.dims.y();
    float corner_d[8];
    Eigen::Vector3d corner_p[8];
    uint64_t keys[12];
    Eigen::Vector3d verts[12];

    for (int z = z0; z < z1; ++z) {
        for (int y = 0; y + 1 < ny; ++y) {
            for (int x = 0; x + 1 < nx; ++x) {
                int config = 0;
                bool observed = true;
                for (int c = 0; c < 8; ++c) {
                    const int cx = x + mc::kCornerOffset[c][0];
                    const int cy = y + mc::kCornerOffset[c][1];
                    const int cz = z + mc::kCornerOffset[c][2];
                    const size_t i = vol.idx(cx, cy, cz);
                    if (vol.weight[i] <= 0.f) {
                        observed = false;
                        break;
                    }
                    corner_d[c] = vol.dist[i];
                    corner_p[c] = vol.voxel_center(cx, cy, cz);
                    if (corner_d[c] < 0.f) config |= 1 << c;
                }
                if (!observed) continue;
                const uint16_t edges = etable[size_t(config)];
                if (edges == 0) continue;

                for (int e = 0; e < 12; ++e) {
                    if (!(edges & (1u << e))) continue;
                    const int a = mc::kEdgeCorners[e][0];
                    const int b = mc::kEdgeCorners[e][1];
                    const double d0 = corner_d[a], d1 = corner_d[b];
                    double t = 0.5;
                    if (std::abs(d1 - d0) > 1e-12) t = std::clamp(d0 / (d0 - d1), 0.0, 1.0);
                    verts[e] = corner_p[a] + t * (corner_p[b] - corner_p[a]);
                    // Canonical key: the lower endpoint of the edge plus its axis.
                    const int lx = x + std::min(mc::kCornerOffset[a][0], mc::kCornerOffset[b][0]);
                    const int ly = y + std::min(mc::kCornerOffset[a][1], mc::kCornerOffset[b][1]);
                    const int lz = z + std::min(mc::kCornerOffset[a][2], mc::kCornerOffset[b][2]);
                    int axis = 0;
                    if (mc::kCornerOffset[a][1] != mc::kCornerOffset[b][1]) axis = 1;
                    if (mc::kCornerOffset[a][2] != mc::kCornerOffset[b][2]) axis = 2;
                    keys[e] = edge_key(vol, lx, ly, lz, axis);
                    out.vertices.push_back({keys[e], verts[e]});
                }
                const int8_t* tri = mc::kTriTable[config];
                for (int i = 0; tri[i] != -1; i += 3) {
                    const Eigen::Vector3d& p0 = verts[tri[i]];
                    const Eigen::Vector3d& p1 = verts[tri[i + 1]];
                    const Eigen::Vector3d& p2 = verts[tri[i + 2]];
                    // Interpolation can collapse an edge when a corner sits on
                    // the isosurface; drop the degenerate triangle.
                    if ((p1 - p0).cross(p2 - p0).squaredNorm() < 1e-24) continue;
                    out.triangles.push_back({keys[tri[i]], keys[tri[i + 1]], keys[tri[i + 2]]});
                }
            }
        }
    }
}

TriangleMesh weld(const std::vector<CellOutput>& chunks) {
    TriangleMesh mesh;
    std::unordered_map<uint64_t, int32_t> index_of;
    for (const auto& chunk : chunks) {
        for (const auto& ev : chunk.vertices) {
            if (index_of.emplace(ev.key, int32_t(mesh.vertices.size())).second)
                mesh.vertices.push_back(ev.position);
        }
        for (const auto& tk : chunk.triangles) {
            const std::array<int32_t, 3> tri = {index_of.at(tk[0]), index_of.at(tk[1]),
                                                index_of.at(tk[2])};
            if (tri[0] == tri[1] || tri[1] == tri[2] || tri[0] == tri[2]) continue;
            mesh.triangles.push_back(tri);
        }
    }
    return mesh;
}

}  // namespace

TriangleMesh extract_mesh_serial(const TsdfVolume& volume) {
    if (volume.dims.minCoeff() < 2) return {};
    std::vector<CellOutput> chunks(1);
    polygonize_range(volume, 0, volume.dims.z() - 1, chunks[0]);
    return weld(chunks);
}

TriangleMesh extract_mesh(const TsdfVolume& volume) {
    if (volume.dims.minCoeff() < 2) return {};
    const int ncells_z = volume.dims.z() - 1;
    const int chunk_size = 8;
    const int nchunks = (ncells_z + chunk_size - 1) / chunk_size;
    std::vector<CellOutput> chunks(size_t(nchunks));
#pragma omp parallel for schedule(dynamic)
    for (int c = 0; c < nchunks; ++c) {
        const int z0 = c * chunk_size;
        const int z1 = std::min(z0 + chunk_size, ncells_z);
        polygonize_range(volume, z0, z1, chunks[size_t(c)]);
    }
    // Welding in chunk order reproduces the serial vertex numbering.
    return weld(chunks);
}

void fill_from_sdf(TsdfVolume& volume,
                   const std::function<double(const Eigen::Vector3d&)>& sdf) {
    for (int z = 0; z < volume.dims.z(); ++z)
        for (int y = 0; y < volume.dims.y(); ++y)
            for (int x = 0; x < volume.dims.x(); ++x) {
                const size_t i = volume.idx(x, y, z);
                volume.dist[i] =
                    float(std::clamp(sdf(volume.voxel_center(x, y, z)) / volume.trunc, -1.0, 1.0));
                volume.weight[i] = 1.f;
            }
}

}  // namespace sceneforge
