// Copyright (C) 2026 SceneForge contributors
// SPDX-License-Identifier: Apache-2.0
#include "sceneforge/point_filters.hpp"

#include "sceneforge/depth_fusion.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <unordered_map>

namespace sceneforge {

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

using Grid = std::unordered_map<std::array<int64_t, 3>, std::vector<int>, CellHash>;

std::array<int64_t, 3> cell_of(const Eigen::Vector3d& p, double h) {
    return {int64_t(std::floor(p.x() / h)), int64_t(std::floor(p.y() / h)),
            int64_t(std::floor(p.z() / h))};
}

Grid build_grid(const std::vector<Eigen::Vector3d>& points, double h) {
    Grid grid;
    grid.reserve(points.size());
    for (int i = 0; i < int(points.size()); ++i) grid[cell_of(points[i], h)].push_back(i);
    return grid;
}

std::vector<int> mask_to_indices(const std::vector<uint8_t>& keep) {
    std::vector<int> out;
    for (int i = 0; i < int(keep.size()); ++i)
        if (keep[i]) out.push_back(i);
    return out;
}

// Mean distance from points[i] to its k nearest other points, searching the
// grid in expanding Chebyshev rings.
double knn_mean_distance(const std::vector<Eigen::Vector3d>& points, const Grid& grid, double h,
                         int64_t max_ring, int i, int k, std::vector<double>& scratch) {
    scratch.clear();
    const Eigen::Vector3d& p = points[size_t(i)];
    const auto c = cell_of(p, h);
    double kth = std::numeric_limits<double>::infinity();
    for (int64_t r = 0; r <= max_ring; ++r) {
        // Cells at ring r can only hold points at distance >= (r-1)*h.
        if (int(scratch.size()) >= k && kth <= double(r - 1) * h) break;
        for (int64_t dz = -r; dz <= r; ++dz)
            for (int64_t dy = -r; dy <= r; ++dy)
                for (int64_t dx = -r; dx <= r; ++dx) {
                    if (std::max({std::abs(dx), std::abs(dy), std::abs(dz)}) != r) continue;
                    const auto it = grid.find({c[0] + dx, c[1] + dy, c[2] + dz});
                    if (it == grid.end()) continue;
                    for (int j : it->second) {
                        if (j == i) continue;
                        const double d = (points[size_t(j)] - p).norm();
                        if (int(scratch.size()) < k) {
                            scratch.push_back(d);
                            std::push_heap(scratch.begin(), scratch.end());
                            if (int(scratch.size()) == k) kth = scratch.front();
                        } else if (d < scratch.front()) {
                            std::pop_heap(scratch.begin(), scratch.end());
                            scratch.back() = d;
                            std::push_heap(scratch.begin(), scratch.end());
                            kth = scratch.front();
                        }
                    }
                }
    }
    double sum = 0;
    for (double d : scratch) sum += d;
    return sum / double(scratch.size());
}

std::vector<int> statistical_keep(const std::vector<double>& mean_dist, double std_ratio) {
    const size_t n = mean_dist.size();
    double mu = 0;
    for (double d : mean_dist) mu += d;
    mu /= double(n);
    double var = 0;
    for (double d : mean_dist) var += (d - mu) * (d - mu);
    const double sigma = std::sqrt(var / double(n));
    const double limit = mu + std_ratio * sigma;
    std::vector<int> out;
    for (int i = 0; i < int(n); ++i)
        if (mean_dist[size_t(i)] <= limit) out.push_back(i);
    return out;
}

void check_statistical_args(size_t n, int k) {
    if (k < 1) throw std::invalid_argument("statistical_filter: k must be >= 1");
    if (n <= size_t(k))
        throw std::invalid_argument("statistical_filter: need more than k points");
}

}  // namespace

std::vector<int> radius_filter(const std::vector<Eigen::Vector3d>& points, double radius,
                               int min_neighbors) {
    if (!(radius > 0.0)) throw std::invalid_argument("radius_filter: radius must be positive");
    const int n = int(points.size());
    std::vector<uint8_t> keep(size_t(n), 0);
    if (min_neighbors <= 0) return mask_to_indices(std::vector<uint8_t>(size_t(n), 1));

    const Grid grid = build_grid(points, radius);
    const double r2 = radius * radius;
#pragma omp parallel for schedule(dynamic, 256)
    for (int i = 0; i < n; ++i) {
        const auto c = cell_of(points[size_t(i)], radius);
        int count = 0;
        for (int64_t dz = -1; dz <= 1 && count < min_neighbors; ++dz)
            for (int64_t dy = -1; dy <= 1 && count < min_neighbors; ++dy)
                for (int64_t dx = -1; dx <= 1 && count < min_neighbors; ++dx) {
                    const auto it = grid.find({c[0] + dx, c[1] + dy, c[2] + dz});
                    if (it == grid.end()) continue;
                    for (int j : it->second) {
                        if (j == i) continue;
                        if ((points[size_t(j)] - points[size_t(i)]).squaredNorm() <= r2) {
                            if (++count >= min_neighbors) break;
                        }
                    }
                }
        keep[size_t(i)] = count >= min_neighbors;
    }
    return mask_to_indices(keep);
}

std::vector<int> radius_filter_serial(const std::vector<Eigen::Vector3d>& points, double radius,
                                      int min_neighbors) {
    if (!(radius > 0.0)) throw std::invalid_argument("radius_filter: radius must be positive");
    const int n = int(points.size());
    const double r2 = radius * radius;
    std::vector<int> out;
    for (int i = 0; i < n; ++i) {
        int count = 0;
        for (int j = 0; j < n && count < min_neighbors; ++j) {
            if (j == i) continue;
            if ((points[size_t(j)] - points[size_t(i)]).squaredNorm() <= r2) ++count;
        }
        if (count >= min_neighbors) out.push_back(i);
    }
    return out;
}

std::vector<int> statistical_filter(const std::vector<Eigen::Vector3d>& points, int k,
                                    double std_ratio) {
    check_statistical_args(points.size(), k);
    const int n = int(points.size());

    Aabb box = Aabb::of_points(points);
    const double diag = box.extents().norm();
    if (diag <= 0.0) return mask_to_indices(std::vector<uint8_t>(size_t(n), 1));

    const double h = std::max(1.5 * diag / std::cbrt(double(n)), 1e-9);
    const Grid grid = build_grid(points, h);
    const int64_t max_ring = int64_t(std::ceil(diag / h)) + 1;

    std::vector<double> mean_dist(size_t(n), 0.0);
#pragma omp parallel
    {
        std::vector<double> scratch;
        scratch.reserve(size_t(k) + 1);
#pragma omp for schedule(dynamic, 64)
        for (int i = 0; i < n; ++i)
            mean_dist[size_t(i)] = knn_mean_distance(points, grid, h, max_ring, i, k, scratch);
    }
    return statistical_keep(mean_dist, std_ratio);
}

std::vector<int> statistical_filter_serial(const std::vector<Eigen::Vector3d>& points, int k,
                                           double std_ratio) {
    check_statistical_args(points.size(), k);
    const int n = int(points.size());
    std::vector<double> mean_dist(size_t(n), 0.0);
    std::vector<double> dists(size_t(n));
    for (int i = 0; i < n; ++i) {
        dists.clear();
        for (int j = 0; j < n; ++j)
            if (j != i) dists.push_back((points[size_t(j)] - points[size_t(i)]).norm());
        std::partial_sort(dists.begin(), dists.begin() + k, dists.end());
        double sum = 0;
        for (int m = 0; m < k; ++m) sum += dists[size_t(m)];
        mean_dist[size_t(i)] = sum / double(k);
    }
    return statistical_keep(mean_dist, std_ratio);
}

TriangleMesh filter_mesh(const TriangleMesh& mesh, double radius, int min_neighbors, int k,
                         double std_ratio) {
    const int n = int(mesh.vertices.size());
    if (n == 0) return mesh;

    std::vector<int> kept = radius_filter(mesh.vertices, radius, min_neighbors);
    if (int(kept.size()) > k) {
        std::vector<Eigen::Vector3d> survivors;
        survivors.reserve(kept.size());
        for (int i : kept) survivors.push_back(mesh.vertices[size_t(i)]);
        std::vector<int> kept2 = statistical_filter(survivors, k, std_ratio);
        std::vector<int> composed;
        composed.reserve(kept2.size());
        for (int i : kept2) composed.push_back(kept[size_t(i)]);
        kept = std::move(composed);
    }

    std::vector<int32_t> remap(size_t(n), -1);
    TriangleMesh out;
    out.vertices.reserve(kept.size());
    for (int i : kept) {
        remap[size_t(i)] = int32_t(out.vertices.size());
        out.vertices.push_back(mesh.vertices[size_t(i)]);
    }
    for (const auto& t : mesh.triangles) {
        const std::array<int32_t, 3> m = {remap[size_t(t[0])], remap[size_t(t[1])],
                                          remap[size_t(t[2])]};
        if (m[0] >= 0 && m[1] >= 0 && m[2] >= 0) out.triangles.push_back(m);
    }
    return out;
}

}  // namespace sceneforge
