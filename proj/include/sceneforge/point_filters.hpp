// Copyright (C) 2026 SceneForge contributors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "sceneforge/geometry.hpp"

#include <vector>

namespace sceneforge {

struct TriangleMesh;

/// Keep point i iff at least min_neighbors other points lie within radius.
/// Returns kept indices in ascending order. Grid-accelerated, OpenMP over
/// points.
std::vector<int> radius_filter(const std::vector<Eigen::Vector3d>& points, double radius,
                               int min_neighbors);
/// Brute-force O(n^2) reference; identical result.
std::vector<int> radius_filter_serial(const std::vector<Eigen::Vector3d>& points, double radius,
                                      int min_neighbors);

/// Keep points whose mean distance to their k nearest neighbors is at most
/// mu + std_ratio * sigma, where mu/sigma are taken over all points.
/// Throws std::invalid_argument unless points.size() > k >= 1.
std::vector<int> statistical_filter(const std::vector<Eigen::Vector3d>& points, int k,
                                    double std_ratio);
std::vector<int> statistical_filter_serial(const std::vector<Eigen::Vector3d>& points, int k,
                                           double std_ratio);

/// Run both filters on mesh vertices and drop triangles that reference a
/// removed vertex (floating-noise cleanup after extraction).
TriangleMesh filter_mesh(const TriangleMesh& mesh, double radius, int min_neighbors, int k,
                         double std_ratio);

}  // namespace sceneforge
