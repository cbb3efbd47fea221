// Copyright (C) 2026 SceneForge contributors
// SPDX-License-Identifier: Apache-2.0
#include "sceneforge/ply_io.hpp"

#include "sceneforge/depth_fusion.hpp"

#include <cstring>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace sceneforge {

namespace {

void write_ply(const std::string& path, const std::vector<Eigen::Vector3d>& vertices,
               const std::vector<std::array<int32_t, 3>>* faces) {
    namespace fs = std::filesystem;
    const fs::path target(path);
    if (target.has_parent_path()) fs::create_directories(target.parent_path());
    const std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("cannot open for write: " + tmp);
        out << "ply\nformat binary_little_endian 1.0\n";
        out << "element vertex " << vertices.size() << "\n";
        out << "property float x\nproperty float y\nproperty float z\n";
        if (faces) {
            out << "element face " << faces->size() << "\n";
            out << "property list uchar int vertex_indices\n";
        }
        out << "end_header\n";
        for (const auto& v : vertices) {
            const float xyz[3] = {float(v.x()), float(v.y()), float(v.z())};
            out.write(reinterpret_cast<const char*>(xyz), sizeof(xyz));
        }
        if (faces) {
            for (const auto& f : *faces) {
                const uint8_t count = 3;
                out.write(reinterpret_cast<const char*>(&count), 1);
                out.write(reinterpret_cast<const char*>(f.data()), sizeof(int32_t) * 3);
            }
        }
        if (!out) throw std::runtime_error("short write: " + tmp);
    }
    fs::rename(tmp, target);
}

struct PlyData {
    std::vector<Eigen::Vector3d> vertices;
    std::vector<std::array<int32_t, 3>> faces;
};

PlyData read_ply(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open PLY: " + path);

    std::string line;
    size_t n_vertex = 0, n_face = 0;
    bool header_done = false, binary_le = false;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        std::istringstream ss(line);
        std::string tok;
        ss >> tok;
        if (tok == "format") {
            std::string fmt;
            ss >> fmt;
            binary_le = (fmt == "binary_little_endian");
        } else if (tok == "element") {
            std::string name;
            size_t count;
            ss >> name >> count;
            if (name == "vertex") n_vertex = count;
            if (name == "face") n_face = count;
        } else if (tok == "end_header") {
            header_done = true;
            break;
        }
    }
    if (!header_done || !binary_le)
        throw std::runtime_error("unsupported PLY header in " + path);

    PlyData data;
    data.vertices.resize(n_vertex);
    for (size_t i = 0; i < n_vertex; ++i) {
        float xyz[3];
        in.read(reinterpret_cast<char*>(xyz), sizeof(xyz));
        data.vertices[i] = Eigen::Vector3d(xyz[0], xyz[1], xyz[2]);
    }
    data.faces.resize(n_face);
    for (size_t i = 0; i < n_face; ++i) {
        uint8_t count = 0;
        in.read(reinterpret_cast<char*>(&count), 1);
        if (count != 3) throw std::runtime_error("non-triangle face in " + path);
        in.read(reinterpret_cast<char*>(data.faces[i].data()), sizeof(int32_t) * 3);
    }
    if (!in) throw std::runtime_error("truncated PLY: " + path);
    return data;
}

}  // namespace

void write_mesh_ply(const std::string& path, const TriangleMesh& mesh) {
    write_ply(path, mesh.vertices, &mesh.triangles);
}

TriangleMesh read_mesh_ply(const std::string& path) {
    PlyData data = read_ply(path);
    TriangleMesh mesh;
    mesh.vertices = std::move(data.vertices);
    mesh.triangles = std::move(data.faces);
    return mesh;
}

void write_points_ply(const std::string& path, const std::vector<Eigen::Vector3d>& points) {
    write_ply(path, points, nullptr);
}

std::vector<Eigen::Vector3d> read_points_ply(const std::string& path) {
    return read_ply(path).vertices;
}

}  // namespace sceneforge
