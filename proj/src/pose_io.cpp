// Copyright (C) 2026 SceneForge contributors
// SPDX-License-Identifier: Apache-2.0
#include "sceneforge/pose_io.hpp"

#include "sceneforge/atomic_file.hpp"

#include <json.hpp>

#include <fstream>
#include <sstream>
#include <stdexcept>

namespace sceneforge {

std::vector<Pose> read_pose_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open pose file: " + path);
    std::vector<Pose> poses;
    std::string line;
    size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const size_t first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos || line[first] == '#') continue;
        std::istringstream ss(line);
        Pose p;
        double tx, ty, tz, qx, qy, qz, qw;
        if (!(ss >> p.frame_id >> tx >> ty >> tz >> qx >> qy >> qz >> qw))
            throw std::runtime_error("malformed pose line " + std::to_string(lineno) +
                                     " in " + path);
        Eigen::Quaterniond q(qw, qx, qy, qz);
        if (q.norm() < 1e-9)
            throw std::runtime_error("zero quaternion at line " + std::to_string(lineno) +
                                     " in " + path);
        q.normalize();
        p.rotation = q.toRotationMatrix();
        p.translation = Eigen::Vector3d(tx, ty, tz);
        poses.push_back(p);
    }
    return poses;
}

void write_pose_file(const std::string& path, const std::vector<Pose>& poses) {
    std::ostringstream out;
    out << "# frame_id tx ty tz qx qy qz qw (camera-to-world, scalar-last)\n";
    out.precision(17);
    for (const Pose& p : poses) {
        Eigen::Quaterniond q(p.rotation);
        if (q.w() < 0) q.coeffs() *= -1.0;  // canonical sign
        out << p.frame_id << ' ' << p.translation.x() << ' ' << p.translation.y() << ' '
            << p.translation.z() << ' ' << q.x() << ' ' << q.y() << ' ' << q.z() << ' '
            << q.w() << '\n';
    }
    write_file_atomic(path, out.str());
}

Intrinsics read_intrinsics(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open intrinsics file: " + path);
    nlohmann::json j;
    in >> j;
    Intrinsics k;
    k.fx = j.at("fx").get<double>();
    k.fy = j.at("fy").get<double>();
    k.cx = j.at("cx").get<double>();
    k.cy = j.at("cy").get<double>();
    k.width = j.at("width").get<int>();
    k.height = j.at("height").get<int>();
    if (!k.valid()) throw std::runtime_error("invalid intrinsics in " + path);
    return k;
}

void write_intrinsics(const std::string& path, const Intrinsics& k) {
    nlohmann::json j{{"fx", k.fx},       {"fy", k.fy},         {"cx", k.cx},
                     {"cy", k.cy},       {"width", k.width},   {"height", k.height}};
    write_file_atomic(path, j.dump(2) + "\n");
}

}  // namespace sceneforge
