// Copyright (C) 2026 SceneForge contributors
// SPDX-License-Identifier: Apache-2.0
#include "sceneforge/curation.hpp"

#include "sceneforge/atomic_file.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

namespace sceneforge {

namespace {

double median(std::vector<double>& v) {
    std::sort(v.begin(), v.end());
    const size_t n = v.size();
    return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

}  // namespace

std::vector<int64_t> select_keyframes(const std::vector<FrameTrack>& frames,
                                      double image_diagonal_px, const KeyframeParams& params) {
    if (frames.empty()) throw std::invalid_argument("select_keyframes: no frames");
    if (!(params.parallax_threshold > 0.0))
        throw std::invalid_argument("select_keyframes: parallax threshold must be positive");

    const double pixel_threshold = params.parallax_threshold * image_diagonal_px;
    std::vector<int64_t> keyframes{frames[0].frame_id};
    std::unordered_map<int64_t, std::pair<double, double>> key_obs;
    auto load_key = [&](const FrameTrack& f) {
        key_obs.clear();
        for (const auto& o : f.observations) key_obs[o.track_id] = {o.u, o.v};
    };
    load_key(frames[0]);

    std::vector<double> displacements;
    for (size_t i = 1; i < frames.size(); ++i) {
        displacements.clear();
        for (const auto& o : frames[i].observations) {
            const auto it = key_obs.find(o.track_id);
            if (it == key_obs.end()) continue;
            displacements.push_back(
                std::hypot(o.u - it->second.first, o.v - it->second.second));
        }
        const bool forced = int(displacements.size()) < params.min_shared_tracks;
        if (forced || median(displacements) > pixel_threshold) {
            keyframes.push_back(frames[i].frame_id);
            load_key(frames[i]);
        }
    }
    return keyframes;
}

std::vector<std::pair<int, int>> propose_sequence_pairs(int n_frames, int window) {
    if (n_frames < 2) throw std::invalid_argument("propose_sequence_pairs: need >= 2 frames");
    if (window < 1) throw std::invalid_argument("propose_sequence_pairs: window must be >= 1");
    std::vector<std::pair<int, int>> pairs;
    for (int i = 0; i < n_frames; ++i)
        for (int j = i + 1; j < n_frames && j - i <= window; ++j) pairs.emplace_back(i, j);
    return pairs;
}

std::vector<LoopPair> propose_loop_pairs(const std::vector<FrameDescriptor>& descriptors,
                                         int window, int top_k, double score_threshold,
                                         LoopScore mode) {
    std::vector<LoopPair> candidates;
    const int n = int(descriptors.size());
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            if (std::llabs(descriptors[size_t(j)].frame_id - descriptors[size_t(i)].frame_id) >
                window)
                continue;
            const auto& a = descriptors[size_t(i)].vector;
            const auto& b = descriptors[size_t(j)].vector;
            if (a.size() != b.size())
                throw std::invalid_argument("propose_loop_pairs: descriptor sizes differ");
            double dot = 0;
            for (size_t d = 0; d < a.size(); ++d) dot += a[d] * b[d];
            const double score = mode == LoopScore::kSimilarity ? dot : 1.0 - dot;
            if (score > score_threshold)
                candidates.push_back(
                    {descriptors[size_t(i)].frame_id, descriptors[size_t(j)].frame_id, score});
        }
    }
    std::sort(candidates.begin(), candidates.end(), [](const LoopPair& x, const LoopPair& y) {
        if (x.score != y.score) return x.score > y.score;
        if (x.frame_a != y.frame_a) return x.frame_a < y.frame_a;
        return x.frame_b < y.frame_b;
    });
    if (int(candidates.size()) > top_k) candidates.resize(size_t(top_k));
    return candidates;
}

std::vector<std::pair<int, int>> split_clips(int n_keyframes, int max_len, int overlap) {
    if (max_len < 1 || overlap < 0 || overlap >= max_len)
        throw std::invalid_argument("split_clips: need 0 <= overlap < max_len");
    std::vector<std::pair<int, int>> clips;
    if (n_keyframes <= 0) return clips;
    int start = 0;
    for (;;) {
        const int end = std::min(start + max_len, n_keyframes);
        clips.emplace_back(start, end);
        if (end >= n_keyframes) break;
        start = end - overlap;
    }
    return clips;
}

std::vector<FrameTrack> read_frame_tracks_jsonl(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open frame tracks: " + path);
    std::vector<FrameTrack> frames;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        const nlohmann::json j = nlohmann::json::parse(line);
        FrameTrack f;
        f.frame_id = j.at("frame_id").get<int64_t>();
        for (const auto& o : j.at("observations"))
            f.observations.push_back({o.at(0).get<int64_t>(), o.at(1).get<double>(),
                                      o.at(2).get<double>()});
        frames.push_back(std::move(f));
    }
    return frames;
}

void write_frame_tracks_jsonl(const std::string& path, const std::vector<FrameTrack>& frames) {
    std::ostringstream out;
    for (const auto& f : frames) {
        nlohmann::json obs = nlohmann::json::array();
        for (const auto& o : f.observations) obs.push_back({o.track_id, o.u, o.v});
        out << nlohmann::json{{"frame_id", f.frame_id}, {"observations", obs}}.dump() << "\n";
    }
    write_file_atomic(path, out.str());
}

}  // namespace sceneforge
