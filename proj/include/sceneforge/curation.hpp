// Copyright (C) 2026 SceneForge contributors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace sceneforge {

/// Tracked feature observations of one frame.
struct FrameTrack {
    int64_t frame_id = 0;
    struct Obs {
        int64_t track_id;
        double u, v;
    };
    std::vector<Obs> observations;  // track_ids unique per frame
};

/// Unit-normalized global image descriptor.
struct FrameDescriptor {
    int64_t frame_id = 0;
    std::vector<double> vector;
};

struct KeyframeParams {
    double parallax_threshold = 0.02;  // fraction of the image diagonal
    int min_shared_tracks = 30;        // below this a keyframe is forced
};

/// Parallax-based keyframe selection: the first frame is always a keyframe;
/// a later frame becomes one when the median pixel displacement of tracks
/// shared with the previous keyframe exceeds parallax_threshold * diagonal,
/// or when too few shared tracks remain to stay well constrained.
/// Throws std::invalid_argument on empty input.
std::vector<int64_t> select_keyframes(const std::vector<FrameTrack>& frames,
                                      double image_diagonal_px,
                                      const KeyframeParams& params = {});

/// All unordered frame pairs (i, j) with 0 < j - i <= window, lexicographic.
std::vector<std::pair<int, int>> propose_sequence_pairs(int n_frames, int window = 20);

enum class LoopScore {
    kSimilarity,  // cosine similarity, the default reading of the pairing rule
    kDistance,    // literal 1 - cosine reading, kept selectable
};

struct LoopPair {
    int64_t frame_a, frame_b;
    double score;
};

/// Loop-closure pair proposal: score all pairs within +/-window frames and
/// keep the global top_k with score above score_threshold, descending, ties
/// by (a, b) ascending.
std::vector<LoopPair> propose_loop_pairs(const std::vector<FrameDescriptor>& descriptors,
                                         int window = 100, int top_k = 50,
                                         double score_threshold = 0.4,
                                         LoopScore mode = LoopScore::kSimilarity);

/// Half-open clip ranges covering [0, n_keyframes) with length <= max_len and
/// exactly `overlap` shared frames between consecutive clips.
/// Throws std::invalid_argument unless 0 <= overlap < max_len.
std::vector<std::pair<int, int>> split_clips(int n_keyframes, int max_len = 300,
                                             int overlap = 50);

// FrameTrack JSONL: one frame per line,
// {"frame_id": N, "observations": [[track_id, u, v], ...]}
std::vector<FrameTrack> read_frame_tracks_jsonl(const std::string& path);
void write_frame_tracks_jsonl(const std::string& path, const std::vector<FrameTrack>& frames);

}  // namespace sceneforge
