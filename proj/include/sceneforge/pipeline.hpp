// Copyright (C) 2026 SceneForge contributors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "sceneforge/instance_lift.hpp"
#include "sceneforge/scene_graph.hpp"
#include "sceneforge/synth_world.hpp"
#include "sceneforge/vln_encode.hpp"
#include "sceneforge/vqa_gen.hpp"

#include <json.hpp>

#include <string>
#include <vector>

namespace sceneforge {

/// Every stage parameter with its documented default; a bare config file
/// reproduces the reference pipeline. Unknown keys are rejected.
struct PipelineConfig {
    std::string input_dir;
    std::string output_dir;
    uint64_t seed = 0;
    int jobs = 1;

    struct Reconstruct {
        double voxel_size = 0.02;
        double trunc_multiplier = 4.0;
        double max_weight = 64.0;
        double max_depth = 10.0;
        double filter_radius = 0.06;
        int filter_min_neighbors = 5;
        int statistical_k = 20;
        double statistical_std_ratio = 2.0;
    } reconstruct;

    LiftParams segment;

    RelationParams scenegraph;

    struct Vqa {
        int max_per_task = 20;
        double min_margin_m = 0.15;
        double direction_deadzone_deg = 10.0;
    } vqa;

    VlnParams vln;

    struct Synth {
        int scenes = 1;
        int min_objects = 3;
        int max_objects = 8;
        std::vector<double> room = {6, 5, 3};
        int trajectory_steps = 40;
        int render_width = 160;
        int render_height = 120;
        double fov_deg = 70.0;
    } synth;

    struct Eval {
        double success_radius = 3.0;
        std::vector<double> iou_thresholds = {0.25, 0.5};
    } eval;

    static PipelineConfig from_file(const std::string& path);
    static PipelineConfig from_json(const nlohmann::json& j);
    nlohmann::json to_json() const;

    GenConfig gen_config() const {
        return {seed, vqa.max_per_task, vqa.min_margin_m, vqa.direction_deadzone_deg};
    }
    SynthConfig synth_config() const;
};

/// Scene directories under `root` (directories containing poses.txt), or
/// root itself when it is a single scene. Lexicographic order.
std::vector<std::string> discover_scenes(const std::string& root);

// Per-scene stages. scene_in is the dataset directory (poses, intrinsics,
// depth/, masks/); scene_out receives the stage outputs. Every function is
// deterministic in (inputs, config).
void run_synth(const PipelineConfig& cfg, const std::string& out_dir);
void run_reconstruct(const PipelineConfig& cfg, const std::string& scene_in,
                     const std::string& scene_out);
void run_segment(const PipelineConfig& cfg, const std::string& scene_in,
                 const std::string& scene_out);
void run_scenegraph(const PipelineConfig& cfg, const std::string& scene_out);
void run_gen_vln(const PipelineConfig& cfg, const std::string& scene_in,
                 const std::string& scene_out);
void run_gen_vqa(const PipelineConfig& cfg, const std::string& scene_out);

nlohmann::json run_eval_vqa(const std::string& items_path, const std::string& predictions_path);
nlohmann::json run_eval_vln(const PipelineConfig& cfg, const std::string& results_path);
nlohmann::json run_eval_det(const PipelineConfig& cfg, const std::string& pred_path,
                            const std::string& gt_path);

/// Plain-text table of a metric report (one "name value" row per metric).
std::string report_table(const nlohmann::json& report);

// Shared loaders for stage outputs.
std::vector<Instance3D> load_instances(const std::string& scene_out);
std::vector<NavEpisode> load_episodes(const std::string& path);

}  // namespace sceneforge
