// Copyright (C) 2026 SceneForge contributors
// SPDX-License-Identifier: Apache-2.0
//
// Batch front-end: synth | reconstruct | segment | scenegraph | gen-vqa |
// gen-vln | eval-vqa | eval-vln | eval-det, all driven by one JSON config.

#include "sceneforge/json_convert.hpp"
#include "sceneforge/pipeline.hpp"

#include <CLI11.hpp>
#include <json.hpp>
#include <omp.h>

#include <filesystem>
#include <iostream>
#include <string>

namespace fs = std::filesystem;
using namespace sceneforge;

namespace {

struct CommonArgs {
    std::string config_path;
    std::string input_dir;
    std::string output_dir;
    int64_t seed = -1;
    int jobs = 0;
};

void add_common(CLI::App* cmd, CommonArgs& args) {
    cmd->add_option("--config", args.config_path, "JSON config file");
    cmd->add_option("--input", args.input_dir, "input directory (overrides config)");
    cmd->add_option("--output", args.output_dir, "output directory (overrides config)");
    cmd->add_option("--seed", args.seed, "seed (overrides config)");
    cmd->add_option("--jobs", args.jobs, "parallel scenes (overrides config)");
}

PipelineConfig resolve(const CommonArgs& args) {
    PipelineConfig cfg = args.config_path.empty() ? PipelineConfig()
                                                  : PipelineConfig::from_file(args.config_path);
    if (!args.input_dir.empty()) cfg.input_dir = args.input_dir;
    if (!args.output_dir.empty()) cfg.output_dir = args.output_dir;
    if (args.seed >= 0) cfg.seed = uint64_t(args.seed);
    if (args.jobs > 0) cfg.jobs = args.jobs;
    return cfg;
}

std::string scene_out_dir(const PipelineConfig& cfg, const std::string& scene_in) {
    return (fs::path(cfg.output_dir) / fs::path(scene_in).filename()).string();
}

template <typename Fn>
void for_each_scene(const PipelineConfig& cfg, Fn&& fn) {
    const std::vector<std::string> scenes = discover_scenes(cfg.input_dir);
    std::exception_ptr error;
#pragma omp parallel for num_threads(std::max(1, cfg.jobs)) schedule(dynamic)
    for (int i = 0; i < int(scenes.size()); ++i) {
        try {
            fn(scenes[size_t(i)]);
        } catch (...) {
#pragma omp critical
            if (!error) error = std::current_exception();
        }
    }
    if (error) std::rethrow_exception(error);
}

void emit_report(const PipelineConfig& cfg, const nlohmann::json& report,
                 const std::string& name) {
    std::cout << report_table(report);
    if (!cfg.output_dir.empty()) {
        fs::create_directories(cfg.output_dir);
        save_json((fs::path(cfg.output_dir) / name).string(), report);
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"sceneforge: posed-video to 3D scene-understanding training data"};
    app.require_subcommand(1);

    CommonArgs args;
    std::string predictions_path, gt_path, results_path, items_path;

    CLI::App* synth = app.add_subcommand("synth", "generate a synthetic box-world dataset");
    add_common(synth, args);
    CLI::App* reconstruct =
        app.add_subcommand("reconstruct", "fuse depth maps into a filtered mesh");
    add_common(reconstruct, args);
    CLI::App* segment = app.add_subcommand("segment", "lift 2D masks into 3D instances");
    add_common(segment, args);
    CLI::App* scenegraph = app.add_subcommand("scenegraph", "build the 3D scene graph");
    add_common(scenegraph, args);
    CLI::App* gen_vqa = app.add_subcommand("gen-vqa", "generate spatial VQA items");
    add_common(gen_vqa, args);
    CLI::App* gen_vln = app.add_subcommand("gen-vln", "generate navigation episodes");
    add_common(gen_vln, args);

    CLI::App* eval_vqa = app.add_subcommand("eval-vqa", "score VQA predictions");
    add_common(eval_vqa, args);
    eval_vqa->add_option("--items", items_path, "generated vqa.jsonl")->required();
    eval_vqa->add_option("--predictions", predictions_path, "predictions JSONL {id, prediction}")
        ->required();

    CLI::App* eval_vln = app.add_subcommand("eval-vln", "navigation metrics over results");
    add_common(eval_vln, args);
    eval_vln->add_option("--results", results_path, "episode results JSONL")->required();

    CLI::App* eval_det = app.add_subcommand("eval-det", "detection F1/AP over AABBs");
    add_common(eval_det, args);
    eval_det->add_option("--predictions", predictions_path, "predicted detections JSON")
        ->required();
    eval_det->add_option("--gt", gt_path, "ground-truth detections JSON")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        const PipelineConfig cfg = resolve(args);
        if (synth->parsed()) {
            if (cfg.output_dir.empty()) throw std::runtime_error("synth needs --output");
            run_synth(cfg, cfg.output_dir);
        } else if (reconstruct->parsed()) {
            for_each_scene(cfg, [&](const std::string& scene) {
                run_reconstruct(cfg, scene, scene_out_dir(cfg, scene));
            });
        } else if (segment->parsed()) {
            for_each_scene(cfg, [&](const std::string& scene) {
                run_segment(cfg, scene, scene_out_dir(cfg, scene));
            });
        } else if (scenegraph->parsed()) {
            for_each_scene(cfg, [&](const std::string& scene) {
                run_scenegraph(cfg, scene_out_dir(cfg, scene));
            });
        } else if (gen_vqa->parsed()) {
            for_each_scene(cfg, [&](const std::string& scene) {
                run_gen_vqa(cfg, scene_out_dir(cfg, scene));
            });
        } else if (gen_vln->parsed()) {
            for_each_scene(cfg, [&](const std::string& scene) {
                run_gen_vln(cfg, scene, scene_out_dir(cfg, scene));
            });
        } else if (eval_vqa->parsed()) {
            emit_report(cfg, run_eval_vqa(items_path, predictions_path), "vqa_report.json");
        } else if (eval_vln->parsed()) {
            emit_report(cfg, run_eval_vln(cfg, results_path), "vln_report.json");
        } else if (eval_det->parsed()) {
            emit_report(cfg, run_eval_det(cfg, predictions_path, gt_path), "det_report.json");
        }
    } catch (const std::exception& e) {
        std::cerr << nlohmann::json{{"error", e.what()}}.dump() << "\n";
        return 1;
    }
    return 0;
}
