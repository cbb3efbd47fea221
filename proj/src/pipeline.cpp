// Copyright (C) 2026 SceneForge contributors
// SPDX-License-Identifier: Apache-2.0
#include "sceneforge/pipeline.hpp"

#include "sceneforge/atomic_file.hpp"
#include "sceneforge/depth_fusion.hpp"
#include "sceneforge/image_io.hpp"
#include "sceneforge/json_convert.hpp"
#include "sceneforge/nav_metrics.hpp"
#include "sceneforge/ply_io.hpp"
#include "sceneforge/point_filters.hpp"
#include "sceneforge/pose_io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

namespace fs = std::filesystem;

namespace sceneforge {

namespace {

void check_keys(const nlohmann::json& j, const std::set<std::string>& allowed,
                const std::string& context) {
    if (!j.is_object()) throw std::runtime_error("config: " + context + " must be an object");
    for (const auto& [key, value] : j.items())
        if (!allowed.count(key))
            throw std::runtime_error("config: unknown key '" + key + "' in " + context);
}

template <typename T>
void maybe(const nlohmann::json& j, const char* key, T& out) {
    if (j.contains(key)) out = j.at(key).get<T>();
}

}  // namespace

PipelineConfig PipelineConfig::from_file(const std::string& path) {
    return from_json(load_json(path));
}

PipelineConfig PipelineConfig::from_json(const nlohmann::json& j) {
    PipelineConfig cfg;
    check_keys(j, {"input_dir", "output_dir", "seed", "jobs", "reconstruct", "segment",
                   "scenegraph", "vqa", "vln", "synth", "eval"},
               "top level");
    maybe(j, "input_dir", cfg.input_dir);
    maybe(j, "output_dir", cfg.output_dir);
    maybe(j, "seed", cfg.seed);
    maybe(j, "jobs", cfg.jobs);

    if (j.contains("reconstruct")) {
        const auto& r = j.at("reconstruct");
        check_keys(r, {"voxel_size", "trunc_multiplier", "max_weight", "max_depth",
                       "filter_radius", "filter_min_neighbors", "statistical_k",
                       "statistical_std_ratio"},
                   "reconstruct");
        maybe(r, "voxel_size", cfg.reconstruct.voxel_size);
        maybe(r, "trunc_multiplier", cfg.reconstruct.trunc_multiplier);
        maybe(r, "max_weight", cfg.reconstruct.max_weight);
        maybe(r, "max_depth", cfg.reconstruct.max_depth);
        maybe(r, "filter_radius", cfg.reconstruct.filter_radius);
        maybe(r, "filter_min_neighbors", cfg.reconstruct.filter_min_neighbors);
        maybe(r, "statistical_k", cfg.reconstruct.statistical_k);
        maybe(r, "statistical_std_ratio", cfg.reconstruct.statistical_std_ratio);
    }
    if (j.contains("segment")) {
        const auto& s = j.at("segment");
        check_keys(s, {"min_pixels", "neighbor_window", "merge_threshold", "iou_threshold",
                       "min_instance_points", "voxel_size", "agreement_voxel"},
                   "segment");
        maybe(s, "min_pixels", cfg.segment.min_pixels);
        maybe(s, "neighbor_window", cfg.segment.neighbor_window);
        maybe(s, "merge_threshold", cfg.segment.merge_threshold);
        maybe(s, "iou_threshold", cfg.segment.iou_threshold);
        maybe(s, "min_instance_points", cfg.segment.min_instance_points);
        maybe(s, "voxel_size", cfg.segment.voxel_size);
        maybe(s, "agreement_voxel", cfg.segment.agreement_voxel);
    }
    if (j.contains("scenegraph")) {
        const auto& s = j.at("scenegraph");
        check_keys(s, {"contact_eps", "near_threshold"}, "scenegraph");
        maybe(s, "contact_eps", cfg.scenegraph.contact_eps);
        maybe(s, "near_threshold", cfg.scenegraph.near_threshold);
    }
    if (j.contains("vqa")) {
        const auto& v = j.at("vqa");
        check_keys(v, {"max_per_task", "min_margin_m", "direction_deadzone_deg"}, "vqa");
        maybe(v, "max_per_task", cfg.vqa.max_per_task);
        maybe(v, "min_margin_m", cfg.vqa.min_margin_m);
        maybe(v, "direction_deadzone_deg", cfg.vqa.direction_deadzone_deg);
    }
    if (j.contains("vln")) {
        const auto& v = j.at("vln");
        check_keys(v, {"cluster_radius", "min_split_steps", "max_rotation_deg",
                       "max_translation_m", "lookaround_deviation_deg", "landmark_radius"},
                   "vln");
        maybe(v, "cluster_radius", cfg.vln.cluster_radius);
        maybe(v, "min_split_steps", cfg.vln.min_split_steps);
        maybe(v, "max_rotation_deg", cfg.vln.max_rotation_deg);
        maybe(v, "max_translation_m", cfg.vln.max_translation_m);
        maybe(v, "lookaround_deviation_deg", cfg.vln.lookaround_deviation_deg);
        maybe(v, "landmark_radius", cfg.vln.landmark_radius);
    }
    if (j.contains("synth")) {
        const auto& s = j.at("synth");
        check_keys(s, {"scenes", "min_objects", "max_objects", "room", "trajectory_steps",
                       "render_width", "render_height", "fov_deg"},
                   "synth");
        maybe(s, "scenes", cfg.synth.scenes);
        maybe(s, "min_objects", cfg.synth.min_objects);
        maybe(s, "max_objects", cfg.synth.max_objects);
        maybe(s, "room", cfg.synth.room);
        maybe(s, "trajectory_steps", cfg.synth.trajectory_steps);
        maybe(s, "render_width", cfg.synth.render_width);
        maybe(s, "render_height", cfg.synth.render_height);
        maybe(s, "fov_deg", cfg.synth.fov_deg);
    }
    if (j.contains("eval")) {
        const auto& e = j.at("eval");
        check_keys(e, {"success_radius", "iou_thresholds"}, "eval");
        maybe(e, "success_radius", cfg.eval.success_radius);
        maybe(e, "iou_thresholds", cfg.eval.iou_thresholds);
    }
    return cfg;
}

nlohmann::json PipelineConfig::to_json() const {
    return {
        {"input_dir", input_dir},
        {"output_dir", output_dir},
        {"seed", seed},
        {"jobs", jobs},
        {"reconstruct",
         {{"voxel_size", reconstruct.voxel_size},
          {"trunc_multiplier", reconstruct.trunc_multiplier},
          {"max_weight", reconstruct.max_weight},
          {"max_depth", reconstruct.max_depth},
          {"filter_radius", reconstruct.filter_radius},
          {"filter_min_neighbors", reconstruct.filter_min_neighbors},
          {"statistical_k", reconstruct.statistical_k},
          {"statistical_std_ratio", reconstruct.statistical_std_ratio}}},
        {"segment",
         {{"min_pixels", segment.min_pixels},
          {"neighbor_window", segment.neighbor_window},
          {"merge_threshold", segment.merge_threshold},
          {"iou_threshold", segment.iou_threshold},
          {"min_instance_points", segment.min_instance_points},
          {"voxel_size", segment.voxel_size},
          {"agreement_voxel", segment.agreement_voxel}}},
        {"scenegraph",
         {{"contact_eps", scenegraph.contact_eps}, {"near_threshold", scenegraph.near_threshold}}},
        {"vqa",
         {{"max_per_task", vqa.max_per_task},
          {"min_margin_m", vqa.min_margin_m},
          {"direction_deadzone_deg", vqa.direction_deadzone_deg}}},
        {"vln",
         {{"cluster_radius", vln.cluster_radius},
          {"min_split_steps", vln.min_split_steps},
          {"max_rotation_deg", vln.max_rotation_deg},
          {"max_translation_m", vln.max_translation_m},
          {"lookaround_deviation_deg", vln.lookaround_deviation_deg},
          {"landmark_radius", vln.landmark_radius}}},
        {"synth",
         {{"scenes", synth.scenes},
          {"min_objects", synth.min_objects},
          {"max_objects", synth.max_objects},
          {"room", synth.room},
          {"trajectory_steps", synth.trajectory_steps},
          {"render_width", synth.render_width},
          {"render_height", synth.render_height},
          {"fov_deg", synth.fov_deg}}},
        {"eval",
         {{"success_radius", eval.success_radius}, {"iou_thresholds", eval.iou_thresholds}}},
    };
}

SynthConfig PipelineConfig::synth_config() const {
    SynthConfig sc;
    sc.min_objects = synth.min_objects;
    sc.max_objects = synth.max_objects;
    if (synth.room.size() != 3) throw std::runtime_error("config: synth.room needs 3 extents");
    sc.room_extents = Eigen::Vector3d(synth.room[0], synth.room[1], synth.room[2]);
    sc.trajectory_steps = synth.trajectory_steps;
    sc.render_width = synth.render_width;
    sc.render_height = synth.render_height;
    sc.render_fov_deg = synth.fov_deg;
    return sc;
}

std::vector<std::string> discover_scenes(const std::string& root) {
    if (fs::exists(fs::path(root) / "poses.txt")) return {root};
    std::vector<std::string> scenes;
    if (!fs::is_directory(root)) throw std::runtime_error("no such input directory: " + root);
    for (const auto& entry : fs::directory_iterator(root))
        if (entry.is_directory() && fs::exists(entry.path() / "poses.txt"))
            scenes.push_back(entry.path().string());
    std::sort(scenes.begin(), scenes.end());
    if (scenes.empty()) throw std::runtime_error("no scenes (poses.txt) found under " + root);
    return scenes;
}

namespace {

std::string frame_name(int64_t frame_id) { return std::to_string(frame_id); }

DepthMap load_depth(const std::string& scene_in, int64_t frame_id) {
    return png_to_depth(
        read_png16((fs::path(scene_in) / "depth" / ("depth_" + frame_name(frame_id) + ".png"))
                       .string()));
}

Image16 load_mask(const std::string& scene_in, int64_t frame_id) {
    return read_png16(
        (fs::path(scene_in) / "masks" / ("mask_" + frame_name(frame_id) + ".png")).string());
}

void write_meta(const std::string& path, const PipelineConfig& cfg, const char* stage) {
    save_json(path, nlohmann::json{{"stage", stage},
                                   {"seed", cfg.seed},
                                   {"config", cfg.to_json()}});
}

}  // namespace

void run_synth(const PipelineConfig& cfg, const std::string& out_dir) {
    const SynthConfig sc = cfg.synth_config();
    const Intrinsics k = synth_intrinsics(sc);
    for (int s = 0; s < cfg.synth.scenes; ++s) {
        char name[32];
        std::snprintf(name, sizeof(name), "synth_%04d", s);
        const fs::path scene_dir = fs::path(out_dir) / name;
        fs::create_directories(scene_dir);

        const SceneSpec spec = gen_scene(cfg.seed + uint64_t(s), sc);

        std::vector<Pose> poses;
        nlohmann::json categories = nlohmann::json::object();
        nlohmann::json anchors = nlohmann::json::array();
        for (size_t i = 0; i < spec.trajectory.size(); ++i) {
            const Pose pose = synth_camera(spec, i);
            poses.push_back(pose);
            const DepthMap depth = render_depth(spec, pose, k);
            write_png16((scene_dir / "depth" / ("depth_" + frame_name(pose.frame_id) + ".png"))
                            .string(),
                        depth_to_png(depth));
            write_png16(
                (scene_dir / "masks" / ("mask_" + frame_name(pose.frame_id) + ".png")).string(),
                render_masks(spec, pose, k));
            for (size_t o = 0; o < spec.objects.size(); ++o)
                categories[frame_name(pose.frame_id) + ":" + std::to_string(o + 1)] =
                    spec.objects[o].category;
        }
        write_pose_file((scene_dir / "poses.txt").string(), poses);
        write_intrinsics((scene_dir / "intrinsics.json").string(), k);
        save_json((scene_dir / "categories.json").string(), categories);

        // Unit-scale anchors: the synthetic reconstruction is already metric.
        for (int a = 0; a < 8; ++a)
            anchors.push_back({{"mono_depth", 2.0 + 0.25 * a}, {"sfm_depth", 2.0 + 0.25 * a}});
        save_json((scene_dir / "anchors.json").string(), anchors);

        nlohmann::json gt_boxes = nlohmann::json::array();
        for (const auto& o : spec.objects)
            gt_boxes.push_back(detection_to_json({o.box, o.category, std::nullopt}));
        save_json((scene_dir / "gt_detections.json").string(), gt_boxes);
    }
    write_meta((fs::path(out_dir) / "synth_meta.json").string(), cfg, "synth");
}

void run_reconstruct(const PipelineConfig& cfg, const std::string& scene_in,
                     const std::string& scene_out) {
    const std::vector<Pose> poses = read_pose_file((fs::path(scene_in) / "poses.txt").string());
    const Intrinsics k = read_intrinsics((fs::path(scene_in) / "intrinsics.json").string());
    if (poses.empty()) throw std::runtime_error("no poses in " + scene_in);

    std::vector<DepthMap> depths;
    depths.reserve(poses.size());
    for (const Pose& pose : poses)
        depths.push_back(truncate_depth(load_depth(scene_in, pose.frame_id),
                                        cfg.reconstruct.max_depth));

    // Scene bounds from subsampled unprojections, padded by the truncation band.
    Aabb bounds;
    bool first = true;
    for (size_t f = 0; f < poses.size(); ++f) {
        for (int y = 0; y < k.height; y += 4)
            for (int x = 0; x < k.width; x += 4) {
                if (!depths[f].is_valid(x, y)) continue;
                const Eigen::Vector3d p =
                    unproject(x, y, depths[f].at(x, y), poses[f], k);
                if (first) {
                    bounds.min = bounds.max = p;
                    first = false;
                } else {
                    bounds.expand(p);
                }
            }
    }
    if (first) throw std::runtime_error("no valid depth in " + scene_in);
    const double pad =
        cfg.reconstruct.trunc_multiplier * cfg.reconstruct.voxel_size + cfg.reconstruct.voxel_size;
    bounds.min -= Eigen::Vector3d::Constant(pad);
    bounds.max += Eigen::Vector3d::Constant(pad);

    TsdfVolume volume = TsdfVolume::covering(
        bounds, cfg.reconstruct.voxel_size,
        cfg.reconstruct.trunc_multiplier * cfg.reconstruct.voxel_size,
        float(cfg.reconstruct.max_weight));
    for (size_t f = 0; f < poses.size(); ++f) integrate_frame(volume, depths[f], poses[f], k);

    TriangleMesh mesh = extract_mesh(volume);
    mesh = filter_mesh(mesh, cfg.reconstruct.filter_radius, cfg.reconstruct.filter_min_neighbors,
                       cfg.reconstruct.statistical_k, cfg.reconstruct.statistical_std_ratio);

    fs::create_directories(scene_out);
    write_mesh_ply((fs::path(scene_out) / "mesh.ply").string(), mesh);
    write_points_ply((fs::path(scene_out) / "cloud.ply").string(), mesh.vertices);
    write_meta((fs::path(scene_out) / "reconstruct_meta.json").string(), cfg, "reconstruct");
}

void run_segment(const PipelineConfig& cfg, const std::string& scene_in,
                 const std::string& scene_out) {
    const std::vector<Pose> poses = read_pose_file((fs::path(scene_in) / "poses.txt").string());
    const Intrinsics k = read_intrinsics((fs::path(scene_in) / "intrinsics.json").string());

    nlohmann::json categories = nlohmann::json::object();
    const fs::path cat_path = fs::path(scene_in) / "categories.json";
    if (fs::exists(cat_path)) categories = load_json(cat_path.string());

    std::map<int64_t, FrameData> frames;
    std::vector<MaskNode> nodes;
    for (const Pose& pose : poses) {
        FrameData data;
        data.pose = pose;
        data.depth = truncate_depth(load_depth(scene_in, pose.frame_id),
                                    cfg.reconstruct.max_depth);
        data.masks.frame_id = pose.frame_id;
        data.masks.labels = load_mask(scene_in, pose.frame_id);
        for (const auto& [key, value] : categories.items()) {
            const size_t colon = key.find(':');
            if (colon == std::string::npos) continue;
            if (std::stoll(key.substr(0, colon)) != pose.frame_id) continue;
            data.masks.categories[std::stoi(key.substr(colon + 1))] =
                value.get<std::string>();
        }
        auto lifted = lift_masks(data.masks, data.depth, pose, k, cfg.segment.min_pixels);
        nodes.insert(nodes.end(), lifted.begin(), lifted.end());
        frames.emplace(pose.frame_id, std::move(data));
    }

    std::vector<Instance3D> instances = cluster_masks(nodes, frames, k, cfg.segment);
    instances = merge_by_spatial_agreement(instances, cfg.segment.iou_threshold,
                                           cfg.segment.agreement_voxel);

    fs::create_directories(scene_out);
    nlohmann::json out = nlohmann::json::array();
    for (const auto& inst : instances) {
        out.push_back(instance_to_json(inst));
        write_points_ply((fs::path(scene_out) / "instances" /
                          (std::to_string(inst.instance_id) + ".ply"))
                             .string(),
                         inst.points);
    }
    save_json((fs::path(scene_out) / "instances.json").string(), out);
    write_meta((fs::path(scene_out) / "segment_meta.json").string(), cfg, "segment");
}

std::vector<Instance3D> load_instances(const std::string& scene_out) {
    const nlohmann::json j = load_json((fs::path(scene_out) / "instances.json").string());
    std::vector<Instance3D> instances;
    for (const auto& row : j) {
        Instance3D inst = instance_from_json(row);
        const fs::path ply =
            fs::path(scene_out) / "instances" / (std::to_string(inst.instance_id) + ".ply");
        if (fs::exists(ply)) inst.points = read_points_ply(ply.string());
        refresh_instance_geometry(inst);
        instances.push_back(std::move(inst));
    }
    return instances;
}

void run_scenegraph(const PipelineConfig& cfg, const std::string& scene_out) {
    const std::vector<Instance3D> instances = load_instances(scene_out);
    SceneGraph graph = build_graph(instances, cfg.scenegraph);
    // Room extent from the fused cloud when the reconstruction stage ran;
    // instance bounds alone understate the room.
    const fs::path cloud = fs::path(scene_out) / "cloud.ply";
    if (fs::exists(cloud)) {
        const auto points = read_points_ply(cloud.string());
        if (!points.empty()) set_room_extent(graph, points);
    }
    save_json((fs::path(scene_out) / "scene_graph.json").string(), graph_to_json(graph));
}

std::vector<NavEpisode> load_episodes(const std::string& path) {
    std::vector<NavEpisode> episodes;
    for (const auto& row : read_jsonl(path)) episodes.push_back(episode_from_json(row));
    return episodes;
}

void run_gen_vln(const PipelineConfig& cfg, const std::string& scene_in,
                 const std::string& scene_out) {
    const std::vector<Pose> poses = read_pose_file((fs::path(scene_in) / "poses.txt").string());
    const std::string scene_id = fs::path(scene_in).filename().string();

    double scale = 1.0;
    const fs::path anchors_path = fs::path(scene_in) / "anchors.json";
    if (fs::exists(anchors_path)) {
        std::vector<std::pair<double, double>> anchors;
        for (const auto& a : load_json(anchors_path.string()))
            anchors.emplace_back(a.at("mono_depth").get<double>(),
                                 a.at("sfm_depth").get<double>());
        if (!anchors.empty()) scale = calibrate_scale(anchors);
    }

    std::vector<GroundPose> path;
    for (const Pose& pose : poses) {
        try {
            GroundPose g = ground_pose(pose);
            g.x *= scale;
            g.y *= scale;
            path.push_back(g);
        } catch (const std::domain_error&) {
            std::cerr << "gen-vln: skipping frame " << pose.frame_id
                      << " with vertical view direction\n";
        }
    }
    if (path.empty()) throw std::runtime_error("no usable poses in " + scene_in);

    std::vector<Instance3D> instances;
    if (fs::exists(fs::path(scene_out) / "instances.json")) instances = load_instances(scene_out);

    const std::vector<GroundPose> clustered = cluster_positions(path, cfg.vln.cluster_radius);
    const auto subpaths =
        split_subpaths(clustered, cfg.vln.min_split_steps, cfg.vln.cluster_radius);

    std::vector<nlohmann::json> rows;
    int index = 0;
    for (const auto& subpath : subpaths) {
        std::vector<GroundPose> p =
            filter_steps(subpath, cfg.vln.max_rotation_deg, cfg.vln.max_translation_m);
        p = remove_lookaround(p, cfg.vln.lookaround_deviation_deg);
        if (p.size() < 2) continue;
        NavEpisode episode;
        episode.episode_id = scene_id + "_ep" + std::to_string(index++);
        episode.scene_id = scene_id;
        episode.start = p.front();
        episode.gt_path = p;
        episode.actions = encode_actions(p);
        episode.summary = summarize_episode(p, episode.actions, instances,
                                            cfg.vln.landmark_radius);
        rows.push_back(episode_to_json(episode));
    }
    fs::create_directories(scene_out);
    write_jsonl((fs::path(scene_out) / "episodes.jsonl").string(), rows);
    write_meta((fs::path(scene_out) / "episodes_meta.json").string(), cfg, "gen-vln");
}

void run_gen_vqa(const PipelineConfig& cfg, const std::string& scene_out) {
    const nlohmann::json graph_json =
        load_json((fs::path(scene_out) / "scene_graph.json").string());
    SceneGraph graph = graph_from_json(graph_json);
    // Reattach stored points: the distance questions measure closest points.
    const std::vector<Instance3D> with_points = load_instances(scene_out);
    for (auto& node : graph.nodes)
        for (const auto& inst : with_points)
            if (inst.instance_id == node.instance_id) node.points = inst.points;

    std::vector<NavEpisode> episodes;
    const fs::path episodes_path = fs::path(scene_out) / "episodes.jsonl";
    if (fs::exists(episodes_path)) episodes = load_episodes(episodes_path.string());

    const std::string scene_id = fs::path(scene_out).filename().string();
    const std::vector<QaItem> items =
        generate_all(graph, episodes, cfg.gen_config(), scene_id);

    std::vector<nlohmann::json> rows;
    for (const auto& item : items) rows.push_back(qa_item_to_json(item));
    write_jsonl((fs::path(scene_out) / "vqa.jsonl").string(), rows);
    write_meta((fs::path(scene_out) / "vqa_meta.json").string(), cfg, "gen-vqa");
}

nlohmann::json run_eval_vqa(const std::string& items_path, const std::string& predictions_path) {
    std::vector<QaItem> mca_items;
    std::vector<QaItem> na_items;
    for (const auto& row : read_jsonl(items_path)) {
        QaItem item = qa_item_from_json(row);
        (item.format == QaFormat::kMca ? mca_items : na_items).push_back(std::move(item));
    }
    std::map<std::string, std::string> predictions;
    for (const auto& row : read_jsonl(predictions_path))
        predictions[row.at("id").get<std::string>()] =
            row.at("prediction").is_string() ? row.at("prediction").get<std::string>()
                                             : row.at("prediction").dump();

    std::vector<double> na_pred, na_truth;
    size_t na_missing = 0;
    for (const auto& item : na_items) {
        const auto it = predictions.find(item.id);
        if (it == predictions.end()) {
            ++na_missing;
            continue;
        }
        na_pred.push_back(std::stod(it->second));
        na_truth.push_back(std::stod(item.answer));
    }

    nlohmann::json report{{"mca_count", mca_items.size()},
                          {"na_count", na_items.size()},
                          {"na_missing", na_missing}};
    report["mca_accuracy"] = eval_mca(predictions, mca_items);
    report["na_mra"] = na_truth.empty() ? 0.0 : eval_na_mra(na_pred, na_truth);
    return report;
}

nlohmann::json run_eval_vln(const PipelineConfig& cfg, const std::string& results_path) {
    std::vector<EpisodeResult> results;
    for (const auto& row : read_jsonl(results_path))
        results.push_back(episode_result_from_json(row));
    const NavReport r = nav_metrics(results, cfg.eval.success_radius);
    return {{"episodes", results.size()}, {"SR", r.success_rate},   {"OS", r.oracle_success},
            {"SPL", r.spl},               {"Dist", r.distance_to_goal}, {"PL", r.path_length}};
}

nlohmann::json run_eval_det(const PipelineConfig& cfg, const std::string& pred_path,
                            const std::string& gt_path) {
    DetectionSet pred, gt;
    for (const auto& row : load_json(pred_path)) pred.push_back(detection_from_json(row));
    for (const auto& row : load_json(gt_path)) gt.push_back(detection_from_json(row));
    nlohmann::json report{{"predictions", pred.size()}, {"ground_truth", gt.size()}};
    for (double threshold : cfg.eval.iou_thresholds) {
        const std::string suffix = format_na(threshold, 2);
        report["F1@" + suffix] = f1_at_iou(pred, gt, threshold);
        report["AP@" + suffix] = average_precision(pred, gt, threshold);
    }
    return report;
}

std::string report_table(const nlohmann::json& report) {
    std::ostringstream out;
    size_t width = 0;
    for (const auto& [key, value] : report.items()) width = std::max(width, key.size());
    for (const auto& [key, value] : report.items())
        out << key << std::string(width - key.size() + 2, ' ') << value.dump() << "\n";
    return out.str();
}

}  // namespace sceneforge
