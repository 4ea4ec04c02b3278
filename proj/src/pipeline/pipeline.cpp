// Copyright 2026 The gbm Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <chrono>
#include <fstream>

#include <omp.h>

#include "gbm/io.hpp"
#include "gbm/meshops.hpp"
#include "gbm/pipeline.hpp"
#include "gbm/synth.hpp"

namespace gbm {

using nlohmann::json;

StageError::StageError(std::string stage, std::optional<int> frame, const std::string& what, int exit_code)
    : std::runtime_error(stage + (frame ? " (frame " + std::to_string(*frame) + ")" : std::string()) + ": " + what),
      stage_(std::move(stage)),
      frame_(frame),
      exit_code_(exit_code) {}

std::vector<SceneFrame> load_scene(const fs::path& scene_dir) {
  const fs::path cameras = scene_dir / "cameras.json";
  if (!fs::exists(cameras)) throw IoError("missing " + cameras.string());
  std::vector<SceneFrame> out;
  for (const auto& fc : io::load_cameras_json(cameras)) {
    const std::string stem = synth::frame_stem(fc.frame);
    SceneFrame sf;
    sf.id = fc.frame;
    sf.frame.camera = fc.camera;
    sf.frame.depth = io::load_pfm(scene_dir / "depth" / (stem + ".pfm"));
    sf.frame.mask = io::load_mask_png(scene_dir / "masks" / (stem + ".png"));
    const fs::path color = scene_dir / "frames" / (stem + ".png");
    if (fs::exists(color)) sf.frame.color = io::load_rgb_png(color);
    out.push_back(std::move(sf));
  }
  if (out.empty()) throw ParseError(cameras.string() + ": no cameras");
  return out;
}

VideoScore silhouette_ssim(const TriangleMesh& mesh, const std::vector<CameraModel>& cameras,
                           const std::vector<BinaryMask>& reference, const SsimParams& params) {
  if (cameras.size() != reference.size()) throw InvalidArgument("silhouette_ssim: camera/mask count mismatch");
  std::vector<ImageGray> rendered, truth;
  for (std::size_t i = 0; i < cameras.size(); ++i) {
    rendered.push_back(to_gray(render_mesh(mesh, cameras[i]).coverage));
    truth.push_back(to_gray(reference[i]));
  }
  return video_ssim(rendered, truth, params);
}

namespace {

json element_json(const StructuringElement& e) {
  json offs = json::array();
  for (const auto& o : e.offsets()) offs.push_back({o.dx, o.dy});
  return offs;
}

StructuringElement element_from_json(const json& j) {
  if (j.is_object()) {
    const std::string shape = j.value("shape", "square");
    if (shape == "square") return StructuringElement::square(j.value("half_width", 1), j.value("half_height", 1));
    if (shape == "cross") return StructuringElement::cross(j.value("half_width", 1));
    throw InvalidArgument("config: unknown element shape '" + shape + "'");
  }
  std::vector<PixelOffset> offs;
  for (const auto& o : j) offs.push_back({o.at(0).get<int>(), o.at(1).get<int>()});
  return StructuringElement::from_offsets(std::move(offs));
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

}  // namespace

json to_json(const PipelineConfig& c) {
  json j;
  j["scene_dir"] = c.scene_dir.string();
  j["out_dir"] = c.out_dir.string();
  j["refine"] = {{"erode_iterations", c.refine.erode_iterations},
                 {"dilate_iterations", c.refine.dilate_iterations},
                 {"element", element_json(c.refine.element)},
                 {"rdp_ratio", c.refine.rdp_ratio},
                 {"keep_largest_only", c.refine.keep_largest_only}};
  j["smooth"] = {{"sigma", c.smooth.sigma},
                 {"kernel_radius", c.smooth.effective_radius()},
                 {"max_depth", c.smooth.max_depth}};
  j["fusion"] = {{"voxel_size", c.fusion.voxel_size},
                 {"truncation", c.fusion.truncation},
                 {"max_depth", c.fusion.max_depth},
                 {"use_mask", c.fusion.use_mask},
                 {"auto_resolution", c.fusion.auto_resolution},
                 {"max_voxels", c.fusion.max_voxels}};
  j["decimate"] = c.decimate;
  j["decimate_voxels"] = c.decimate_voxels;
  j["ground_truth_dir"] = c.ground_truth_dir ? json(c.ground_truth_dir->string()) : json(nullptr);
  j["metrics"] = c.metrics;
  j["ssim"] = {{"window", c.ssim.window}, {"sigma", c.ssim.sigma}, {"k1", c.ssim.k1}, {"k2", c.ssim.k2},
               {"dynamic_range", c.ssim.dynamic_range}};
  return j;
}

PipelineConfig config_from_json(const json& j, PipelineConfig c) {
  try {
    if (j.contains("scene_dir")) c.scene_dir = j["scene_dir"].get<std::string>();
    if (j.contains("out_dir")) c.out_dir = j["out_dir"].get<std::string>();
    if (j.contains("refine")) {
      const json& r = j["refine"];
      c.refine.erode_iterations = r.value("erode_iterations", c.refine.erode_iterations);
      c.refine.dilate_iterations = r.value("dilate_iterations", c.refine.dilate_iterations);
      c.refine.rdp_ratio = r.value("rdp_ratio", c.refine.rdp_ratio);
      c.refine.keep_largest_only = r.value("keep_largest_only", c.refine.keep_largest_only);
      if (r.contains("element")) c.refine.element = element_from_json(r["element"]);
    }
    if (j.contains("smooth")) {
      const json& s = j["smooth"];
      c.smooth.sigma = s.value("sigma", c.smooth.sigma);
      c.smooth.kernel_radius = s.value("kernel_radius", c.smooth.kernel_radius);
      c.smooth.max_depth = s.value("max_depth", c.smooth.max_depth);
    }
    if (j.contains("fusion")) {
      const json& f = j["fusion"];
      c.fusion.voxel_size = f.value("voxel_size", c.fusion.voxel_size);
      c.fusion.truncation = f.value("truncation", c.fusion.truncation);
      c.fusion.max_depth = f.value("max_depth", c.fusion.max_depth);
      c.fusion.use_mask = f.value("use_mask", c.fusion.use_mask);
      c.fusion.auto_resolution = f.value("auto_resolution", c.fusion.auto_resolution);
      c.fusion.max_voxels = f.value("max_voxels", c.fusion.max_voxels);
    }
    c.decimate = j.value("decimate", c.decimate);
    c.decimate_voxels = j.value("decimate_voxels", c.decimate_voxels);
    if (j.contains("ground_truth_dir")) {
      if (j["ground_truth_dir"].is_null()) {
        c.ground_truth_dir.reset();
      } else {
        c.ground_truth_dir = j["ground_truth_dir"].get<std::string>();
      }
    }
    c.metrics = j.value("metrics", c.metrics);
    if (j.contains("ssim")) {
      const json& s = j["ssim"];
      c.ssim.window = s.value("window", c.ssim.window);
      c.ssim.sigma = s.value("sigma", c.ssim.sigma);
      c.ssim.k1 = s.value("k1", c.ssim.k1);
      c.ssim.k2 = s.value("k2", c.ssim.k2);
      c.ssim.dynamic_range = s.value("dynamic_range", c.ssim.dynamic_range);
    }
  } catch (const json::exception& e) {
    throw ParseError(std::string("config: ") + e.what());
  }
  return c;
}

PipelineResult run_pipeline(const PipelineConfig& config) {
  PipelineResult result;
  json& report = result.report;
  report["parameters"] = to_json(config);
  report["threads"] = omp_get_max_threads();
  json& timings = report["timings_s"];

  auto input_error = [](const std::string& stage, std::optional<int> frame, const std::exception& e) {
    return StageError(stage, frame, e.what(), kExitInputError);
  };

  try {
    config.refine.validate();
    config.smooth.validate();
    config.fusion.validate();
    config.ssim.validate();
  } catch (const InvalidArgument& e) {
    throw input_error("config", std::nullopt, e);
  }

  auto t0 = std::chrono::steady_clock::now();
  std::vector<SceneFrame> scene;
  try {
    scene = load_scene(config.scene_dir);
  } catch (const std::exception& e) {
    throw input_error("load", std::nullopt, e);
  }
  timings["load"] = seconds_since(t0);
  report["frames"] = scene.size();

  std::error_code ec;
  fs::create_directories(config.out_dir / "masks_refined", ec);
  fs::create_directories(config.out_dir / "depth_smoothed", ec);
  if (ec) throw StageError("output", std::nullopt, "cannot create " + config.out_dir.string(), kExitInputError);

  t0 = std::chrono::steady_clock::now();
  for (SceneFrame& sf : scene) {
    try {
      sf.frame.mask = refine_mask(sf.frame.mask, config.refine);
      io::save_mask_png(config.out_dir / "masks_refined" / (synth::frame_stem(sf.id) + ".png"), sf.frame.mask);
    } catch (const EmptyMaskError& e) {
      throw StageError("refine-mask", sf.id, e.what(), kExitEmptyMask);
    } catch (const std::exception& e) {
      throw StageError("refine-mask", sf.id, e.what(), kExitStageFailure);
    }
  }
  timings["refine_mask"] = seconds_since(t0);

  t0 = std::chrono::steady_clock::now();
  for (SceneFrame& sf : scene) {
    try {
      sf.frame.depth = smooth_depth(sf.frame.depth, sf.frame.mask, config.smooth);
      io::save_pfm(config.out_dir / "depth_smoothed" / (synth::frame_stem(sf.id) + ".pfm"), sf.frame.depth);
    } catch (const std::exception& e) {
      throw StageError("smooth-depth", sf.id, e.what(), kExitStageFailure);
    }
  }
  timings["smooth_depth"] = seconds_since(t0);

  std::vector<Frame> frames;
  frames.reserve(scene.size());
  for (const SceneFrame& sf : scene) frames.push_back(sf.frame);

  t0 = std::chrono::steady_clock::now();
  TriangleMesh mesh;
  try {
    const TsdfVolume volume = integrate_sequence(frames, config.fusion);
    report["volume"] = {{"voxel_size", volume.voxel_size()},
                        {"dims", {volume.dims().nx, volume.dims().ny, volume.dims().nz}},
                        {"origin", {volume.origin().x(), volume.origin().y(), volume.origin().z()}},
                        {"observed_voxels", volume.observed_count()}};
    timings["fuse"] = seconds_since(t0);
    t0 = std::chrono::steady_clock::now();
    mesh = marching_cubes(volume);
    timings["marching_cubes"] = seconds_since(t0);
    report["raw_mesh"] = {{"vertices", mesh.vertices.size()}, {"triangles", mesh.triangles.size()}};
    if (config.decimate) mesh = decimate_vertex_clustering(mesh, config.decimate_voxels * volume.voxel_size());
  } catch (const std::exception& e) {
    throw StageError("fuse", std::nullopt, e.what(), kExitStageFailure);
  }

  t0 = std::chrono::steady_clock::now();
  try {
    mesh = clean_mesh(mesh);
  } catch (const std::exception& e) {
    throw StageError("clean-mesh", std::nullopt, e.what(), kExitStageFailure);
  }
  timings["clean_mesh"] = seconds_since(t0);
  report["mesh"] = {{"vertices", mesh.vertices.size()}, {"triangles", mesh.triangles.size()}};

  result.mesh_path = config.out_dir / "mesh.ply";
  try {
    io::save_ply(result.mesh_path, mesh);
  } catch (const std::exception& e) {
    throw StageError("write-mesh", std::nullopt, e.what(), kExitStageFailure);
  }

  if (config.metrics && config.ground_truth_dir) {
    t0 = std::chrono::steady_clock::now();
    try {
      std::vector<ImageRGB> rendered, truth;
      for (const SceneFrame& sf : scene) {
        truth.push_back(io::load_rgb_png(*config.ground_truth_dir / (synth::frame_stem(sf.id) + ".png")));
        rendered.push_back(render_mesh(mesh, sf.frame.camera).color);
      }
      const VideoScore score = video_ssim(rendered, truth, config.ssim);
      result.metrics_path = config.out_dir / "metrics.json";
      std::ofstream out(*result.metrics_path);
      out << json{{"per_frame", score.per_frame}, {"mean", score.mean}, {"min", score.min}}.dump(2) << "\n";
      report["video_ssim"] = {{"mean", score.mean}, {"min", score.min}};
      result.score = score;
    } catch (const std::exception& e) {
      throw StageError("metrics", std::nullopt, e.what(), kExitStageFailure);
    }
    timings["metrics"] = seconds_since(t0);
  }
  result.mesh = std::move(mesh);
  return result;
}

}  // namespace gbm
