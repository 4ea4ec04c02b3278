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

// gbm: building-mesh toolkit command line.
//
//   gbm synth | refine-mask | smooth-depth | fuse | clean-mesh | metrics | run

#include <omp.h>

#include <algorithm>
#include <chrono>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>
#include <json.hpp>

#include "gbm/depthops.hpp"
#include "gbm/fusion.hpp"
#include "gbm/io.hpp"
#include "gbm/maskops.hpp"
#include "gbm/meshops.hpp"
#include "gbm/metrics.hpp"
#include "gbm/pipeline.hpp"
#include "gbm/synth.hpp"

namespace {

using nlohmann::json;
namespace fs = std::filesystem;
using namespace gbm;

struct Options {
  std::string config_path;
  int threads = 0;
  std::string report_path;

  // synth
  std::string synth_scene = "sphere";
  int synth_frames = 31;
  double synth_tilt = 60.0;
  double synth_radius = 0.0;
  std::string synth_out;
  int synth_width = 640;
  int synth_height = 480;
  double synth_fx = 800.0;
  unsigned synth_seed = 7;

  // refine-mask
  std::string refine_in, refine_out;

  // smooth-depth
  std::string smooth_depth_in, smooth_mask_in, smooth_out;

  // fuse
  std::string fuse_scene, fuse_out;

  // clean-mesh
  std::string clean_in, clean_out;
  double voxel_size_hint = 0.0;

  // metrics
  std::string metric = "ssim";
  std::string metrics_ref, metrics_test, metrics_json;

  // run
  std::string run_scene, run_out = "out", run_gt;
  bool no_metrics = false;

  PipelineConfig config;
};

int write_report(const std::string& path, const json& report) {
  if (path.empty()) return kExitOk;
  std::ofstream out(path);
  if (!out) {
    std::cerr << "error: cannot write report " << path << "\n";
    return kExitInputError;
  }
  out << report.dump(2) << "\n";
  return kExitOk;
}

std::vector<fs::path> png_files(const fs::path& dir) {
  std::vector<fs::path> files;
  for (const auto& e : fs::directory_iterator(dir)) {
    if (e.is_regular_file() && e.path().extension() == ".png") files.push_back(e.path());
  }
  std::sort(files.begin(), files.end());
  return files;
}

json refine_one(const fs::path& in, const fs::path& out, const RefineParams& params) {
  const BinaryMask mask = io::load_mask_png(in);
  const auto contours = refine_contours(mask, params);
  BinaryMask refined = refine_mask(mask, params);
  io::save_mask_png(out, refined);
  std::size_t points = 0;
  for (const auto& c : contours) points += c.size();
  return {{"in", in.string()}, {"out", out.string()}, {"contours", contours.size()}, {"contour_points", points}};
}

int cmd_synth(const Options& o, json& report) {
  synth::PrimitiveScene scene;
  synth::OrbitSpec orbit;
  bool noisy = false;
  if (o.synth_scene == "sphere") {
    scene = synth::sphere_scene();
    orbit = synth::sphere_orbit(o.synth_frames);
  } else if (o.synth_scene == "box" || o.synth_scene == "noisy-mask") {
    scene = synth::box_scene();
    orbit = synth::box_orbit(o.synth_frames);
    noisy = o.synth_scene == "noisy-mask";
  } else {
    throw InvalidArgument("synth: unknown scene '" + o.synth_scene + "'");
  }
  orbit.tilt = o.synth_tilt;
  if (o.synth_radius > 0.0) orbit.radius = o.synth_radius;
  orbit.width = o.synth_width;
  orbit.height = o.synth_height;
  orbit.fx = orbit.fy = o.synth_fx;
  synth::make_scene_dir(scene, orbit, o.synth_out, noisy, o.synth_seed);
  report["synth"] = {{"scene", o.synth_scene}, {"frames", orbit.frames}, {"tilt", orbit.tilt},
                     {"radius", orbit.radius}, {"altitude", orbit.effective_altitude()},
                     {"width", orbit.width}, {"height", orbit.height}, {"fx", orbit.fx}, {"out", o.synth_out}};
  return kExitOk;
}

int cmd_refine(const Options& o, json& report) {
  const RefineParams& p = o.config.refine;
  report["parameters"] = to_json(o.config)["refine"];
  json files = json::array();
  if (fs::is_directory(o.refine_in)) {
    fs::create_directories(o.refine_out);
    for (const auto& f : png_files(o.refine_in)) {
      try {
        files.push_back(refine_one(f, fs::path(o.refine_out) / f.filename(), p));
      } catch (const EmptyMaskError& e) {
        throw StageError("refine-mask", std::nullopt, f.filename().string() + ": " + e.what(), kExitEmptyMask);
      }
    }
  } else {
    files.push_back(refine_one(o.refine_in, o.refine_out, p));
  }
  report["files"] = files;
  return kExitOk;
}

int cmd_smooth(const Options& o, json& report) {
  const DepthMap depth = io::load_pfm(o.smooth_depth_in);
  const BinaryMask mask = io::load_mask_png(o.smooth_mask_in);
  const DepthMap out = smooth_depth(depth, mask, o.config.smooth);
  io::save_pfm(o.smooth_out, out);
  report["parameters"] = to_json(o.config)["smooth"];
  report["valid_in"] = depth.valid_count();
  report["valid_out"] = out.valid_count();
  return kExitOk;
}

int cmd_fuse(const Options& o, json& report) {
  std::vector<Frame> frames;
  for (auto& sf : load_scene(o.fuse_scene)) frames.push_back(std::move(sf.frame));
  const TsdfVolume volume = integrate_sequence(frames, o.config.fusion);
  const TriangleMesh mesh = marching_cubes(volume);
  io::save_ply(o.fuse_out, mesh);
  report["parameters"] = to_json(o.config)["fusion"];
  report["volume"] = {{"voxel_size", volume.voxel_size()},
                      {"dims", {volume.dims().nx, volume.dims().ny, volume.dims().nz}},
                      {"observed_voxels", volume.observed_count()}};
  report["mesh"] = {{"vertices", mesh.vertices.size()}, {"triangles", mesh.triangles.size()}};
  return kExitOk;
}

int cmd_clean(const Options& o, json& report) {
  TriangleMesh mesh = io::load_ply(o.clean_in);
  report["in"] = {{"vertices", mesh.vertices.size()}, {"triangles", mesh.triangles.size()}};
  if (o.config.decimate) {
    const double voxel = o.voxel_size_hint > 0.0 ? o.voxel_size_hint : median_edge_length(mesh);
    if (voxel > 0.0) mesh = decimate_vertex_clustering(mesh, o.config.decimate_voxels * voxel);
    report["decimate_cell"] = o.config.decimate_voxels * voxel;
  }
  mesh = clean_mesh(mesh);
  io::save_ply(o.clean_out, mesh);
  report["out"] = {{"vertices", mesh.vertices.size()}, {"triangles", mesh.triangles.size()}};
  return kExitOk;
}

int cmd_metrics(const Options& o, json& report) {
  std::vector<fs::path> ref, test;
  if (fs::is_directory(o.metrics_ref)) {
    ref = png_files(o.metrics_ref);
    test = png_files(o.metrics_test);
  } else {
    ref = {o.metrics_ref};
    test = {o.metrics_test};
  }
  if (ref.size() != test.size()) {
    throw InvalidArgument("metrics: " + std::to_string(ref.size()) + " reference vs " +
                          std::to_string(test.size()) + " test frames");
  }
  if (ref.empty()) throw InvalidArgument("metrics: no frames");
  json result;
  if (o.metric == "lpips") {
    lpips(io::load_rgb_png(ref[0]), io::load_rgb_png(test[0]));
  }
  if (o.metric == "psnr") {
    std::vector<double> per;
    for (std::size_t i = 0; i < ref.size(); ++i) per.push_back(psnr(io::load_rgb_png(ref[i]), io::load_rgb_png(test[i])));
    double sum = 0.0;
    for (double v : per) sum += v;
    result = {{"per_frame", per}, {"mean", sum / per.size()}, {"min", *std::min_element(per.begin(), per.end())}};
  } else if (o.metric == "ssim" || o.metric == "video-ssim") {
    std::vector<ImageRGB> a, b;
    for (std::size_t i = 0; i < ref.size(); ++i) {
      a.push_back(io::load_rgb_png(ref[i]));
      b.push_back(io::load_rgb_png(test[i]));
    }
    const VideoScore s = video_ssim(a, b, o.config.ssim);
    result = {{"per_frame", s.per_frame}, {"mean", s.mean}, {"min", s.min}};
  } else if (o.metric != "lpips") {
    throw InvalidArgument("metrics: unknown metric '" + o.metric + "'");
  }
  report["metric"] = o.metric;
  report["result"] = result;
  std::cout << result.dump(2) << "\n";
  if (!o.metrics_json.empty()) {
    std::ofstream out(o.metrics_json);
    if (!out) throw IoError("cannot write " + o.metrics_json);
    out << result.dump(2) << "\n";
  }
  return kExitOk;
}

int cmd_run(Options& o, json& report) {
  PipelineConfig& c = o.config;
  if (!o.run_scene.empty()) c.scene_dir = o.run_scene;
  if (!o.run_out.empty()) c.out_dir = o.run_out;
  if (!o.run_gt.empty()) c.ground_truth_dir = fs::path(o.run_gt);
  if (o.no_metrics) c.metrics = false;
  if (c.scene_dir.empty()) throw InvalidArgument("run: --scene is required");
  PipelineResult r = run_pipeline(c);
  report = r.report;
  report["mesh_path"] = r.mesh_path.string();
  if (r.metrics_path) report["metrics_path"] = r.metrics_path->string();
  std::cout << "mesh: " << r.mesh_path.string() << " (" << r.mesh.vertices.size() << " vertices, "
            << r.mesh.triangles.size() << " triangles)\n";
  if (r.score) std::cout << "video-ssim mean " << r.score->mean << " min " << r.score->min << "\n";
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Building-mesh toolkit: mask refinement, depth smoothing, TSDF fusion, mesh cleanup, metrics"};
  app.require_subcommand(1);
  Options o;
  app.add_option("--config", o.config_path, "JSON config; command-line flags override it");
  app.add_option("--threads", o.threads, "OpenMP thread count (0 = runtime default)");
  app.add_option("--report", o.report_path, "write a JSON run report");

  // Parameter flags shared by several subcommands land in these temporaries;
  // they are applied over the config file only when given.
  int erode = 0, dilate = 0;
  double rdp_ratio = 0.0, sigma = 0.0, smooth_max_depth = 0.0;
  int radius = 0;
  double voxel = 0.0, trunc = 0.0, fuse_max_depth = 0.0, decimate_k = 0.0;
  bool keep_largest = false, no_mask = false;
  std::vector<CLI::Option*> refine_opts, smooth_opts, fuse_opts;

  auto add_refine_flags = [&](CLI::App* sub) {
    refine_opts.push_back(sub->add_option("--erode", erode, "erosion iterations (default 1)"));
    refine_opts.push_back(sub->add_option("--dilate", dilate, "dilation iterations (default 2)"));
    refine_opts.push_back(sub->add_option("--rdp-ratio", rdp_ratio, "RDP epsilon as a fraction of perimeter"));
    refine_opts.push_back(sub->add_flag("--keep-largest", keep_largest, "keep only the largest contour"));
  };
  auto add_smooth_flags = [&](CLI::App* sub, bool with_max_depth) {
    smooth_opts.push_back(sub->add_option("--sigma", sigma, "Gaussian sigma in pixels (default 2)"));
    smooth_opts.push_back(sub->add_option("--radius", radius, "kernel radius (default ceil(3 sigma))"));
    if (with_max_depth) smooth_opts.push_back(sub->add_option("--max-depth", smooth_max_depth, "range cutoff (m)"));
  };
  auto add_fuse_flags = [&](CLI::App* sub, bool with_max_depth) {
    fuse_opts.push_back(sub->add_option("--voxel-size", voxel, "voxel edge (m); 0 = auto"));
    fuse_opts.push_back(sub->add_option("--truncation", trunc, "truncation distance (m); 0 = 4 voxels"));
    if (with_max_depth) fuse_opts.push_back(sub->add_option("--max-depth", fuse_max_depth, "range cutoff (m)"));
    fuse_opts.push_back(sub->add_flag("--no-mask", no_mask, "integrate all pixels, ignoring masks"));
  };

  auto* synth_cmd = app.add_subcommand("synth", "render a synthetic scene directory");
  synth_cmd->add_option("--scene", o.synth_scene, "sphere | box | noisy-mask")->check(CLI::IsMember({"sphere", "box", "noisy-mask"}));
  synth_cmd->add_option("--frames", o.synth_frames, "orbit frames (default 31)");
  synth_cmd->add_option("--tilt", o.synth_tilt, "camera tilt in degrees; 0 = straight down");
  synth_cmd->add_option("--radius", o.synth_radius, "orbit radius (m)");
  synth_cmd->add_option("--width", o.synth_width);
  synth_cmd->add_option("--height", o.synth_height);
  synth_cmd->add_option("--fx", o.synth_fx, "focal length in pixels (fx = fy)");
  synth_cmd->add_option("--seed", o.synth_seed, "noise seed for noisy-mask");
  synth_cmd->add_option("--out", o.synth_out)->required();

  auto* refine_cmd = app.add_subcommand("refine-mask", "refine a mask PNG (or a directory of them)");
  refine_cmd->add_option("--in", o.refine_in)->required();
  refine_cmd->add_option("--out", o.refine_out)->required();
  add_refine_flags(refine_cmd);

  auto* smooth_cmd = app.add_subcommand("smooth-depth", "masked Gaussian smoothing of a PFM depth map");
  smooth_cmd->add_option("--depth", o.smooth_depth_in)->required();
  smooth_cmd->add_option("--mask", o.smooth_mask_in)->required();
  smooth_cmd->add_option("--out", o.smooth_out)->required();
  add_smooth_flags(smooth_cmd, true);

  auto* fuse_cmd = app.add_subcommand("fuse", "TSDF-fuse a scene directory and extract a mesh");
  fuse_cmd->add_option("--scene", o.fuse_scene)->required();
  fuse_cmd->add_option("--out", o.fuse_out)->required();
  add_fuse_flags(fuse_cmd, true);

  auto* clean_cmd = app.add_subcommand("clean-mesh", "remove degenerate/unreferenced geometry, keep largest cluster");
  clean_cmd->add_option("--in", o.clean_in)->required();
  clean_cmd->add_option("--out", o.clean_out)->required();
  auto* decimate_opt = clean_cmd->add_option("--decimate-voxels", decimate_k, "vertex-clustering cell in voxels");
  clean_cmd->add_option("--voxel-size", o.voxel_size_hint, "voxel size for --decimate-voxels (default: median edge)");

  auto* metrics_cmd = app.add_subcommand("metrics", "full-reference image metrics");
  metrics_cmd->add_option("metric", o.metric, "psnr | ssim | video-ssim | lpips")
      ->check(CLI::IsMember({"psnr", "ssim", "video-ssim", "lpips"}));
  metrics_cmd->add_option("--ref", o.metrics_ref)->required();
  metrics_cmd->add_option("--test", o.metrics_test)->required();
  metrics_cmd->add_option("--json", o.metrics_json);

  auto* run_cmd = app.add_subcommand("run", "full pipeline: refine, smooth, fuse, clean, score");
  run_cmd->add_option("--scene", o.run_scene);
  run_cmd->add_option("--out", o.run_out);
  run_cmd->add_option("--gt", o.run_gt, "ground-truth RGB frames for video SSIM");
  run_cmd->add_flag("--no-metrics", o.no_metrics);
  add_refine_flags(run_cmd);
  add_smooth_flags(run_cmd, false);
  add_fuse_flags(run_cmd, true);
  auto* run_decimate = run_cmd->add_option("--decimate-voxels", decimate_k, "vertex-clustering cell in voxels");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitInputError;
  }

  json report;
  const auto t0 = std::chrono::steady_clock::now();
  int code = kExitOk;
  try {
    if (o.threads > 0) omp_set_num_threads(o.threads);
    if (!o.config_path.empty()) {
      std::ifstream in(o.config_path);
      if (!in) throw IoError("cannot open config " + o.config_path);
      json j;
      try {
        j = json::parse(in);
      } catch (const json::parse_error& e) {
        throw ParseError(o.config_path + ": " + e.what(), e.byte);
      }
      o.config = config_from_json(j, o.config);
    }
    auto given = [](const std::vector<CLI::Option*>& opts, const std::string& name) {
      for (auto* opt : opts)
        if (opt->get_name() == name && opt->count() > 0) return true;
      return false;
    };
    if (given(refine_opts, "--erode")) o.config.refine.erode_iterations = erode;
    if (given(refine_opts, "--dilate")) o.config.refine.dilate_iterations = dilate;
    if (given(refine_opts, "--rdp-ratio")) o.config.refine.rdp_ratio = rdp_ratio;
    if (given(refine_opts, "--keep-largest")) o.config.refine.keep_largest_only = keep_largest;
    if (given(smooth_opts, "--sigma")) o.config.smooth.sigma = sigma;
    if (given(smooth_opts, "--radius")) o.config.smooth.kernel_radius = radius;
    if (given(smooth_opts, "--max-depth")) o.config.smooth.max_depth = smooth_max_depth;
    if (given(fuse_opts, "--voxel-size")) o.config.fusion.voxel_size = voxel;
    if (given(fuse_opts, "--truncation")) o.config.fusion.truncation = trunc;
    if (given(fuse_opts, "--max-depth")) {
      o.config.fusion.max_depth = fuse_max_depth;
      o.config.smooth.max_depth = fuse_max_depth;
    }
    if (given(fuse_opts, "--no-mask")) o.config.fusion.use_mask = !no_mask;
    if (decimate_opt->count() > 0 || run_decimate->count() > 0) {
      o.config.decimate = true;
      o.config.decimate_voxels = decimate_k;
    }

    if (synth_cmd->parsed()) code = cmd_synth(o, report);
    if (refine_cmd->parsed()) code = cmd_refine(o, report);
    if (smooth_cmd->parsed()) code = cmd_smooth(o, report);
    if (fuse_cmd->parsed()) code = cmd_fuse(o, report);
    if (clean_cmd->parsed()) code = cmd_clean(o, report);
    if (metrics_cmd->parsed()) code = cmd_metrics(o, report);
    if (run_cmd->parsed()) code = cmd_run(o, report);
  } catch (const StageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    report["error"] = {{"stage", e.stage()}, {"message", e.what()}};
    if (e.frame()) report["error"]["frame"] = *e.frame();
    code = e.exit_code();
  } catch (const EmptyMaskError& e) {
    std::cerr << "error: " << e.what() << "\n";
    report["error"] = {{"message", e.what()}};
    code = kExitEmptyMask;
  } catch (const UnsupportedError& e) {
    std::cerr << "error: " << e.what() << "\n";
    report["error"] = {{"message", e.what()}};
    code = kExitStageFailure;
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    report["error"] = {{"message", e.what()}};
    code = kExitInputError;
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    report["error"] = {{"message", e.what()}};
    code = kExitInputError;
  } catch (const InvalidArgument& e) {
    std::cerr << "error: " << e.what() << "\n";
    report["error"] = {{"message", e.what()}};
    code = kExitInputError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    report["error"] = {{"message", e.what()}};
    code = kExitStageFailure;
  }
  report["threads"] = omp_get_max_threads();
  report["elapsed_s"] = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  report["exit_code"] = code;
  const int report_code = write_report(o.report_path, report);
  return code != kExitOk ? code : report_code;
}
