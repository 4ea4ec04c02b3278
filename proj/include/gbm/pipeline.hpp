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

#pragma once

#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "gbm/depthops.hpp"
#include "gbm/fusion.hpp"
#include "gbm/maskops.hpp"
#include "gbm/metrics.hpp"

namespace gbm {

namespace fs = std::filesystem;

enum ExitCode : int {
  kExitOk = 0,
  kExitInputError = 2,
  kExitStageFailure = 3,
  kExitEmptyMask = 4,
};

/// A pipeline stage failed. `frame` is set when the failure is tied to one frame.
class StageError : public std::runtime_error {
 public:
  StageError(std::string stage, std::optional<int> frame, const std::string& what, int exit_code);

  const std::string& stage() const noexcept { return stage_; }
  std::optional<int> frame() const noexcept { return frame_; }
  int exit_code() const noexcept { return exit_code_; }

 private:
  std::string stage_;
  std::optional<int> frame_;
  int exit_code_;
};

struct PipelineConfig {
  fs::path scene_dir;
  fs::path out_dir = "out";
  RefineParams refine;
  SmoothParams smooth;
  FusionParams fusion;
  bool decimate = false;
  double decimate_voxels = 2.0;
  std::optional<fs::path> ground_truth_dir;  // RGB frames named like frames/
  bool metrics = true;
  SsimParams ssim;
};

/// One scene frame as stored on disk.
struct SceneFrame {
  int id = 0;
  Frame frame;
};

/// Reads cameras.json and the frames/, depth/, masks/ files it names.
std::vector<SceneFrame> load_scene(const fs::path& scene_dir);

struct PipelineResult {
  fs::path mesh_path;
  std::optional<fs::path> metrics_path;
  std::optional<VideoScore> score;
  TriangleMesh mesh;
  nlohmann::json report;  // stage timings, counts, and every effective parameter
};

/// refine masks -> smooth depths -> fuse -> marching cubes -> clean -> PLY, plus
/// video SSIM against ground-truth frames when configured.
/// Throws StageError.
PipelineResult run_pipeline(const PipelineConfig& config);

/// Per-frame SSIM between mesh coverage renders and reference masks.
VideoScore silhouette_ssim(const TriangleMesh& mesh, const std::vector<CameraModel>& cameras,
                           const std::vector<BinaryMask>& reference, const SsimParams& params = {});

nlohmann::json to_json(const PipelineConfig& config);
/// Fields present in `j` override `base`.
PipelineConfig config_from_json(const nlohmann::json& j, PipelineConfig base = {});

}  // namespace gbm
