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

#include <gtest/gtest.h>

#include <cstring>
#include <filesystem>
#include <random>

#include "gbm/errors.hpp"
#include "gbm/io.hpp"

namespace gbm {
namespace {

namespace fs = std::filesystem;

fs::path temp_dir() {
  const fs::path p = fs::temp_directory_path() / ("gbm_io_" + std::to_string(::testing::UnitTest::GetInstance()->random_seed()) + "_" +
                                                  ::testing::UnitTest::GetInstance()->current_test_info()->name());
  fs::create_directories(p);
  return p;
}

std::vector<unsigned char> bytes_of(const std::string& s) { return {s.begin(), s.end()}; }

void append_f32(std::vector<unsigned char>& b, float v) {
  unsigned char raw[4];
  std::memcpy(raw, &v, 4);
  b.insert(b.end(), raw, raw + 4);
}

TEST(Png, MaskRoundTrip) {
  const fs::path dir = temp_dir();
  BinaryMask m(2, 2);
  m.set(0, 0, true);
  m.set(1, 1, true);
  io::save_mask_png(dir / "m.png", m);
  EXPECT_EQ(io::load_mask_png(dir / "m.png"), m);
  fs::remove_all(dir);
}

TEST(Png, RgbRoundTrip) {
  const fs::path dir = temp_dir();
  ImageRGB img(5, 3);
  std::mt19937 rng(1);
  for (auto& v : img.data) v = static_cast<std::uint8_t>(rng());
  io::save_rgb_png(dir / "c.png", img);
  EXPECT_EQ(io::load_rgb_png(dir / "c.png"), img);
  fs::remove_all(dir);
}

TEST(Png, RejectsBadSignature) {
  const fs::path dir = temp_dir();
  io::write_file(dir / "x.png", bytes_of("not a png at all"));
  try {
    io::load_mask_png(dir / "x.png");
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    ASSERT_TRUE(e.offset().has_value());
    EXPECT_EQ(*e.offset(), 0u);
  }
  EXPECT_THROW(io::load_mask_png(dir / "missing.png"), IoError);
  fs::remove_all(dir);
}

TEST(Pfm, LittleEndianParsedBottomUp) {
  std::vector<unsigned char> b = bytes_of("Pf\n2 2\n-1.0\n");
  for (float v : {1.f, 2.f, 3.f, 4.f}) append_f32(b, v);  // bottom row first
  const DepthMap d = io::parse_pfm(b);
  ASSERT_EQ(d.width, 2);
  ASSERT_EQ(d.height, 2);
  EXPECT_DOUBLE_EQ(d.at(0, 1), 1.0);
  EXPECT_DOUBLE_EQ(d.at(1, 1), 2.0);
  EXPECT_DOUBLE_EQ(d.at(0, 0), 3.0);
  EXPECT_DOUBLE_EQ(d.at(1, 0), 4.0);
}

TEST(Pfm, BigEndianScale) {
  std::vector<unsigned char> b = bytes_of("Pf\n1 1\n1.0\n");
  const unsigned char be[4] = {0x40, 0xA0, 0x00, 0x00};  // 5.0f
  b.insert(b.end(), be, be + 4);
  EXPECT_DOUBLE_EQ(io::parse_pfm(b).at(0, 0), 5.0);
}

TEST(Pfm, RejectsInconsistentFiles) {
  std::vector<unsigned char> b = bytes_of("Pf\n2 2\n-1.0\n");
  for (float v : {1.f, 2.f, 3.f}) append_f32(b, v);
  EXPECT_THROW(io::parse_pfm(b), ParseError);  // truncated
  append_f32(b, 4.f);
  append_f32(b, 5.f);
  EXPECT_THROW(io::parse_pfm(b), ParseError);  // trailing data
  EXPECT_THROW(io::parse_pfm(bytes_of("PF\n1 1\n-1.0\n")), ParseError);  // color PFM
  EXPECT_THROW(io::parse_pfm(bytes_of("Pf\nx 1\n-1.0\n")), ParseError);
  try {
    io::parse_pfm(bytes_of("Pq\n1 1\n-1\n"));
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_TRUE(e.offset().has_value());
  }
}

TEST(Pfm, RoundTripMapsInvalidToZero) {
  const fs::path dir = temp_dir();
  DepthMap d(3, 2, 7.25);
  d.at(1, 0) = -3.0;
  d.at(2, 1) = std::numeric_limits<double>::quiet_NaN();
  io::save_pfm(dir / "d.pfm", d);
  const DepthMap r = io::load_pfm(dir / "d.pfm");
  EXPECT_DOUBLE_EQ(r.at(0, 0), 7.25);
  EXPECT_DOUBLE_EQ(r.at(1, 0), 0.0);
  EXPECT_DOUBLE_EQ(r.at(2, 1), 0.0);
  EXPECT_EQ(r.valid_count(), 4u);
  fs::remove_all(dir);
}

TEST(Ply, RoundTripColored) {
  const fs::path dir = temp_dir();
  TriangleMesh m;
  m.vertices = {{0, 0, 0}, {1, 0, 0}, {0, 1, 0.5}};
  m.colors = {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}};
  m.triangles = {{0, 1, 2}};
  io::save_ply(dir / "m.ply", m);
  const TriangleMesh r = io::load_ply(dir / "m.ply");
  ASSERT_EQ(r.vertices.size(), 3u);
  ASSERT_EQ(r.colors.size(), 3u);
  EXPECT_EQ(r.triangles, m.triangles);
  for (int i = 0; i < 3; ++i) {
    EXPECT_NEAR((r.vertices[i] - m.vertices[i]).norm(), 0.0, 1e-7);
    EXPECT_NEAR((r.colors[i] - m.colors[i]).norm(), 0.0, 1.0 / 255);
  }
  fs::remove_all(dir);
}

TEST(Ply, EmptyMeshIsValid) {
  const fs::path dir = temp_dir();
  io::save_ply(dir / "e.ply", TriangleMesh{});
  const TriangleMesh r = io::load_ply(dir / "e.ply");
  EXPECT_TRUE(r.vertices.empty());
  EXPECT_TRUE(r.triangles.empty());
  fs::remove_all(dir);
}

TEST(Ply, RejectsTruncatedAndOutOfRange) {
  const fs::path dir = temp_dir();
  TriangleMesh m;
  m.vertices = {{0, 0, 0}, {1, 0, 0}, {0, 1, 0}};
  m.triangles = {{0, 1, 2}};
  io::save_ply(dir / "m.ply", m);
  auto b = io::read_file(dir / "m.ply");
  auto cut = b;
  cut.resize(cut.size() - 2);
  EXPECT_THROW(io::parse_ply(cut), ParseError);
  auto extra = b;
  extra.push_back(0);
  EXPECT_THROW(io::parse_ply(extra), ParseError);
  auto bad = b;
  bad[bad.size() - 4] = 9;  // last index -> 9
  EXPECT_THROW(io::parse_ply(bad), ParseError);
  EXPECT_THROW(io::parse_ply(bytes_of("ply\nformat ascii 1.0\nend_header\n")), ParseError);
  fs::remove_all(dir);
}

TEST(Cameras, JsonRoundTrip) {
  const fs::path dir = temp_dir();
  io::FramedCamera fc;
  fc.frame = 4;
  fc.camera.fx = 800;
  fc.camera.fy = 801;
  fc.camera.cx = 320;
  fc.camera.cy = 240;
  fc.camera.width = 640;
  fc.camera.height = 480;
  fc.camera.world_from_camera = make_rigid(Eigen::AngleAxisd(0.3, Vec3(1, 2, 3).normalized()).toRotationMatrix(),
                                          Vec3(1.5, -2, 30));
  io::save_cameras_json(dir / "cameras.json", {fc});
  const auto r = io::load_cameras_json(dir / "cameras.json");
  ASSERT_EQ(r.size(), 1u);
  EXPECT_EQ(r[0].frame, 4);
  EXPECT_EQ(r[0].camera.width, 640);
  EXPECT_DOUBLE_EQ(r[0].camera.fy, 801);
  EXPECT_NEAR((r[0].camera.world_from_camera - fc.camera.world_from_camera).norm(), 0.0, 1e-12);
  fs::remove_all(dir);
}

TEST(Cameras, RejectsMalformedJson) {
  const fs::path dir = temp_dir();
  io::write_file(dir / "a.json", bytes_of("[{\"frame\": 0}]"));
  EXPECT_THROW(io::load_cameras_json(dir / "a.json"), ParseError);
  io::write_file(dir / "b.json", bytes_of("[{\"frame\": 0, "));
  EXPECT_THROW(io::load_cameras_json(dir / "b.json"), ParseError);
  io::write_file(dir / "c.json",
                 bytes_of("[{\"frame\":0,\"fx\":1,\"fy\":1,\"cx\":0,\"cy\":0,\"width\":2,\"height\":2,"
                          "\"world_from_camera\":[1,0,0,0,0,1,0,0,0,0,1,0,0,0,0]}]"));
  EXPECT_THROW(io::load_cameras_json(dir / "c.json"), ParseError);
  fs::remove_all(dir);
}

}  // namespace
}  // namespace gbm
