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

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstring>
#include <sstream>
#include <string>

#include "gbm/io.hpp"

namespace gbm::io {

namespace {

enum class Scalar { kInt8, kUInt8, kInt16, kUInt16, kInt32, kUInt32, kFloat32, kFloat64 };

std::size_t scalar_size(Scalar s) {
  switch (s) {
    case Scalar::kInt8:
    case Scalar::kUInt8: return 1;
    case Scalar::kInt16:
    case Scalar::kUInt16: return 2;
    case Scalar::kInt32:
    case Scalar::kUInt32:
    case Scalar::kFloat32: return 4;
    case Scalar::kFloat64: return 8;
  }
  return 0;
}

Scalar parse_scalar(const std::string& name, std::size_t offset) {
  if (name == "char" || name == "int8") return Scalar::kInt8;
  if (name == "uchar" || name == "uint8") return Scalar::kUInt8;
  if (name == "short" || name == "int16") return Scalar::kInt16;
  if (name == "ushort" || name == "uint16") return Scalar::kUInt16;
  if (name == "int" || name == "int32") return Scalar::kInt32;
  if (name == "uint" || name == "uint32") return Scalar::kUInt32;
  if (name == "float" || name == "float32") return Scalar::kFloat32;
  if (name == "double" || name == "float64") return Scalar::kFloat64;
  throw ParseError("ply: unknown property type '" + name + "'", offset);
}

// Payload is little-endian; host byte order is assumed little-endian too.
static_assert(std::endian::native == std::endian::little, "big-endian hosts not supported");

double read_scalar(const unsigned char* p, Scalar s) {
  switch (s) {
    case Scalar::kInt8: return static_cast<double>(static_cast<std::int8_t>(*p));
    case Scalar::kUInt8: return static_cast<double>(*p);
    case Scalar::kInt16: { std::int16_t v; std::memcpy(&v, p, 2); return v; }
    case Scalar::kUInt16: { std::uint16_t v; std::memcpy(&v, p, 2); return v; }
    case Scalar::kInt32: { std::int32_t v; std::memcpy(&v, p, 4); return v; }
    case Scalar::kUInt32: { std::uint32_t v; std::memcpy(&v, p, 4); return v; }
    case Scalar::kFloat32: { float v; std::memcpy(&v, p, 4); return v; }
    case Scalar::kFloat64: { double v; std::memcpy(&v, p, 8); return v; }
  }
  return 0.0;
}

struct Property {
  std::string name;
  Scalar type = Scalar::kFloat32;
  bool is_list = false;
  Scalar count_type = Scalar::kUInt8;
};

struct Element {
  std::string name;
  std::size_t count = 0;
  std::vector<Property> props;
};

class Cursor {
 public:
  Cursor(const std::vector<unsigned char>& b, std::size_t pos) : b_(b), pos_(pos) {}
  const unsigned char* take(std::size_t n, const char* what) {
    if (b_.size() - pos_ < n) throw ParseError(std::string("ply: truncated ") + what, pos_);
    const unsigned char* p = b_.data() + pos_;
    pos_ += n;
    return p;
  }
  std::size_t pos() const { return pos_; }
  std::size_t remaining() const { return b_.size() - pos_; }

 private:
  const std::vector<unsigned char>& b_;
  std::size_t pos_;
};

}  // namespace

TriangleMesh parse_ply(const std::vector<unsigned char>& bytes) {
  static constexpr char kEnd[] = "end_header";
  std::size_t pos = 0;
  std::vector<Element> elements;
  bool saw_magic = false;
  bool saw_format = false;
  for (;;) {
    const std::size_t line_start = pos;
    while (pos < bytes.size() && bytes[pos] != '\n') ++pos;
    if (pos >= bytes.size()) throw ParseError("ply: header not terminated", line_start);
    std::string line(bytes.begin() + static_cast<std::ptrdiff_t>(line_start),
                     bytes.begin() + static_cast<std::ptrdiff_t>(pos));
    ++pos;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::istringstream ls(line);
    std::string kw;
    ls >> kw;
    if (!saw_magic) {
      if (kw != "ply") throw ParseError("ply: missing magic", std::size_t{0});
      saw_magic = true;
      continue;
    }
    if (kw == kEnd) break;
    if (kw == "format") {
      std::string fmt;
      ls >> fmt;
      if (fmt != "binary_little_endian") throw ParseError("ply: unsupported format '" + fmt + "'", line_start);
      saw_format = true;
    } else if (kw == "element") {
      Element e;
      long long count = -1;
      ls >> e.name >> count;
      if (!ls || count < 0) throw ParseError("ply: bad element line", line_start);
      e.count = static_cast<std::size_t>(count);
      elements.push_back(std::move(e));
    } else if (kw == "property") {
      if (elements.empty()) throw ParseError("ply: property before element", line_start);
      Property p;
      std::string type;
      ls >> type;
      if (type == "list") {
        std::string ct, it;
        ls >> ct >> it >> p.name;
        p.is_list = true;
        p.count_type = parse_scalar(ct, line_start);
        p.type = parse_scalar(it, line_start);
      } else {
        p.type = parse_scalar(type, line_start);
        ls >> p.name;
      }
      if (p.name.empty()) throw ParseError("ply: property without name", line_start);
      elements.back().props.push_back(p);
    } else if (kw == "comment" || kw == "obj_info" || kw.empty()) {
      continue;
    } else {
      throw ParseError("ply: unknown header keyword '" + kw + "'", line_start);
    }
  }
  if (!saw_format) throw ParseError("ply: missing format line", std::size_t{0});

  TriangleMesh mesh;
  Cursor cur(bytes, pos);
  for (const Element& e : elements) {
    if (e.name == "vertex") {
      int ix = -1, iy = -1, iz = -1, ir = -1, ig = -1, ib = -1;
      for (int i = 0; i < static_cast<int>(e.props.size()); ++i) {
        const auto& n = e.props[i].name;
        if (e.props[i].is_list) throw ParseError("ply: list property on vertex", cur.pos());
        if (n == "x") ix = i;
        if (n == "y") iy = i;
        if (n == "z") iz = i;
        if (n == "red") ir = i;
        if (n == "green") ig = i;
        if (n == "blue") ib = i;
      }
      if (ix < 0 || iy < 0 || iz < 0) throw ParseError("ply: vertex lacks x/y/z", cur.pos());
      const bool colored = ir >= 0 && ig >= 0 && ib >= 0;
      std::size_t stride = 0;
      for (const auto& p : e.props) stride += scalar_size(p.type);
      if (e.count > cur.remaining() / std::max<std::size_t>(stride, 1)) {
        throw ParseError("ply: vertex count exceeds payload", cur.pos());
      }
      mesh.vertices.reserve(e.count);
      if (colored) mesh.colors.reserve(e.count);
      std::vector<double> vals(e.props.size());
      for (std::size_t v = 0; v < e.count; ++v) {
        for (std::size_t i = 0; i < e.props.size(); ++i) {
          vals[i] = read_scalar(cur.take(scalar_size(e.props[i].type), "vertex data"), e.props[i].type);
        }
        mesh.vertices.emplace_back(vals[ix], vals[iy], vals[iz]);
        if (colored) {
          // uchar colors map to [0,1]; other types are taken as already normalized.
          const double k = e.props[ir].type == Scalar::kUInt8 ? 1.0 / 255.0 : 1.0;
          mesh.colors.emplace_back(vals[ir] * k, vals[ig] * k, vals[ib] * k);
        }
      }
    } else if (e.name == "face") {
      if (e.props.size() != 1 || !e.props[0].is_list) {
        throw ParseError("ply: face element must hold exactly one list property", cur.pos());
      }
      const Property& p = e.props[0];
      mesh.triangles.reserve(e.count);
      for (std::size_t f = 0; f < e.count; ++f) {
        const std::size_t at = cur.pos();
        const double n = read_scalar(cur.take(scalar_size(p.count_type), "face data"), p.count_type);
        if (n != 3) throw ParseError("ply: only triangular faces are supported", at);
        TriangleMesh::Triangle tri;
        for (int k = 0; k < 3; ++k) {
          const double idx = read_scalar(cur.take(scalar_size(p.type), "face data"), p.type);
          if (idx < 0 || idx >= static_cast<double>(mesh.vertices.size())) {
            throw ParseError("ply: face index out of range", at);
          }
          tri[k] = static_cast<std::int32_t>(idx);
        }
        mesh.triangles.push_back(tri);
      }
    } else {
      for (std::size_t i = 0; i < e.count; ++i) {
        for (const auto& p : e.props) {
          if (p.is_list) {
            const double n = read_scalar(cur.take(scalar_size(p.count_type), "element data"), p.count_type);
            cur.take(static_cast<std::size_t>(n) * scalar_size(p.type), "element data");
          } else {
            cur.take(scalar_size(p.type), "element data");
          }
        }
      }
    }
  }
  if (cur.remaining() != 0) throw ParseError("ply: trailing data after payload", cur.pos());
  return mesh;
}

TriangleMesh load_ply(const fs::path& path) {
  try {
    return parse_ply(read_file(path));
  } catch (const ParseError& e) {
    throw ParseError(path.string() + ": " + e.what());
  }
}

void save_ply(const fs::path& path, const TriangleMesh& mesh) {
  mesh.validate();
  std::ostringstream h;
  h << "ply\nformat binary_little_endian 1.0\n"
    << "element vertex " << mesh.vertices.size() << "\n"
    << "property float x\nproperty float y\nproperty float z\n";
  if (mesh.has_colors()) h << "property uchar red\nproperty uchar green\nproperty uchar blue\n";
  h << "element face " << mesh.triangles.size() << "\n"
    << "property list uchar int vertex_indices\nend_header\n";
  const std::string header = h.str();
  std::vector<unsigned char> out(header.begin(), header.end());
  auto put = [&out](const void* p, std::size_t n) {
    const auto* c = static_cast<const unsigned char*>(p);
    out.insert(out.end(), c, c + n);
  };
  for (std::size_t i = 0; i < mesh.vertices.size(); ++i) {
    for (int k = 0; k < 3; ++k) {
      const float f = static_cast<float>(mesh.vertices[i][k]);
      put(&f, 4);
    }
    if (mesh.has_colors()) {
      for (int k = 0; k < 3; ++k) {
        const double c = std::clamp(mesh.colors[i][k], 0.0, 1.0);
        const auto u = static_cast<unsigned char>(std::lround(c * 255.0));
        put(&u, 1);
      }
    }
  }
  for (const auto& t : mesh.triangles) {
    const unsigned char n = 3;
    put(&n, 1);
    for (int k = 0; k < 3; ++k) put(&t[k], 4);
  }
  write_file(path, out);
}

}  // namespace gbm::io
