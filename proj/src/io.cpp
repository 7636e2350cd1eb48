#include "mdem/io.hpp"

#include <cstdio>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "mdem/errors.hpp"

namespace mdem::io {

namespace {

void append_g17(std::string& out, double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  out += buf;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<std::vector<double>> read_numeric_csv(const std::string& path,
                                                  const std::string& header,
                                                  size_t columns) {
  const std::string text = read_file(path);
  std::vector<std::vector<double>> rows;
  size_t pos = 0;
  bool first = true;
  while (pos < text.size()) {
    size_t end = text.find('\n', pos);
    if (end == std::string::npos) end = text.size();
    std::string line = text.substr(pos, end - pos);
    pos = end + 1;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (first) {
      if (line != header)
        throw std::runtime_error(path + ": expected header '" + header + "'");
      first = false;
      continue;
    }
    std::vector<double> row;
    const char* p = line.c_str();
    while (true) {
      char* next = nullptr;
      const double v = std::strtod(p, &next);
      if (next == p)
        throw std::runtime_error(path + ": bad number in '" + line + "'");
      row.push_back(v);
      p = next;
      if (*p == ',') {
        ++p;
      } else if (*p == '\0') {
        break;
      } else {
        throw std::runtime_error(path + ": unexpected character in '" + line + "'");
      }
    }
    if (row.size() != columns)
      throw std::runtime_error(path + ": expected " + std::to_string(columns) +
                               " columns in '" + line + "'");
    rows.push_back(std::move(row));
  }
  if (first) throw std::runtime_error(path + ": empty file");
  return rows;
}

template <class T>
void append_raw(std::string& out, const T& v) {
  const char* p = reinterpret_cast<const char*>(&v);
  out.append(p, sizeof(T));
}

template <class T>
T take_raw(const std::string& data, size_t& pos, const std::string& path) {
  if (pos + sizeof(T) > data.size())
    throw std::runtime_error(path + ": truncated checkpoint");
  T v;
  std::memcpy(&v, data.data() + pos, sizeof(T));
  pos += sizeof(T);
  return v;
}

}  // namespace

void write_text_atomic(const std::string& path, const std::string& content) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + tmp);
    out << content;
    if (!out) throw std::runtime_error("short write to " + tmp);
  }
  std::filesystem::rename(tmp, path);
}

void write_fields_csv(const std::string& path, const FieldSnapshot& snap) {
  std::string out = "x,y,ux,uy,p11,p12,p21,p22,psi\n";
  for (size_t i = 0; i < snap.X.size(); ++i) {
    const double row[9] = {snap.X[i].x,   snap.X[i].y,   snap.u[i].x,
                           snap.u[i].y,   snap.P[i].a11, snap.P[i].a12,
                           snap.P[i].a21, snap.P[i].a22, snap.psi[i]};
    for (int c = 0; c < 9; ++c) {
      if (c) out += ',';
      append_g17(out, row[c]);
    }
    out += '\n';
  }
  write_text_atomic(path, out);
}

FieldSnapshot read_fields_csv(const std::string& path) {
  const auto rows = read_numeric_csv(path, "x,y,ux,uy,p11,p12,p21,p22,psi", 9);
  FieldSnapshot snap;
  snap.X.reserve(rows.size());
  for (const auto& r : rows) {
    snap.X.push_back({r[0], r[1]});
    snap.u.push_back({r[2], r[3]});
    snap.P.push_back({r[4], r[5], r[6], r[7]});
    snap.psi.push_back(r[8]);
  }
  return snap;
}

void write_history_csv(const std::string& path,
                       const std::vector<HistoryRow>& rows) {
  std::string out = "iter,total,pi,mse_r,mse_t,mse_u,mse_p,phase\n";
  for (const HistoryRow& r : rows) {
    out += std::to_string(r.iter);
    const double cols[6] = {r.loss.total, r.loss.pi,    r.loss.mse_r,
                            r.loss.mse_t, r.loss.mse_u, r.loss.mse_p};
    for (double v : cols) {
      out += ',';
      append_g17(out, v);
    }
    out += r.phase == 'a' ? ",adam\n" : ",lbfgs\n";
  }
  write_text_atomic(path, out);
}

void write_triangles_csv(const std::string& path,
                         const std::vector<std::array<int, 3>>& triangles) {
  std::string out = "a,b,c\n";
  for (const auto& t : triangles) {
    out += std::to_string(t[0]);
    out += ',';
    out += std::to_string(t[1]);
    out += ',';
    out += std::to_string(t[2]);
    out += '\n';
  }
  write_text_atomic(path, out);
}

std::vector<std::array<int, 3>> read_triangles_csv(const std::string& path) {
  const auto rows = read_numeric_csv(path, "a,b,c", 3);
  std::vector<std::array<int, 3>> tris;
  tris.reserve(rows.size());
  for (const auto& r : rows)
    tris.push_back({static_cast<int>(r[0]), static_cast<int>(r[1]),
                    static_cast<int>(r[2])});
  return tris;
}

void write_vtk(const std::string& path, const FieldSnapshot& snap,
               const std::vector<std::array<int, 3>>& triangles) {
  std::string out = "# vtk DataFile Version 3.0\n";
  out += "displacement, first Piola-Kirchhoff stress, energy density\n";
  out += "ASCII\nDATASET UNSTRUCTURED_GRID\n";

  out += "POINTS " + std::to_string(snap.X.size()) + " double\n";
  for (const Vec2& p : snap.X) {
    append_g17(out, p.x);
    out += ' ';
    append_g17(out, p.y);
    out += " 0\n";
  }

  out += "CELLS " + std::to_string(triangles.size()) + " " +
         std::to_string(4 * triangles.size()) + "\n";
  for (const auto& t : triangles)
    out += "3 " + std::to_string(t[0]) + " " + std::to_string(t[1]) + " " +
           std::to_string(t[2]) + "\n";
  out += "CELL_TYPES " + std::to_string(triangles.size()) + "\n";
  for (size_t i = 0; i < triangles.size(); ++i) out += "5\n";

  out += "POINT_DATA " + std::to_string(snap.X.size()) + "\n";
  out += "VECTORS displacement double\n";
  for (const Vec2& u : snap.u) {
    append_g17(out, u.x);
    out += ' ';
    append_g17(out, u.y);
    out += " 0\n";
  }
  const auto scalar = [&](const std::string& name, auto&& get) {
    out += "SCALARS " + name + " double 1\nLOOKUP_TABLE default\n";
    for (size_t i = 0; i < snap.X.size(); ++i) {
      append_g17(out, get(i));
      out += '\n';
    }
  };
  scalar("p11", [&](size_t i) { return snap.P[i].a11; });
  scalar("p12", [&](size_t i) { return snap.P[i].a12; });
  scalar("p21", [&](size_t i) { return snap.P[i].a21; });
  scalar("p22", [&](size_t i) { return snap.P[i].a22; });
  scalar("psi", [&](size_t i) { return snap.psi[i]; });

  write_text_atomic(path, out);
}

void write_checkpoint(const std::string& path, const NetworkParams& params,
                      uint64_t seed) {
  std::string out = "MDEMNET1";
  append_raw<uint32_t>(out, 1);
  append_raw<uint32_t>(out, static_cast<uint32_t>(params.shape.widths.size()));
  for (int w : params.shape.widths) append_raw<int32_t>(out, w);
  append_raw<uint32_t>(out, static_cast<uint32_t>(params.activation));
  append_raw<uint64_t>(out, seed);
  append_raw<uint64_t>(out, params.theta.size());
  for (double v : params.theta) append_raw<double>(out, v);
  write_text_atomic(path, out);
}

NetworkParams read_checkpoint(const std::string& path, uint64_t* seed) {
  const std::string data = read_file(path);
  if (data.size() < 8 || data.compare(0, 8, "MDEMNET1") != 0)
    throw std::runtime_error(path + ": not a parameter checkpoint");
  size_t pos = 8;
  const uint32_t version = take_raw<uint32_t>(data, pos, path);
  if (version != 1)
    throw std::runtime_error(path + ": unsupported checkpoint version " +
                             std::to_string(version));
  NetworkParams params;
  const uint32_t nw = take_raw<uint32_t>(data, pos, path);
  for (uint32_t i = 0; i < nw; ++i)
    params.shape.widths.push_back(take_raw<int32_t>(data, pos, path));
  params.activation =
      static_cast<Activation>(take_raw<uint32_t>(data, pos, path));
  const uint64_t stored_seed = take_raw<uint64_t>(data, pos, path);
  if (seed) *seed = stored_seed;
  const uint64_t nt = take_raw<uint64_t>(data, pos, path);
  params.theta.resize(nt);
  for (uint64_t i = 0; i < nt; ++i)
    params.theta[i] = take_raw<double>(data, pos, path);
  if (pos != data.size())
    throw std::runtime_error(path + ": trailing bytes in checkpoint");
  return params;
}

uint64_t points_hash(const std::vector<Vec2>& points) {
  uint64_t h = 14695981039346656037ull;
  const auto mix = [&h](double v) {
    unsigned char bytes[sizeof(double)];
    std::memcpy(bytes, &v, sizeof(double));
    for (unsigned char b : bytes) {
      h ^= b;
      h *= 1099511628211ull;
    }
  };
  for (const Vec2& p : points) {
    mix(p.x);
    mix(p.y);
  }
  return h;
}

}  // namespace mdem::io
