#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "mdem/losses.hpp"
#include "mdem/network.hpp"
#include "mdem/train.hpp"

namespace mdem::io {

/// Write content to path via a temporary file and rename, so readers never
/// observe a partial file.
void write_text_atomic(const std::string& path, const std::string& content);

/// Field table `x,y,ux,uy,p11,p12,p21,p22,psi`, one row per point, values
/// printed with 17 significant digits so doubles round-trip exactly.
void write_fields_csv(const std::string& path, const FieldSnapshot& snap);
FieldSnapshot read_fields_csv(const std::string& path);

/// Loss history `iter,total,pi,mse_r,mse_t,mse_u,mse_p,phase` with phase
/// spelled adam or lbfgs.
void write_history_csv(const std::string& path,
                       const std::vector<HistoryRow>& rows);

void write_triangles_csv(const std::string& path,
                         const std::vector<std::array<int, 3>>& triangles);
std::vector<std::array<int, 3>> read_triangles_csv(const std::string& path);

/// Legacy ASCII VTK unstructured grid: points, triangle cells, displacement
/// vectors, and scalar arrays for the stress components and energy density.
void write_vtk(const std::string& path, const FieldSnapshot& snap,
               const std::vector<std::array<int, 3>>& triangles);

/// Versioned binary parameter checkpoint. Layout (all little-endian):
/// 8-byte magic "MDEMNET1", u32 version, u32 width count, i32 widths,
/// u32 activation, u64 seed, u64 parameter count, f64 parameters.
void write_checkpoint(const std::string& path, const NetworkParams& params,
                      uint64_t seed);
NetworkParams read_checkpoint(const std::string& path,
                              uint64_t* seed = nullptr);

/// FNV-1a over the raw coordinate bytes, for cheap point-set identity checks.
uint64_t points_hash(const std::vector<Vec2>& points);

}  // namespace mdem::io
