#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "igr/model.hpp"

namespace igr {

// Snapshot CSV: header `x,rho,u,E,eps`, one row per cell at cell centers,
// 17 significant digits, rows sorted by x.
void write_snapshot(const Model& model, const SimState& state, const std::filesystem::path& path,
                    const std::string& metadata_echo = {});

struct SnapshotData {
  std::vector<double> x, rho, u, energy, eps;
  std::size_t rows() const { return x.size(); }
};

SnapshotData read_snapshot(const std::filesystem::path& path);

struct ColumnNorms {
  std::string column;
  double l1 = 0.0;
  double l2 = 0.0;
  double linf = 0.0;
};

// Column-wise discrepancy norms between two snapshots on identical grids
// (x columns must agree to 1e-12). L1 and L2 are cell-averaged.
std::vector<ColumnNorms> compare_csv(const std::filesystem::path& a,
                                     const std::filesystem::path& b);

}  // namespace igr
