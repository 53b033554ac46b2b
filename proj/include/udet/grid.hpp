// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <utility>
#include <vector>

#include "udet/errors.hpp"
#include "udet/geometry.hpp"

namespace udet {

// Detection geometry: S x S grid, B boxes per cell, C classes, plus the
// loss weights for coordinate and no-object confidence terms.
struct GridConfig {
  int s = 7;
  int b = 2;
  int c = 20;
  double lambda_coord = 5.0;
  double lambda_noobj = 0.5;

  int channels() const { return b * 5 + c; }
  int output_size() const { return s * s * channels(); }

  void validate() const {
    if (s < 1 || b < 1 || c < 1)
      throw ConfigError("grid config: S, B and C must all be >= 1");
    if (lambda_coord <= 0.0 || lambda_noobj <= 0.0)
      throw ConfigError("grid config: lambda weights must be > 0");
  }
};

// One annotated object. Center and extent are fractions of the image; the
// center is always inside [0,1], the extent in (0,1].
struct GroundTruthBox {
  int class_id = 0;
  double cx = 0.0;
  double cy = 0.0;
  double w = 0.0;
  double h = 0.0;

  Box corners() const { return Box::from_center(cx, cy, w, h); }
  double area() const { return w * h; }
};

// Encoded training target for one grid cell. x/y are the center offset
// within the cell in [0,1); w/h are image-fraction extents. The source box
// is kept so the loss can recompute IOU-based confidence targets.
struct CellTarget {
  bool obj = false;
  double x = 0.0;
  double y = 0.0;
  double w = 0.0;
  double h = 0.0;
  int class_id = -1;
  GroundTruthBox box;
};

struct TargetTensor {
  int s = 0;
  std::vector<CellTarget> cells;  // row-major, s*s entries
  int collision_count = 0;        // boxes displaced by a larger one in the same cell

  CellTarget& at(int row, int col) { return cells[static_cast<size_t>(row) * s + col]; }
  const CellTarget& at(int row, int col) const {
    return cells[static_cast<size_t>(row) * s + col];
  }
};

// Cell containing a normalized center point. Centers on a cell boundary
// belong to the lower-index cell; cx or cy of exactly 1.0 clamps to S-1.
std::pair<int, int> grid_cell_of(double cx, double cy, int s);

// Maps each box to its center cell. When two boxes land in the same cell the
// larger-area one wins and the collision counter increments.
TargetTensor encode_targets(const std::vector<GroundTruthBox>& boxes,
                            const GridConfig& cfg);

// Index of the predictor with the highest IOU against the ground truth;
// ties break toward the lowest index.
int assign_responsibility(const std::vector<Box>& predicted, const Box& truth);

}  // namespace udet
