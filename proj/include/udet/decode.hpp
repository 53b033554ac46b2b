// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <vector>

#include "udet/geometry.hpp"
#include "udet/grid.hpp"
#include "udet/tensor.hpp"

namespace udet {

// One decoded box with its class-specific confidence score.
struct Detection {
  int class_id = 0;
  double score = 0.0;
  double x_min = 0.0;
  double y_min = 0.0;
  double x_max = 0.0;
  double y_max = 0.0;

  Box box() const { return {x_min, y_min, x_max, y_max}; }
};

// Prediction tensor layout, per cell: B slots of (x, y, sqrt_w, sqrt_h,
// conf), then C class scores. Cells are row-major.
inline size_t pred_base(const GridConfig& cfg, int row, int col) {
  return (static_cast<size_t>(row) * cfg.s + col) * cfg.channels();
}
inline size_t pred_box_offset(int j) { return static_cast<size_t>(j) * 5; }
inline size_t pred_class_offset(const GridConfig& cfg, int k) {
  return static_cast<size_t>(cfg.b) * 5 + k;
}

// Box slot j of a cell in absolute image fractions. The stored width and
// height slots hold square roots, so extents come back non-negative.
Box decoded_box(const Tensor& pred, const GridConfig& cfg, int row, int col, int j);

// Every (cell, box, class) combination whose score = class_score * conf
// reaches the threshold. Raw outputs are used as-is; negative products fall
// below any threshold >= 0.
std::vector<Detection> decode_predictions(const Tensor& pred, const GridConfig& cfg,
                                          double score_threshold);

// Greedy per-class suppression: keep by descending score, drop later boxes
// of the same class with IOU strictly above the threshold. Result is sorted
// by descending score; ties keep input order.
std::vector<Detection> nms(const std::vector<Detection>& dets, double iou_threshold);

}  // namespace udet
