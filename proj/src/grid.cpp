// SPDX-License-Identifier: Apache-2.0

#include "udet/grid.hpp"

#include <algorithm>
#include <cmath>

namespace udet {

std::pair<int, int> grid_cell_of(double cx, double cy, int s) {
  const auto clamp_cell = [s](double v) {
    int cell = static_cast<int>(std::floor(v * s));
    return std::clamp(cell, 0, s - 1);
  };
  return {clamp_cell(cy), clamp_cell(cx)};
}

TargetTensor encode_targets(const std::vector<GroundTruthBox>& boxes,
                            const GridConfig& cfg) {
  cfg.validate();
  TargetTensor t;
  t.s = cfg.s;
  t.cells.assign(static_cast<size_t>(cfg.s) * cfg.s, CellTarget{});

  for (const GroundTruthBox& box : boxes) {
    if (box.class_id < 0 || box.class_id >= cfg.c)
      throw ConfigError("encode_targets: class id " + std::to_string(box.class_id) +
                        " out of range for C=" + std::to_string(cfg.c));
    const auto [row, col] = grid_cell_of(box.cx, box.cy, cfg.s);
    CellTarget& cell = t.at(row, col);
    if (cell.obj) {
      ++t.collision_count;
      if (box.area() <= cell.box.area()) continue;  // keep the larger box
    }
    cell.obj = true;
    cell.x = box.cx * cfg.s - col;
    cell.y = box.cy * cfg.s - row;
    cell.w = box.w;
    cell.h = box.h;
    cell.class_id = box.class_id;
    cell.box = box;
  }
  return t;
}

int assign_responsibility(const std::vector<Box>& predicted, const Box& truth) {
  int best = 0;
  double best_iou = -1.0;
  for (size_t j = 0; j < predicted.size(); ++j) {
    const double v = iou(predicted[j], truth);
    if (v > best_iou) {
      best_iou = v;
      best = static_cast<int>(j);
    }
  }
  return best;
}

}  // namespace udet
