// SPDX-License-Identifier: Apache-2.0

#include "udet/loss.hpp"

#include <cmath>

#include "udet/decode.hpp"
#include "udet/errors.hpp"

namespace udet {

LossResult yolo_loss(const Tensor& pred, const TargetTensor& targets,
                     const GridConfig& cfg) {
  cfg.validate();
  if (pred.size() != static_cast<size_t>(cfg.output_size()))
    throw ConfigError("yolo_loss: prediction tensor has " + std::to_string(pred.size()) +
                      " values, expected " + std::to_string(cfg.output_size()));
  if (targets.s != cfg.s)
    throw ConfigError("yolo_loss: target grid size mismatch");
  if (!pred.all_finite())
    throw NumericError("yolo_loss: prediction tensor contains non-finite values");

  LossResult res;
  res.grad = Tensor(pred.shape());
  res.responsible.assign(static_cast<size_t>(cfg.s) * cfg.s, -1);
  res.conf_target.assign(static_cast<size_t>(cfg.s) * cfg.s, 0.0);

  const double lc = cfg.lambda_coord;
  const double ln = cfg.lambda_noobj;
  LossTerms& t = res.terms;

  for (int row = 0; row < cfg.s; ++row) {
    for (int col = 0; col < cfg.s; ++col) {
      const size_t cell_idx = static_cast<size_t>(row) * cfg.s + col;
      const CellTarget& cell = targets.at(row, col);
      const size_t base = pred_base(cfg, row, col);
      const double* p = pred.data() + base;
      double* g = res.grad.data() + base;

      int responsible = -1;
      if (cell.obj) {
        std::vector<Box> boxes(cfg.b);
        for (int j = 0; j < cfg.b; ++j) boxes[j] = decoded_box(pred, cfg, row, col, j);
        const Box truth = cell.box.corners();
        responsible = assign_responsibility(boxes, truth);
        res.responsible[cell_idx] = responsible;
        res.conf_target[cell_idx] = iou(boxes[responsible], truth);
      }

      for (int j = 0; j < cfg.b; ++j) {
        const size_t off = pred_box_offset(j);
        const double conf = p[off + 4];
        if (j == responsible) {
          const double dx = cell.x - p[off + 0];
          const double dy = cell.y - p[off + 1];
          const double dw = std::sqrt(cell.w) - p[off + 2];
          const double dh = std::sqrt(cell.h) - p[off + 3];
          t.coord_xy += lc * (dx * dx + dy * dy);
          t.coord_wh += lc * (dw * dw + dh * dh);
          g[off + 0] = -2.0 * lc * dx;
          g[off + 1] = -2.0 * lc * dy;
          g[off + 2] = -2.0 * lc * dw;
          g[off + 3] = -2.0 * lc * dh;

          const double dc = res.conf_target[cell_idx] - conf;
          t.obj_conf += dc * dc;
          g[off + 4] = -2.0 * dc;
        } else {
          t.noobj_conf += ln * conf * conf;
          g[off + 4] = 2.0 * ln * conf;
        }
      }

      if (cell.obj) {
        for (int k = 0; k < cfg.c; ++k) {
          const double target = (k == cell.class_id) ? 1.0 : 0.0;
          const double dp = target - p[pred_class_offset(cfg, k)];
          t.class_prob += dp * dp;
          g[pred_class_offset(cfg, k)] = -2.0 * dp;
        }
      }
    }
  }

  t.total = t.coord_xy + t.coord_wh + t.obj_conf + t.noobj_conf + t.class_prob;
  return res;
}

}  // namespace udet
