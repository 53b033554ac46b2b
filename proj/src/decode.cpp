// SPDX-License-Identifier: Apache-2.0

#include "udet/decode.hpp"

#include <algorithm>

namespace udet {

Box decoded_box(const Tensor& pred, const GridConfig& cfg, int row, int col, int j) {
  const double* p = pred.data() + pred_base(cfg, row, col) + pred_box_offset(j);
  const double cx = (col + p[0]) / cfg.s;
  const double cy = (row + p[1]) / cfg.s;
  const double w = p[2] * p[2];
  const double h = p[3] * p[3];
  return Box::from_center(cx, cy, w, h);
}

std::vector<Detection> decode_predictions(const Tensor& pred, const GridConfig& cfg,
                                          double score_threshold) {
  cfg.validate();
  if (pred.size() != static_cast<size_t>(cfg.output_size()))
    throw ConfigError("decode: prediction tensor has " + std::to_string(pred.size()) +
                      " values, expected " + std::to_string(cfg.output_size()));

  std::vector<Detection> out;
  for (int row = 0; row < cfg.s; ++row) {
    for (int col = 0; col < cfg.s; ++col) {
      const double* cell = pred.data() + pred_base(cfg, row, col);
      for (int j = 0; j < cfg.b; ++j) {
        const double conf = cell[pred_box_offset(j) + 4];
        const Box box = decoded_box(pred, cfg, row, col, j);
        for (int k = 0; k < cfg.c; ++k) {
          const double score = cell[pred_class_offset(cfg, k)] * conf;
          if (score >= score_threshold) {
            out.push_back({k, score, box.x_min, box.y_min, box.x_max, box.y_max});
          }
        }
      }
    }
  }
  return out;
}

std::vector<Detection> nms(const std::vector<Detection>& dets, double iou_threshold) {
  std::vector<size_t> order(dets.size());
  for (size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(), [&](size_t a, size_t b) {
    return dets[a].score > dets[b].score;
  });

  std::vector<Detection> kept;
  std::vector<char> suppressed(dets.size(), 0);
  for (size_t oi = 0; oi < order.size(); ++oi) {
    const size_t i = order[oi];
    if (suppressed[i]) continue;
    kept.push_back(dets[i]);
    for (size_t oj = oi + 1; oj < order.size(); ++oj) {
      const size_t j = order[oj];
      if (suppressed[j] || dets[j].class_id != dets[i].class_id) continue;
      if (iou(dets[i].box(), dets[j].box()) > iou_threshold) suppressed[j] = 1;
    }
  }
  return kept;
}

}  // namespace udet
