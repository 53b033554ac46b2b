// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <vector>

#include "udet/grid.hpp"
#include "udet/tensor.hpp"

namespace udet {

// The five summed terms of the detection loss, plus their total.
struct LossTerms {
  double total = 0.0;
  double coord_xy = 0.0;    // weighted by lambda_coord
  double coord_wh = 0.0;    // weighted by lambda_coord
  double obj_conf = 0.0;    // responsible-box confidence vs IOU target
  double noobj_conf = 0.0;  // weighted by lambda_noobj
  double class_prob = 0.0;
};

struct LossResult {
  LossTerms terms;
  Tensor grad;  // d(total)/d(prediction), same shape as the prediction

  // Per cell (row-major): responsible box index, -1 where no object; and the
  // IOU confidence target used for that cell (0 where no object). Exposed so
  // callers can inspect or freeze the assignment.
  std::vector<int> responsible;
  std::vector<double> conf_target;
};

// Sum-squared detection loss over one image.
//
// Responsibility inside each object cell goes to the box slot with the
// highest IOU against the ground truth, recomputed from the current
// predictions on every call. The confidence target for that slot is the same
// IOU, treated as a constant: no gradient flows through it. Every slot not
// marked responsible, including the losing slots of object cells, pays the
// lambda_noobj term. Width/height slots hold square roots and are compared
// against sqrt(w), sqrt(h) directly.
LossResult yolo_loss(const Tensor& pred, const TargetTensor& targets,
                     const GridConfig& cfg);

}  // namespace udet
