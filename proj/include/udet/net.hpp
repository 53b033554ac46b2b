// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "udet/rng.hpp"
#include "udet/tensor.hpp"

namespace udet {

enum class Activation { kLinear, kLeaky };

enum class LayerKind { kConv, kMaxpool, kFullyConnected, kDropout, kFlatten };

struct LayerSpec {
  LayerKind kind = LayerKind::kConv;
  int filters = 0;   // conv
  int size = 0;      // conv, maxpool
  int stride = 0;    // conv, maxpool
  int pad = 0;       // conv
  int units = 0;     // fc
  double rate = 0.0; // dropout, in [0,1)
  Activation act = Activation::kLinear;  // conv, fc

  std::string to_line() const;
  static LayerSpec parse_line(const std::string& line, int line_no);
};

// Ordered layer stack plus the input image shape. The text form is one layer
// per line with an `input h=.. w=.. c=..` header; to_text() is canonical
// (fixed key order, single spaces) so specs can be compared byte-for-byte.
struct NetworkSpec {
  int in_h = 0;
  int in_w = 0;
  int in_c = 0;
  std::vector<LayerSpec> layers;

  static NetworkSpec parse(const std::string& text);
  static NetworkSpec load(const std::filesystem::path& path);
  std::string to_text() const;

  // Output shape of every layer in order. Throws ConfigError when
  // consecutive shapes do not compose.
  std::vector<std::vector<int>> infer_shapes() const;

  // infer_shapes plus the structural rules: at least one layer, and the last
  // conv/fc layer must use linear activation.
  void validate() const;

  std::vector<int> output_shape() const { return infer_shapes().back(); }
};

// Leaky rectifier used everywhere except final layers. The derivative at 0
// is fixed to the slope.
inline double leaky_relu(double x) { return x > 0.0 ? x : 0.1 * x; }
inline double leaky_relu_grad(double x) { return x > 0.0 ? 1.0 : 0.1; }

// A trainable network: parameters, forward with activation recording, and
// reverse-mode backward producing parameter gradients. Value-semantic;
// copies are independent replicas.
class Network {
 public:
  Network(NetworkSpec spec, uint64_t seed);

  const NetworkSpec& spec() const { return spec_; }

  // Runs the stack on one image (shape {h, w, c}). In training mode the
  // activations needed by backward are recorded and dropout layers consume
  // the rng; in inference mode dropout is the identity.
  Tensor forward(const Tensor& image, bool training = false, Rng* rng = nullptr);

  // Gradient of the recorded forward pass. grad_output has the shape of the
  // network output; parameter gradients accumulate (zero_grads to reset).
  // Returns the gradient with respect to the input image.
  Tensor backward(const Tensor& grad_output);

  void zero_grads();
  void scale_grads(double factor);

  // Parameter and gradient tensors in declaration order (weights, bias per
  // parameterized layer).
  std::vector<Tensor*> parameters();
  std::vector<const Tensor*> parameters() const;
  std::vector<Tensor*> gradients();
  size_t parameter_count() const;

  void save_checkpoint(const std::filesystem::path& path) const;
  static Network load_checkpoint(const std::filesystem::path& path);

 private:
  struct LayerState {
    LayerSpec spec;
    std::vector<int> in_shape;
    std::vector<int> out_shape;
    Tensor weights, bias;
    Tensor weights_grad, bias_grad;
    // Training-pass caches.
    Tensor col;                // conv: im2col of the layer input
    std::vector<int> argmax;   // maxpool: winning input index per output
    std::vector<char> keep;    // dropout: survival mask
  };

  Tensor forward_layer(LayerState& layer, const Tensor& in, bool training, Rng* rng);
  Tensor backward_layer(LayerState& layer, const Tensor& in, const Tensor& out,
                        const Tensor& grad_out);

  NetworkSpec spec_;
  std::vector<LayerState> layers_;
  std::vector<Tensor> acts_;  // acts_[0] = input, acts_[i+1] = layer i output
  bool have_cache_ = false;
};

// Weight checkpoint: "UDET1" magic, canonical spec text, parameters as
// little-endian 64-bit floats in declaration order.
inline constexpr const char* kCheckpointMagic = "UDET1";

}  // namespace udet
