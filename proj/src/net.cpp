// SPDX-License-Identifier: Apache-2.0

#include "udet/net.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <limits>
#include <map>
#include <sstream>

#include "udet/kernels.hpp"
#include "udet/text.hpp"

namespace udet {

namespace {

constexpr double kLeakySlope = 0.1;

std::string activation_name(Activation a) {
  return a == Activation::kLeaky ? "leaky" : "linear";
}

Activation parse_activation(const std::string& v, int line_no) {
  if (v == "leaky") return Activation::kLeaky;
  if (v == "linear") return Activation::kLinear;
  throw ParseError("network spec line " + std::to_string(line_no) +
                   ": unknown activation '" + v + "'");
}

// key=value fields after the layer keyword.
std::map<std::string, std::string> parse_fields(const std::vector<std::string>& tokens,
                                                int line_no) {
  std::map<std::string, std::string> out;
  for (size_t i = 1; i < tokens.size(); ++i) {
    const size_t eq = tokens[i].find('=');
    if (eq == std::string::npos || eq == 0 || eq + 1 >= tokens[i].size())
      throw ParseError("network spec line " + std::to_string(line_no) +
                       ": expected key=value, got '" + tokens[i] + "'");
    out[tokens[i].substr(0, eq)] = tokens[i].substr(eq + 1);
  }
  return out;
}

int field_int(const std::map<std::string, std::string>& fields, const std::string& key,
              int line_no) {
  auto it = fields.find(key);
  if (it == fields.end())
    throw ParseError("network spec line " + std::to_string(line_no) +
                     ": missing field '" + key + "'");
  try {
    size_t pos = 0;
    const int v = std::stoi(it->second, &pos);
    if (pos != it->second.size()) throw std::invalid_argument("");
    return v;
  } catch (const std::exception&) {
    throw ParseError("network spec line " + std::to_string(line_no) +
                     ": field '" + key + "' is not an integer");
  }
}

double field_double(const std::map<std::string, std::string>& fields,
                    const std::string& key, int line_no) {
  auto it = fields.find(key);
  if (it == fields.end())
    throw ParseError("network spec line " + std::to_string(line_no) +
                     ": missing field '" + key + "'");
  try {
    size_t pos = 0;
    const double v = std::stod(it->second, &pos);
    if (pos != it->second.size()) throw std::invalid_argument("");
    return v;
  } catch (const std::exception&) {
    throw ParseError("network spec line " + std::to_string(line_no) +
                     ": field '" + key + "' is not a number");
  }
}

void expect_keys(const std::map<std::string, std::string>& fields,
                 std::initializer_list<const char*> allowed, int line_no) {
  for (const auto& [key, value] : fields) {
    if (std::find_if(allowed.begin(), allowed.end(),
                     [&](const char* a) { return key == a; }) == allowed.end())
      throw ParseError("network spec line " + std::to_string(line_no) +
                       ": unknown field '" + key + "'");
  }
}

size_t shape_numel(const std::vector<int>& shape) {
  size_t n = 1;
  for (int d : shape) n *= static_cast<size_t>(d);
  return n;
}

}  // namespace

std::string LayerSpec::to_line() const {
  std::ostringstream os;
  switch (kind) {
    case LayerKind::kConv:
      os << "conv filters=" << filters << " size=" << size << " stride=" << stride
         << " pad=" << pad << " act=" << activation_name(act);
      break;
    case LayerKind::kMaxpool:
      os << "maxpool size=" << size << " stride=" << stride;
      break;
    case LayerKind::kFullyConnected:
      os << "fc units=" << units << " act=" << activation_name(act);
      break;
    case LayerKind::kDropout:
      os << "dropout rate=" << fmt9(rate);
      break;
    case LayerKind::kFlatten:
      os << "flatten";
      break;
  }
  return os.str();
}

LayerSpec LayerSpec::parse_line(const std::string& line, int line_no) {
  const std::vector<std::string> tokens = split_ws(line);
  const auto fields = parse_fields(tokens, line_no);
  const std::string& kind = tokens[0];
  LayerSpec spec;

  if (kind == "conv") {
    expect_keys(fields, {"filters", "size", "stride", "pad", "act"}, line_no);
    spec.kind = LayerKind::kConv;
    spec.filters = field_int(fields, "filters", line_no);
    spec.size = field_int(fields, "size", line_no);
    spec.stride = field_int(fields, "stride", line_no);
    spec.pad = fields.count("pad") ? field_int(fields, "pad", line_no) : 0;
    spec.act = parse_activation(fields.count("act") ? fields.at("act") : "leaky", line_no);
    if (spec.filters < 1 || spec.size < 1 || spec.stride < 1 || spec.pad < 0)
      throw ParseError("network spec line " + std::to_string(line_no) +
                       ": conv needs filters>=1, size>=1, stride>=1, pad>=0");
  } else if (kind == "maxpool") {
    expect_keys(fields, {"size", "stride"}, line_no);
    spec.kind = LayerKind::kMaxpool;
    spec.size = field_int(fields, "size", line_no);
    spec.stride = field_int(fields, "stride", line_no);
    if (spec.size < 1 || spec.stride < 1)
      throw ParseError("network spec line " + std::to_string(line_no) +
                       ": maxpool needs size>=1 and stride>=1");
  } else if (kind == "fc" || kind == "fully_connected") {
    expect_keys(fields, {"units", "act"}, line_no);
    spec.kind = LayerKind::kFullyConnected;
    spec.units = field_int(fields, "units", line_no);
    spec.act = parse_activation(fields.count("act") ? fields.at("act") : "leaky", line_no);
    if (spec.units < 1)
      throw ParseError("network spec line " + std::to_string(line_no) +
                       ": fc needs units>=1");
  } else if (kind == "dropout") {
    expect_keys(fields, {"rate"}, line_no);
    spec.kind = LayerKind::kDropout;
    spec.rate = field_double(fields, "rate", line_no);
    if (spec.rate < 0.0 || spec.rate >= 1.0)
      throw ParseError("network spec line " + std::to_string(line_no) +
                       ": dropout rate must be in [0,1)");
  } else if (kind == "flatten") {
    expect_keys(fields, {}, line_no);
    spec.kind = LayerKind::kFlatten;
  } else {
    throw ParseError("network spec line " + std::to_string(line_no) +
                     ": unknown layer kind '" + kind + "'");
  }
  return spec;
}

NetworkSpec NetworkSpec::parse(const std::string& text) {
  NetworkSpec spec;
  bool have_input = false;
  int line_no = 0;
  for (const std::string& raw : split_lines(text)) {
    ++line_no;
    const std::string line = strip_comment(raw);
    if (line.empty()) continue;
    if (!have_input) {
      const std::vector<std::string> tokens = split_ws(line);
      if (tokens[0] != "input")
        throw ParseError("network spec line " + std::to_string(line_no) +
                         ": first line must be 'input h=.. w=.. c=..'");
      const auto fields = parse_fields(tokens, line_no);
      expect_keys(fields, {"h", "w", "c"}, line_no);
      spec.in_h = field_int(fields, "h", line_no);
      spec.in_w = field_int(fields, "w", line_no);
      spec.in_c = field_int(fields, "c", line_no);
      if (spec.in_h < 1 || spec.in_w < 1 || spec.in_c < 1)
        throw ParseError("network spec line " + std::to_string(line_no) +
                         ": input dimensions must be >= 1");
      have_input = true;
      continue;
    }
    spec.layers.push_back(LayerSpec::parse_line(line, line_no));
  }
  if (!have_input) throw ParseError("network spec: missing 'input' line");
  spec.validate();
  return spec;
}

NetworkSpec NetworkSpec::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open network spec: " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse(ss.str());
}

std::string NetworkSpec::to_text() const {
  std::ostringstream os;
  os << "input h=" << in_h << " w=" << in_w << " c=" << in_c << "\n";
  for (const LayerSpec& layer : layers) os << layer.to_line() << "\n";
  return os.str();
}

std::vector<std::vector<int>> NetworkSpec::infer_shapes() const {
  std::vector<std::vector<int>> shapes;
  std::vector<int> cur = {in_h, in_w, in_c};
  for (size_t i = 0; i < layers.size(); ++i) {
    const LayerSpec& l = layers[i];
    const std::string where = "layer " + std::to_string(i + 1) + " (" + l.to_line() + ")";
    switch (l.kind) {
      case LayerKind::kConv: {
        if (cur.size() != 3)
          throw ConfigError(where + ": conv requires an unflattened h x w x c input");
        const int h = (cur[0] + 2 * l.pad - l.size) / l.stride + 1;
        const int w = (cur[1] + 2 * l.pad - l.size) / l.stride + 1;
        if (cur[0] + 2 * l.pad < l.size || cur[1] + 2 * l.pad < l.size)
          throw ConfigError(where + ": kernel larger than padded input");
        cur = {h, w, l.filters};
        break;
      }
      case LayerKind::kMaxpool: {
        if (cur.size() != 3)
          throw ConfigError(where + ": maxpool requires an unflattened input");
        if (l.size > cur[0] || l.size > cur[1])
          throw ConfigError(where + ": pooling window larger than input");
        cur = {(cur[0] - l.size) / l.stride + 1, (cur[1] - l.size) / l.stride + 1, cur[2]};
        break;
      }
      case LayerKind::kFullyConnected: {
        if (cur.size() != 1)
          throw ConfigError(where + ": fc requires a flattened input (add a flatten layer)");
        cur = {l.units};
        break;
      }
      case LayerKind::kDropout:
        break;  // shape preserved
      case LayerKind::kFlatten:
        cur = {static_cast<int>(shape_numel(cur))};
        break;
    }
    shapes.push_back(cur);
  }
  return shapes;
}

void NetworkSpec::validate() const {
  if (layers.empty()) throw ConfigError("network spec: at least one layer required");
  infer_shapes();
  for (auto it = layers.rbegin(); it != layers.rend(); ++it) {
    if (it->kind == LayerKind::kConv || it->kind == LayerKind::kFullyConnected) {
      if (it->act != Activation::kLinear)
        throw ConfigError("network spec: the final conv/fc layer must use act=linear");
      break;
    }
  }
}

Network::Network(NetworkSpec spec, uint64_t seed) : spec_(std::move(spec)) {
  spec_.validate();
  const auto shapes = spec_.infer_shapes();
  Rng rng(seed);

  std::vector<int> in_shape = {spec_.in_h, spec_.in_w, spec_.in_c};
  for (size_t i = 0; i < spec_.layers.size(); ++i) {
    LayerState state;
    state.spec = spec_.layers[i];
    state.in_shape = in_shape;
    state.out_shape = shapes[i];

    if (state.spec.kind == LayerKind::kConv) {
      const int k = state.spec.size;
      const int cin = in_shape[2];
      const int f = state.spec.filters;
      state.weights = Tensor({f, k * k * cin});
      state.bias = Tensor({f});
      const int fan_in = k * k * cin;
      const int fan_out = k * k * f;
      const double limit = std::sqrt(6.0 / (fan_in + fan_out));
      for (size_t t = 0; t < state.weights.size(); ++t)
        state.weights[t] = rng.uniform(-limit, limit);
    } else if (state.spec.kind == LayerKind::kFullyConnected) {
      const int in_n = in_shape[0];
      const int units = state.spec.units;
      state.weights = Tensor({units, in_n});
      state.bias = Tensor({units});
      const double limit = std::sqrt(6.0 / (in_n + units));
      for (size_t t = 0; t < state.weights.size(); ++t)
        state.weights[t] = rng.uniform(-limit, limit);
    }
    if (state.weights.size() > 0) {
      state.weights_grad = Tensor(state.weights.shape());
      state.bias_grad = Tensor(state.bias.shape());
    }
    layers_.push_back(std::move(state));
    in_shape = shapes[i];
  }
}

namespace {

// Unrolls conv windows into rows: output pixel n holds its (ky, kx, cin)
// window values, matching the weight layout. Out-of-image taps are zero.
void im2col(const Tensor& in, int k, int stride, int pad, int out_h, int out_w,
            Tensor& col) {
  const int in_h = in.dim(0), in_w = in.dim(1), cin = in.dim(2);
  double* dst = col.data();
  for (int oy = 0; oy < out_h; ++oy) {
    for (int ox = 0; ox < out_w; ++ox) {
      for (int ky = 0; ky < k; ++ky) {
        const int iy = oy * stride + ky - pad;
        for (int kx = 0; kx < k; ++kx) {
          const int ix = ox * stride + kx - pad;
          if (iy < 0 || iy >= in_h || ix < 0 || ix >= in_w) {
            std::fill(dst, dst + cin, 0.0);
          } else {
            const double* src = in.data() + (static_cast<size_t>(iy) * in_w + ix) * cin;
            std::copy(src, src + cin, dst);
          }
          dst += cin;
        }
      }
    }
  }
}

void col2im(const Tensor& dcol, int k, int stride, int pad, int out_h, int out_w,
            Tensor& din) {
  const int in_h = din.dim(0), in_w = din.dim(1), cin = din.dim(2);
  const double* src = dcol.data();
  for (int oy = 0; oy < out_h; ++oy) {
    for (int ox = 0; ox < out_w; ++ox) {
      for (int ky = 0; ky < k; ++ky) {
        const int iy = oy * stride + ky - pad;
        for (int kx = 0; kx < k; ++kx) {
          const int ix = ox * stride + kx - pad;
          if (iy >= 0 && iy < in_h && ix >= 0 && ix < in_w) {
            double* dst = din.data() + (static_cast<size_t>(iy) * in_w + ix) * cin;
            for (int c = 0; c < cin; ++c) dst[c] += src[c];
          }
          src += cin;
        }
      }
    }
  }
}

}  // namespace

Tensor Network::forward_layer(LayerState& layer, const Tensor& in, bool training,
                              Rng* rng) {
  const auto& k = kernels::active();
  const LayerSpec& spec = layer.spec;

  switch (spec.kind) {
    case LayerKind::kConv: {
      const int out_h = layer.out_shape[0], out_w = layer.out_shape[1];
      const int f = spec.filters;
      const int cols = spec.size * spec.size * layer.in_shape[2];
      const size_t rows = static_cast<size_t>(out_h) * out_w;
      layer.col = Tensor({out_h * out_w, cols});
      im2col(in, spec.size, spec.stride, spec.pad, out_h, out_w, layer.col);

      Tensor out({out_h, out_w, f});
      k.gemm_nt(rows, f, cols, layer.col.data(), layer.weights.data(), out.data());
      for (size_t n = 0; n < rows; ++n) {
        double* row = out.data() + n * f;
        for (int j = 0; j < f; ++j) row[j] += layer.bias[j];
      }
      if (spec.act == Activation::kLeaky)
        k.leaky_forward(out.data(), out.data(), out.size(), kLeakySlope);
      return out;
    }

    case LayerKind::kMaxpool: {
      const int out_h = layer.out_shape[0], out_w = layer.out_shape[1];
      const int c = layer.in_shape[2];
      const int in_w = layer.in_shape[1];
      Tensor out({out_h, out_w, c});
      layer.argmax.assign(out.size(), 0);
      for (int oy = 0; oy < out_h; ++oy) {
        for (int ox = 0; ox < out_w; ++ox) {
          for (int ch = 0; ch < c; ++ch) {
            double best = -std::numeric_limits<double>::infinity();
            int best_idx = 0;
            for (int ky = 0; ky < spec.size; ++ky) {
              for (int kx = 0; kx < spec.size; ++kx) {
                const int iy = oy * spec.stride + ky;
                const int ix = ox * spec.stride + kx;
                const int idx = (iy * in_w + ix) * c + ch;
                if (in[idx] > best) {  // ties keep the first window position
                  best = in[idx];
                  best_idx = idx;
                }
              }
            }
            const size_t o = (static_cast<size_t>(oy) * out_w + ox) * c + ch;
            out[o] = best;
            layer.argmax[o] = best_idx;
          }
        }
      }
      return out;
    }

    case LayerKind::kFullyConnected: {
      const int units = spec.units;
      const int in_n = layer.in_shape[0];
      Tensor out({units});
      k.gemm_nt(1, units, in_n, in.data(), layer.weights.data(), out.data());
      for (int u = 0; u < units; ++u) out[u] += layer.bias[u];
      if (spec.act == Activation::kLeaky)
        k.leaky_forward(out.data(), out.data(), out.size(), kLeakySlope);
      return out;
    }

    case LayerKind::kDropout: {
      if (!training) return in;  // inference is the identity
      if (rng == nullptr)
        throw ConfigError("training forward through dropout requires an rng");
      Tensor out(in.shape());
      layer.keep.assign(in.size(), 1);
      const double scale = 1.0 / (1.0 - spec.rate);
      for (size_t t = 0; t < in.size(); ++t) {
        if (rng->uniform() < spec.rate) {
          layer.keep[t] = 0;
          out[t] = 0.0;
        } else {
          out[t] = in[t] * scale;
        }
      }
      return out;
    }

    case LayerKind::kFlatten:
      return in.reshaped({static_cast<int>(in.size())});
  }
  throw StateError("unreachable layer kind");
}

Tensor Network::forward(const Tensor& image, bool training, Rng* rng) {
  const std::vector<int> expected = {spec_.in_h, spec_.in_w, spec_.in_c};
  if (image.shape() != expected)
    throw ConfigError("forward: image shape does not match network input shape");

  acts_.clear();
  acts_.reserve(layers_.size() + 1);
  acts_.push_back(image);
  for (LayerState& layer : layers_)
    acts_.push_back(forward_layer(layer, acts_.back(), training, rng));
  have_cache_ = training;
  return acts_.back();
}

Tensor Network::backward_layer(LayerState& layer, const Tensor& in, const Tensor& out,
                               const Tensor& grad_out) {
  const auto& k = kernels::active();
  const LayerSpec& spec = layer.spec;

  switch (spec.kind) {
    case LayerKind::kConv: {
      const int f = spec.filters;
      const int cols = spec.size * spec.size * layer.in_shape[2];
      const size_t rows = static_cast<size_t>(layer.out_shape[0]) * layer.out_shape[1];

      Tensor dpre(grad_out.shape());
      if (spec.act == Activation::kLeaky)
        k.leaky_backward(out.data(), grad_out.data(), dpre.data(), out.size(), kLeakySlope);
      else
        dpre = grad_out;

      for (size_t n = 0; n < rows; ++n) {
        const double* row = dpre.data() + n * f;
        for (int j = 0; j < f; ++j) layer.bias_grad[j] += row[j];
      }
      k.gemm_tn(f, cols, rows, dpre.data(), layer.col.data(), layer.weights_grad.data());

      Tensor dcol({static_cast<int>(rows), cols});
      k.gemm_nn(rows, cols, f, dpre.data(), layer.weights.data(), dcol.data());
      Tensor din(layer.in_shape);
      col2im(dcol, spec.size, spec.stride, spec.pad, layer.out_shape[0],
             layer.out_shape[1], din);
      return din;
    }

    case LayerKind::kMaxpool: {
      Tensor din(layer.in_shape);
      for (size_t o = 0; o < grad_out.size(); ++o)
        din[layer.argmax[o]] += grad_out[o];
      return din;
    }

    case LayerKind::kFullyConnected: {
      const int units = spec.units;
      const int in_n = layer.in_shape[0];

      Tensor dpre(grad_out.shape());
      if (spec.act == Activation::kLeaky)
        k.leaky_backward(out.data(), grad_out.data(), dpre.data(), out.size(), kLeakySlope);
      else
        dpre = grad_out;

      Tensor din({in_n});
      for (int u = 0; u < units; ++u) {
        layer.bias_grad[u] += dpre[u];
        k.axpy(dpre[u], in.data(), layer.weights_grad.data() + static_cast<size_t>(u) * in_n,
               in_n);
        k.axpy(dpre[u], layer.weights.data() + static_cast<size_t>(u) * in_n, din.data(),
               in_n);
      }
      return din;
    }

    case LayerKind::kDropout: {
      if (layer.keep.empty()) return grad_out;  // forward ran in inference mode
      Tensor din(grad_out.shape());
      const double scale = 1.0 / (1.0 - spec.rate);
      for (size_t t = 0; t < grad_out.size(); ++t)
        din[t] = layer.keep[t] ? grad_out[t] * scale : 0.0;
      return din;
    }

    case LayerKind::kFlatten:
      return grad_out.reshaped(layer.in_shape);
  }
  throw StateError("unreachable layer kind");
}

Tensor Network::backward(const Tensor& grad_output) {
  if (!have_cache_)
    throw StateError("backward called without a preceding training-mode forward");
  if (grad_output.size() != acts_.back().size())
    throw ConfigError("backward: gradient shape does not match network output");

  Tensor grad = grad_output;
  for (size_t i = layers_.size(); i-- > 0;)
    grad = backward_layer(layers_[i], acts_[i], acts_[i + 1], grad);
  return grad;
}

void Network::zero_grads() {
  for (LayerState& layer : layers_) {
    layer.weights_grad.fill(0.0);
    layer.bias_grad.fill(0.0);
  }
}

void Network::scale_grads(double factor) {
  for (LayerState& layer : layers_) {
    for (size_t t = 0; t < layer.weights_grad.size(); ++t) layer.weights_grad[t] *= factor;
    for (size_t t = 0; t < layer.bias_grad.size(); ++t) layer.bias_grad[t] *= factor;
  }
}

std::vector<Tensor*> Network::parameters() {
  std::vector<Tensor*> out;
  for (LayerState& layer : layers_) {
    if (layer.weights.size() > 0) {
      out.push_back(&layer.weights);
      out.push_back(&layer.bias);
    }
  }
  return out;
}

std::vector<const Tensor*> Network::parameters() const {
  std::vector<const Tensor*> out;
  for (const LayerState& layer : layers_) {
    if (layer.weights.size() > 0) {
      out.push_back(&layer.weights);
      out.push_back(&layer.bias);
    }
  }
  return out;
}

std::vector<Tensor*> Network::gradients() {
  std::vector<Tensor*> out;
  for (LayerState& layer : layers_) {
    if (layer.weights.size() > 0) {
      out.push_back(&layer.weights_grad);
      out.push_back(&layer.bias_grad);
    }
  }
  return out;
}

size_t Network::parameter_count() const {
  size_t n = 0;
  for (const Tensor* t : parameters()) n += t->size();
  return n;
}

void Network::save_checkpoint(const std::filesystem::path& path) const {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write checkpoint: " + path.string());

  const std::string spec_text = spec_.to_text();
  out << kCheckpointMagic << "\n";
  out << "spec " << spec_text.size() << "\n";
  out << spec_text;
  out << "params " << parameter_count() << "\n";
  for (const Tensor* t : parameters()) {
    for (size_t i = 0; i < t->size(); ++i) {
      const uint64_t bits = std::bit_cast<uint64_t>((*t)[i]);
      char bytes[8];
      for (int b = 0; b < 8; ++b) bytes[b] = static_cast<char>((bits >> (8 * b)) & 0xff);
      out.write(bytes, 8);
    }
  }
  if (!out) throw IoError("checkpoint write failed: " + path.string());
}

Network Network::load_checkpoint(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open checkpoint: " + path.string());

  std::string magic;
  std::getline(in, magic);
  if (magic != kCheckpointMagic)
    throw ParseError("checkpoint " + path.string() + ": bad magic '" + magic + "'");

  std::string header;
  std::getline(in, header);
  size_t spec_bytes = 0;
  if (std::sscanf(header.c_str(), "spec %zu", &spec_bytes) != 1)
    throw ParseError("checkpoint " + path.string() + ": malformed spec header");
  std::string spec_text(spec_bytes, '\0');
  in.read(spec_text.data(), static_cast<std::streamsize>(spec_bytes));
  if (in.gcount() != static_cast<std::streamsize>(spec_bytes))
    throw ParseError("checkpoint " + path.string() + ": truncated spec text");

  NetworkSpec spec = NetworkSpec::parse(spec_text);
  if (spec.to_text() != spec_text)
    throw ParseError("checkpoint " + path.string() + ": spec text is not canonical");

  std::getline(in, header);
  size_t count = 0;
  if (std::sscanf(header.c_str(), "params %zu", &count) != 1)
    throw ParseError("checkpoint " + path.string() + ": malformed params header");

  Network net(spec, /*seed=*/0);
  if (count != net.parameter_count())
    throw ParseError("checkpoint " + path.string() + ": parameter count " +
                     std::to_string(count) + " does not match spec (" +
                     std::to_string(net.parameter_count()) + ")");

  for (Tensor* t : net.parameters()) {
    for (size_t i = 0; i < t->size(); ++i) {
      char bytes[8];
      in.read(bytes, 8);
      if (in.gcount() != 8)
        throw ParseError("checkpoint " + path.string() + ": truncated parameter data");
      uint64_t bits = 0;
      for (int b = 0; b < 8; ++b)
        bits |= static_cast<uint64_t>(static_cast<unsigned char>(bytes[b])) << (8 * b);
      (*t)[i] = std::bit_cast<double>(bits);
    }
  }
  return net;
}

}  // namespace udet
