// Copyright 2026 The nnfuzz Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "nnfuzz/kernels.h"

#include <algorithm>
#include <cmath>
#include <limits>

namespace nnfuzz::kernels {
namespace {

// Below this many multiply-adds a parallel region costs more than it saves.
constexpr long kMinParallelWork = 1L << 14;

}  // namespace

ConvGeometry MakeConvGeometry(const LayerSpec& spec, MapDims in) {
  ConvGeometry g;
  g.in = in;
  g.kh = spec.kh;
  g.kw = spec.kw;
  g.stride = spec.stride;
  g.out.c = spec.out_ch;
  if (spec.padding == Padding::kSame) {
    g.out.h = (in.h - 1) / spec.stride + 1;
    g.out.w = (in.w - 1) / spec.stride + 1;
    const int pad_h = std::max((g.out.h - 1) * spec.stride + spec.kh - in.h, 0);
    const int pad_w = std::max((g.out.w - 1) * spec.stride + spec.kw - in.w, 0);
    g.pad_top = pad_h / 2;
    g.pad_left = pad_w / 2;
  } else {
    g.out.h = (in.h - spec.kh) / spec.stride + 1;
    g.out.w = (in.w - spec.kw) / spec.stride + 1;
  }
  return g;
}

double Activate(Activation act, double x) {
  switch (act) {
    case Activation::kNone: return x;
    case Activation::kRelu: return x > 0.0 ? x : 0.0;
    case Activation::kTanh: return std::tanh(x);
    case Activation::kSigmoid: return 1.0 / (1.0 + std::exp(-x));
  }
  return x;
}

void Dense(std::span<const double> in, std::span<const float> kernel,
           std::span<const float> bias, Activation act, std::span<double> out) {
  const long n_out = static_cast<long>(out.size());
  const std::size_t n_in = in.size();
  const double* x = in.data();
  const float* w = kernel.data();
#pragma omp parallel for schedule(static) if (n_out * static_cast<long>(n_in) > kMinParallelWork)
  for (long o = 0; o < n_out; ++o) {
    const float* row = w + o * n_in;
    double acc = bias[o];
    for (std::size_t i = 0; i < n_in; ++i) acc += row[i] * x[i];
    out[o] = Activate(act, acc);
  }
}

void Conv2d(std::span<const double> in, const ConvGeometry& g,
            std::span<const float> kernel, std::span<const float> bias,
            Activation act, std::span<double> out) {
  const int ic_n = g.in.c;
  const long work = static_cast<long>(g.out.h) * g.out.w * g.out.c * g.kh * g.kw * ic_n;
#pragma omp parallel for collapse(2) schedule(static) if (work > kMinParallelWork)
  for (int oy = 0; oy < g.out.h; ++oy) {
    for (int ox = 0; ox < g.out.w; ++ox) {
      const int y0 = oy * g.stride - g.pad_top;
      const int x0 = ox * g.stride - g.pad_left;
      double* dst = out.data() + (static_cast<std::size_t>(oy) * g.out.w + ox) * g.out.c;
      for (int oc = 0; oc < g.out.c; ++oc) {
        const float* w = kernel.data() + static_cast<std::size_t>(oc) * ic_n * g.kh * g.kw;
        double acc = bias[oc];
        for (int ky = 0; ky < g.kh; ++ky) {
          const int iy = y0 + ky;
          if (iy < 0 || iy >= g.in.h) continue;
          for (int kx = 0; kx < g.kw; ++kx) {
            const int ix = x0 + kx;
            if (ix < 0 || ix >= g.in.w) continue;
            const double* src = in.data() + (static_cast<std::size_t>(iy) * g.in.w + ix) * ic_n;
            for (int ic = 0; ic < ic_n; ++ic) {
              acc += w[(ic * g.kh + ky) * g.kw + kx] * src[ic];
            }
          }
        }
        dst[oc] = Activate(act, acc);
      }
    }
  }
}

void MaxPool2d(std::span<const double> in, MapDims in_dims, int kh, int kw, int stride,
               MapDims out_dims, std::span<double> out) {
  const long work = static_cast<long>(out_dims.h) * out_dims.w * out_dims.c * kh * kw;
#pragma omp parallel for collapse(2) schedule(static) if (work > kMinParallelWork)
  for (int oy = 0; oy < out_dims.h; ++oy) {
    for (int ox = 0; ox < out_dims.w; ++ox) {
      for (int c = 0; c < out_dims.c; ++c) {
        double best = -std::numeric_limits<double>::infinity();
        for (int ky = 0; ky < kh; ++ky) {
          for (int kx = 0; kx < kw; ++kx) {
            const std::size_t iy = static_cast<std::size_t>(oy) * stride + ky;
            const std::size_t ix = static_cast<std::size_t>(ox) * stride + kx;
            best = std::max(best, in[(iy * in_dims.w + ix) * in_dims.c + c]);
          }
        }
        out[(static_cast<std::size_t>(oy) * out_dims.w + ox) * out_dims.c + c] = best;
      }
    }
  }
}

void Upsample2d(std::span<const double> in, MapDims in_dims, int factor,
                std::span<double> out) {
  const int oh = in_dims.h * factor;
  const int ow = in_dims.w * factor;
  const long work = static_cast<long>(oh) * ow * in_dims.c;
#pragma omp parallel for schedule(static) if (work > kMinParallelWork)
  for (int oy = 0; oy < oh; ++oy) {
    const std::size_t iy = oy / factor;
    for (int ox = 0; ox < ow; ++ox) {
      const std::size_t ix = ox / factor;
      for (int c = 0; c < in_dims.c; ++c) {
        out[(static_cast<std::size_t>(oy) * ow + ox) * in_dims.c + c] =
            in[(iy * in_dims.w + ix) * in_dims.c + c];
      }
    }
  }
}

void Softmax(std::span<const double> in, std::span<double> out) {
  const double peak = *std::max_element(in.begin(), in.end());
  double sum = 0.0;
  for (std::size_t i = 0; i < in.size(); ++i) {
    out[i] = std::exp(in[i] - peak);
    sum += out[i];
  }
  for (double& v : out) v /= sum;
}

void ChannelMeans(std::span<const double> in, MapDims dims, std::span<double> out) {
  const std::size_t pixels = static_cast<std::size_t>(dims.h) * dims.w;
  // Channels are interleaved, so one pass over the map accumulates them all.
  std::fill(out.begin(), out.end(), 0.0);
  for (std::size_t p = 0; p < pixels; ++p) {
    const double* src = in.data() + p * dims.c;
    for (int c = 0; c < dims.c; ++c) out[c] += src[c];
  }
  for (double& v : out) v /= static_cast<double>(pixels);
}

namespace reference {

void Dense(std::span<const double> in, std::span<const float> kernel,
           std::span<const float> bias, Activation act, std::span<double> out) {
  for (std::size_t o = 0; o < out.size(); ++o) {
    double acc = bias[o];
    for (std::size_t i = 0; i < in.size(); ++i) acc += kernel[o * in.size() + i] * in[i];
    out[o] = Activate(act, acc);
  }
}

void Conv2d(std::span<const double> in, const ConvGeometry& g,
            std::span<const float> kernel, std::span<const float> bias,
            Activation act, std::span<double> out) {
  auto in_at = [&](int y, int x, int c) { return in[(y * g.in.w + x) * g.in.c + c]; };
  auto w_at = [&](int oc, int ic, int ky, int kx) {
    return kernel[((oc * g.in.c + ic) * g.kh + ky) * g.kw + kx];
  };
  for (int oy = 0; oy < g.out.h; ++oy) {
    for (int ox = 0; ox < g.out.w; ++ox) {
      for (int oc = 0; oc < g.out.c; ++oc) {
        double acc = bias[oc];
        for (int ky = 0; ky < g.kh; ++ky) {
          for (int kx = 0; kx < g.kw; ++kx) {
            const int iy = oy * g.stride - g.pad_top + ky;
            const int ix = ox * g.stride - g.pad_left + kx;
            if (iy < 0 || iy >= g.in.h || ix < 0 || ix >= g.in.w) continue;
            for (int ic = 0; ic < g.in.c; ++ic) acc += w_at(oc, ic, ky, kx) * in_at(iy, ix, ic);
          }
        }
        out[(oy * g.out.w + ox) * g.out.c + oc] = Activate(act, acc);
      }
    }
  }
}

void MaxPool2d(std::span<const double> in, MapDims in_dims, int kh, int kw, int stride,
               MapDims out_dims, std::span<double> out) {
  for (int oy = 0; oy < out_dims.h; ++oy) {
    for (int ox = 0; ox < out_dims.w; ++ox) {
      for (int c = 0; c < out_dims.c; ++c) {
        double best = -std::numeric_limits<double>::infinity();
        for (int ky = 0; ky < kh; ++ky) {
          for (int kx = 0; kx < kw; ++kx) {
            const int iy = oy * stride + ky;
            const int ix = ox * stride + kx;
            best = std::max(best, in[(iy * in_dims.w + ix) * in_dims.c + c]);
          }
        }
        out[(oy * out_dims.w + ox) * out_dims.c + c] = best;
      }
    }
  }
}

void Upsample2d(std::span<const double> in, MapDims in_dims, int factor,
                std::span<double> out) {
  const int ow = in_dims.w * factor;
  for (int oy = 0; oy < in_dims.h * factor; ++oy) {
    for (int ox = 0; ox < ow; ++ox) {
      for (int c = 0; c < in_dims.c; ++c) {
        out[(oy * ow + ox) * in_dims.c + c] =
            in[((oy / factor) * in_dims.w + ox / factor) * in_dims.c + c];
      }
    }
  }
}

void ChannelMeans(std::span<const double> in, MapDims dims, std::span<double> out) {
  for (int c = 0; c < dims.c; ++c) {
    double sum = 0.0;
    for (int y = 0; y < dims.h; ++y) {
      for (int x = 0; x < dims.w; ++x) sum += in[(y * dims.w + x) * dims.c + c];
    }
    out[c] = sum / (static_cast<double>(dims.h) * dims.w);
  }
}

}  // namespace reference
}  // namespace nnfuzz::kernels
