#include "uasdetect/bgmodel.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <thread>
#include <utility>

#include "uasdetect/error.hpp"

namespace uasdetect {

void MixtureParams::validate() const {
  if (max_components < 1 || max_components > 255)
    throw InvalidArgument("max_components must be within [1, 255]");
  if (!(learning_rate > 0.0 && learning_rate <= 1.0))
    throw InvalidArgument("learning_rate must be within (0, 1]");
  if (!(background_ratio > 0.0 && background_ratio < 1.0))
    throw InvalidArgument("background_ratio must be within (0, 1)");
  if (!(match_threshold_sq > 0.0)) throw InvalidArgument("match_threshold_sq must be > 0");
  if (!(classify_threshold_sq > 0.0))
    throw InvalidArgument("classify_threshold_sq must be > 0");
  if (!(min_variance > 0.0)) throw InvalidArgument("min_variance must be > 0");
  if (!(initial_variance >= min_variance))
    throw InvalidArgument("initial_variance must be >= min_variance");
  if (warmup_frames < 0) throw InvalidArgument("warmup_frames must be >= 0");
}

double default_classify_threshold_sq(Band band) {
  return band == Band::IR ? 36.0 : 16.0;
}

MixtureParams MixtureParams::defaults_for(Band band) {
  MixtureParams p;
  p.classify_threshold_sq = default_classify_threshold_sq(band);
  return p;
}

namespace {

struct PixelSlots {
  std::uint8_t* count;
  double* weight;
  double* mean;
  double* variance;
};

template <int C>
double distance_sq(const std::uint8_t* x, const double* mean, const double* variance) {
  double d2 = 0.0;
  for (int c = 0; c < C; ++c) {
    const double diff = static_cast<double>(x[c]) - mean[c];
    d2 += diff * diff / variance[c];
  }
  return d2;
}

template <int C>
bool is_foreground(int n, const double* weight, const double* mean, const double* variance,
                   const std::uint8_t* x, double threshold_sq, double background_ratio) {
  double cumulative = 0.0;
  for (int k = 0; k < n; ++k) {
    if (distance_sq<C>(x, mean + k * C, variance + k * C) < threshold_sq) return false;
    cumulative += weight[k];
    if (cumulative > background_ratio) break;
  }
  return true;
}

template <int C>
void swap_components(const PixelSlots& s, int a, int b) {
  std::swap(s.weight[a], s.weight[b]);
  for (int c = 0; c < C; ++c) {
    std::swap(s.mean[a * C + c], s.mean[b * C + c]);
    std::swap(s.variance[a * C + c], s.variance[b * C + c]);
  }
}

// One model step for one pixel; returns the foreground bit.
template <int C>
bool update_pixel(const MixtureParams& p, const PixelSlots& s, const std::uint8_t* x) {
  const double alpha = p.learning_rate;
  int n = *s.count;

  int owner = -1;
  for (int k = 0; k < n; ++k) {
    if (distance_sq<C>(x, s.mean + k * C, s.variance + k * C) < p.match_threshold_sq) {
      owner = k;
      break;
    }
  }

  for (int k = 0; k < n; ++k) {
    const double o = k == owner ? 1.0 : 0.0;
    s.weight[k] += alpha * (o - s.weight[k]);
  }

  if (owner >= 0) {
    const double rho = alpha / s.weight[owner];
    double* mu = s.mean + owner * C;
    double* var = s.variance + owner * C;
    for (int c = 0; c < C; ++c) {
      const double diff = static_cast<double>(x[c]) - mu[c];
      mu[c] += rho * diff;
      var[c] = std::max(p.min_variance, var[c] + rho * (diff * diff - var[c]));
    }
  } else {
    // The list is still sorted after the uniform decay, so the last slot in
    // use holds the lowest weight.
    const int slot = n < p.max_components ? n++ : n - 1;
    s.weight[slot] = alpha;
    for (int c = 0; c < C; ++c) {
      s.mean[slot * C + c] = static_cast<double>(x[c]);
      s.variance[slot * C + c] = p.initial_variance;
    }
    *s.count = static_cast<std::uint8_t>(n);
  }

  double total = 0.0;
  for (int k = 0; k < n; ++k) total += s.weight[k];
  for (int k = 0; k < n; ++k) s.weight[k] /= total;

  // Stable insertion sort, descending weight.
  for (int i = 1; i < n; ++i) {
    for (int j = i; j > 0 && s.weight[j - 1] < s.weight[j]; --j) {
      swap_components<C>(s, j - 1, j);
    }
  }

  return is_foreground<C>(n, s.weight, s.mean, s.variance, x, p.classify_threshold_sq,
                         p.background_ratio);
}

}  // namespace

MixtureModel::MixtureModel(const MixtureParams& params, const Frame& first_frame)
    : params_(params),
      width_(first_frame.width()),
      height_(first_frame.height()),
      channels_(first_frame.channels()) {
  params_.validate();
  if (first_frame.empty()) throw InvalidArgument("first frame is empty");
  const std::size_t pixels = first_frame.pixel_count();
  const std::size_t k = static_cast<std::size_t>(params_.max_components);
  counts_.assign(pixels, 1);
  weights_.assign(pixels * k, 0.0);
  means_.assign(pixels * k * channels_, 0.0);
  variances_.assign(pixels * k * channels_, params_.initial_variance);
  auto data = first_frame.data();
  for (std::size_t p = 0; p < pixels; ++p) {
    weights_[p * k] = 1.0;
    for (int c = 0; c < channels_; ++c) {
      means_[p * k * channels_ + c] = data[p * channels_ + c];
    }
  }
}

void MixtureModel::check_shape(const Frame& frame) const {
  if (frame.width() != width_ || frame.height() != height_ ||
      frame.channels() != channels_) {
    throw DimensionMismatch("frame is " + std::to_string(frame.width()) + "x" +
                            std::to_string(frame.height()) + "x" +
                            std::to_string(frame.channels()) + ", model expects " +
                            std::to_string(width_) + "x" + std::to_string(height_) +
                            "x" + std::to_string(channels_));
  }
}

BinaryMask MixtureModel::apply(const Frame& frame) {
  BinaryMask out(width_, height_);
  apply(frame, out, 1);
  return out;
}

void MixtureModel::apply(const Frame& frame, BinaryMask& out, int threads) {
  check_shape(frame);
  if (out.width() != width_ || out.height() != height_) out = BinaryMask(width_, height_);
  threads = std::clamp(threads, 1, std::max(1, height_));
  if (threads == 1) {
    apply_rows(frame, out, 0, height_);
  } else {
    std::vector<std::jthread> workers;
    workers.reserve(static_cast<std::size_t>(threads));
    for (int t = 0; t < threads; ++t) {
      const int begin = height_ * t / threads;
      const int end = height_ * (t + 1) / threads;
      workers.emplace_back([this, &frame, &out, begin, end] {
        apply_rows(frame, out, begin, end);
      });
    }
  }
  ++frame_count_;
}

void MixtureModel::apply_rows(const Frame& frame, BinaryMask& out, int row_begin,
                              int row_end) {
  const std::size_t k = static_cast<std::size_t>(params_.max_components);
  const std::size_t c = static_cast<std::size_t>(channels_);
  auto data = frame.data();
  auto bits = out.bits();
  const std::size_t first = static_cast<std::size_t>(row_begin) * width_;
  const std::size_t last = static_cast<std::size_t>(row_end) * width_;
  for (std::size_t p = first; p < last; ++p) {
    PixelSlots s{&counts_[p], &weights_[p * k], &means_[p * k * c], &variances_[p * k * c]};
    const std::uint8_t* x = &data[p * c];
    bits[p] = channels_ == 1 ? update_pixel<1>(params_, s, x) : update_pixel<3>(params_, s, x);
  }
}

BinaryMask MixtureModel::classify(const Frame& frame, double classify_threshold_sq) const {
  check_shape(frame);
  BinaryMask out(width_, height_);
  const std::size_t k = static_cast<std::size_t>(params_.max_components);
  const std::size_t c = static_cast<std::size_t>(channels_);
  auto data = frame.data();
  auto bits = out.bits();
  for (std::size_t p = 0; p < bits.size(); ++p) {
    const int n = counts_[p];
    const double* w = &weights_[p * k];
    const double* mu = &means_[p * k * c];
    const double* var = &variances_[p * k * c];
    const std::uint8_t* x = &data[p * c];
    bits[p] = channels_ == 1 ? is_foreground<1>(n, w, mu, var, x, classify_threshold_sq,
                                                params_.background_ratio)
                             : is_foreground<3>(n, w, mu, var, x, classify_threshold_sq,
                                                params_.background_ratio);
  }
  return out;
}

Frame MixtureModel::background_image() const {
  Frame out(width_, height_, channels_);
  const std::size_t k = static_cast<std::size_t>(params_.max_components);
  const std::size_t c = static_cast<std::size_t>(channels_);
  auto data = out.data();
  for (std::size_t p = 0; p < out.pixel_count(); ++p) {
    for (std::size_t ch = 0; ch < c; ++ch) {
      const double mu = means_[p * k * c + ch];
      data[p * c + ch] = static_cast<std::uint8_t>(std::clamp(std::lround(mu), 0L, 255L));
    }
  }
  return out;
}

MixtureModel::ComponentView MixtureModel::component(std::size_t pixel, int k) const {
  const std::size_t kk = static_cast<std::size_t>(params_.max_components);
  const std::size_t c = static_cast<std::size_t>(channels_);
  const std::size_t slot = pixel * kk + static_cast<std::size_t>(k);
  return ComponentView{weights_[slot],
                       std::span<const double>(&means_[slot * c], c),
                       std::span<const double>(&variances_[slot * c], c)};
}

}  // namespace uasdetect
