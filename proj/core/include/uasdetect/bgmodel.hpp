#pragma once

// Per-pixel adaptive Gaussian-mixture background model.
//
// Each pixel holds up to K components (weight, mean, variance per channel),
// kept sorted by descending weight. For a new sample x:
//
//   1. The first component with squared Mahalanobis distance below
//      match_threshold_sq owns the sample.
//   2. Every weight moves toward its ownership indicator,
//      w <- w + alpha (o - w). The owner's mean and variance then follow with
//      rate rho = alpha / w (the updated weight), using the deviation from
//      the mean before the update. Variances are floored at min_variance.
//   3. With no owner, a new component (mu = x, var = initial_variance,
//      w = alpha) takes a free slot, or replaces the lowest-weight component
//      once all K are in use.
//   4. Weights are renormalized and the list re-sorted (stable).
//   5. The background set is the shortest weight-ordered prefix whose
//      cumulative weight exceeds background_ratio. The pixel is background
//      when some component of that set lies within classify_threshold_sq.
//
// In multi-channel mode the squared distance is the sum of the per-channel
// squared distances, each channel with its own variance.

#include <cstdint>
#include <span>
#include <vector>

#include "uasdetect/frame.hpp"
#include "uasdetect/geometry.hpp"
#include "uasdetect/mask.hpp"

namespace uasdetect {

struct MixtureParams {
  int max_components = 5;
  double match_threshold_sq = 9.0;
  double classify_threshold_sq = 16.0;
  double learning_rate = 1.0 / 500.0;
  double background_ratio = 0.9;
  double initial_variance = 225.0;
  double min_variance = 4.0;
  int warmup_frames = 200;

  void validate() const;

  // Defaults with the band-specific classification threshold (16 for RGB,
  // 36 for IR).
  static MixtureParams defaults_for(Band band);
};

double default_classify_threshold_sq(Band band);

class MixtureModel {
 public:
  static constexpr int kMaxChannels = 3;

  // One component per pixel: mean = pixel value, variance = initial_variance,
  // weight = 1. The model's channel count is the frame's.
  MixtureModel(const MixtureParams& params, const Frame& first_frame);

  // Updates every pixel with `frame` and returns the foreground mask computed
  // from the updated state. Throws DimensionMismatch on a shape change.
  BinaryMask apply(const Frame& frame);

  // Same as above, writing into `out` and splitting rows across `threads`
  // workers. Output and model state do not depend on the thread count.
  void apply(const Frame& frame, BinaryMask& out, int threads = 1);

  // Classification against the current state with an explicit threshold;
  // the model is not modified.
  BinaryMask classify(const Frame& frame, double classify_threshold_sq) const;

  // Per pixel, the mean of the highest-weight component, rounded to 8 bits.
  Frame background_image() const;

  struct ComponentView {
    double weight;
    std::span<const double> mean;
    std::span<const double> variance;
  };

  int component_count(std::size_t pixel) const { return counts_[pixel]; }
  ComponentView component(std::size_t pixel, int k) const;

  int width() const { return width_; }
  int height() const { return height_; }
  int channels() const { return channels_; }
  std::uint64_t frame_count() const { return frame_count_; }
  const MixtureParams& params() const { return params_; }

 private:
  void check_shape(const Frame& frame) const;
  void apply_rows(const Frame& frame, BinaryMask& out, int row_begin,
                  int row_end);

  MixtureParams params_;
  int width_ = 0;
  int height_ = 0;
  int channels_ = 1;
  std::uint64_t frame_count_ = 0;
  // Pixel-major storage: pixel p, component k lives at p * K + k for weights
  // and (p * K + k) * channels + c for means and variances.
  std::vector<std::uint8_t> counts_;
  std::vector<double> weights_;
  std::vector<double> means_;
  std::vector<double> variances_;
};

}  // namespace uasdetect
