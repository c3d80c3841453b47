#pragma once

#include <cstdint>
#include <utility>

#include "awenc/tensor.hpp"

namespace awenc::contrastive {

/// View augmentation for small images: integer pixel shift, horizontal
/// flip, additive Gaussian noise, one rectangular mask. Outputs stay in
/// [0,1]; with everything disabled the input passes through unchanged.
struct AugmentConfig {
    int shift_max = 2;
    double flip_prob = 0.5;
    double noise_std = 0.05;
    double mask_frac = 0.10;

    void validate() const;
};

num::Tensor augment_view(const num::Tensor& image, std::size_t height, std::size_t width, std::size_t channels,
                         const AugmentConfig& cfg, std::uint64_t seed);

/// Two independently augmented views of one image; deterministic in seed.
std::pair<num::Tensor, num::Tensor> augment_pair(const num::Tensor& image, std::size_t height, std::size_t width,
                                                 std::size_t channels, const AugmentConfig& cfg,
                                                 std::uint64_t seed);

}  // namespace awenc::contrastive
