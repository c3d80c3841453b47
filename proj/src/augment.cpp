#include "awenc/augment.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "awenc/rng.hpp"

namespace awenc::contrastive {

using num::Rng;
using num::Tensor;

void AugmentConfig::validate() const {
    if (shift_max < 0) throw std::invalid_argument("AugmentConfig: shift_max must be >= 0");
    if (flip_prob < 0.0 || flip_prob > 1.0) throw std::invalid_argument("AugmentConfig: flip_prob must be in [0,1]");
    if (noise_std < 0.0) throw std::invalid_argument("AugmentConfig: noise_std must be >= 0");
    if (mask_frac < 0.0 || mask_frac > 1.0) throw std::invalid_argument("AugmentConfig: mask_frac must be in [0,1]");
}

Tensor augment_view(const Tensor& image, std::size_t height, std::size_t width, std::size_t channels,
                    const AugmentConfig& cfg, std::uint64_t seed) {
    cfg.validate();
    std::size_t dim = height * width * channels;
    if (image.size() != dim) throw std::invalid_argument("augment_view: image size does not match dimensions");
    auto rng = Rng::from_seed(seed);
    auto idx = [&](std::size_t y, std::size_t x, std::size_t ch) { return (y * width + x) * channels + ch; };

    Tensor out = image;

    if (cfg.shift_max > 0) {
        auto dy = rng.uniform_int(-cfg.shift_max, cfg.shift_max);
        auto dx = rng.uniform_int(-cfg.shift_max, cfg.shift_max);
        if (dy != 0 || dx != 0) {
            Tensor shifted({dim});
            for (std::size_t y = 0; y < height; ++y)
                for (std::size_t x = 0; x < width; ++x) {
                    auto sy = static_cast<std::int64_t>(y) - dy;
                    auto sx = static_cast<std::int64_t>(x) - dx;
                    if (sy < 0 || sx < 0 || sy >= static_cast<std::int64_t>(height) ||
                        sx >= static_cast<std::int64_t>(width))
                        continue;  // zero padding
                    for (std::size_t ch = 0; ch < channels; ++ch)
                        shifted[idx(y, x, ch)] =
                            out[idx(static_cast<std::size_t>(sy), static_cast<std::size_t>(sx), ch)];
                }
            out = std::move(shifted);
        }
    }

    if (cfg.flip_prob > 0.0 && rng.uniform01() < cfg.flip_prob) {
        for (std::size_t y = 0; y < height; ++y)
            for (std::size_t x = 0; x < width / 2; ++x)
                for (std::size_t ch = 0; ch < channels; ++ch)
                    std::swap(out[idx(y, x, ch)], out[idx(y, width - 1 - x, ch)]);
    }

    if (cfg.noise_std > 0.0)
        for (auto& v : out.data()) v += rng.normal(0.0, cfg.noise_std);

    if (cfg.mask_frac > 0.0) {
        double target = cfg.mask_frac * static_cast<double>(height * width);
        auto side = static_cast<std::int64_t>(std::floor(std::sqrt(target)));
        side = std::max<std::int64_t>(1, side);
        auto rw = rng.uniform_int(1, std::min<std::int64_t>(side, static_cast<std::int64_t>(width)));
        auto rh_cap = std::max<std::int64_t>(1, static_cast<std::int64_t>(std::floor(target / static_cast<double>(rw))));
        auto rh = rng.uniform_int(1, std::min<std::int64_t>(rh_cap, static_cast<std::int64_t>(height)));
        auto y0 = rng.uniform_int(0, static_cast<std::int64_t>(height) - rh);
        auto x0 = rng.uniform_int(0, static_cast<std::int64_t>(width) - rw);
        for (std::int64_t y = y0; y < y0 + rh; ++y)
            for (std::int64_t x = x0; x < x0 + rw; ++x)
                for (std::size_t ch = 0; ch < channels; ++ch)
                    out[idx(static_cast<std::size_t>(y), static_cast<std::size_t>(x), ch)] = 0.0;
    }

    for (auto& v : out.data()) v = std::min(1.0, std::max(0.0, v));
    return out;
}

std::pair<Tensor, Tensor> augment_pair(const Tensor& image, std::size_t height, std::size_t width,
                                       std::size_t channels, const AugmentConfig& cfg, std::uint64_t seed) {
    return {augment_view(image, height, width, channels, cfg, num::seed_mix(seed, 1)),
            augment_view(image, height, width, channels, cfg, num::seed_mix(seed, 2))};
}

}  // namespace awenc::contrastive
