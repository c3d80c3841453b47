#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "awenc/tensor.hpp"

namespace awenc::data {

/// Split roles. The key pool holds the held-out class that never joins
/// pretraining, from which key images are drawn.
enum class Role : std::uint8_t {
    pretrain = 0,
    verify = 1,
    downstream_train = 2,
    downstream_test = 3,
    key_pool = 4,
};

const char* role_name(Role r);

struct SyntheticConfig {
    std::size_t num_classes = 5;  // visible classes; the key class is extra
    std::size_t samples_per_class = 400;
    std::size_t height = 16, width = 16, channels = 3;
    double prototype_scale = 0.35;
    double noise_std = 0.08;
    bool hold_out_key_class = true;
    std::uint64_t seed = 0;

    void validate() const;
    std::size_t input_dim() const { return height * width * channels; }
};

/// Immutable labeled image collection with per-sample split roles.
/// Images are flattened rows of an [N x H*W*C] tensor, pixels in [0,1].
class Dataset {
public:
    Dataset(std::size_t h, std::size_t w, std::size_t c, num::Tensor images, std::vector<int> labels,
            std::vector<Role> roles, std::size_t num_classes, std::int64_t key_class);

    std::size_t height() const { return h_; }
    std::size_t width() const { return w_; }
    std::size_t channels() const { return c_; }
    std::size_t input_dim() const { return h_ * w_ * c_; }
    std::size_t size() const { return labels_.size(); }
    /// visible classes (the key class is not counted)
    std::size_t num_classes() const { return num_classes_; }
    std::int64_t key_class() const { return key_class_; }

    const num::Tensor& images() const { return images_; }
    const std::vector<int>& labels() const { return labels_; }
    const std::vector<Role>& roles() const { return roles_; }

    std::vector<std::size_t> indices_of(Role r) const;
    num::Tensor images_of(Role r) const;
    std::vector<int> labels_of(Role r) const;
    num::Tensor image(std::size_t index) const;  // one flattened row

    void save(const std::string& path) const;
    static Dataset load(const std::string& path);

private:
    std::size_t h_, w_, c_;
    num::Tensor images_;
    std::vector<int> labels_;
    std::vector<Role> roles_;
    std::size_t num_classes_;
    std::int64_t key_class_;
};

/// Smooth low-frequency class prototypes plus Gaussian intra-class noise,
/// clamped to [0,1]. Visible classes split 60/20/10/10 into
/// pretrain/verify/downstream-train/downstream-test; the key class, when
/// enabled, goes entirely to the key pool.
Dataset generate(const SyntheticConfig& cfg);

}  // namespace awenc::data
