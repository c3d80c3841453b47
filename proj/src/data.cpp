#include "awenc/data.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "awenc/binio.hpp"
#include "awenc/errors.hpp"
#include "awenc/rng.hpp"

namespace awenc::data {

using num::Tensor;

namespace {
constexpr std::uint32_t kDatasetVersion = 1;
constexpr std::uint64_t kProtoTag = 0x70726f74;   // stream tags
constexpr std::uint64_t kNoiseTag = 0x6e6f6973;
}  // namespace

const char* role_name(Role r) {
    switch (r) {
        case Role::pretrain: return "pretrain";
        case Role::verify: return "verify";
        case Role::downstream_train: return "downstream_train";
        case Role::downstream_test: return "downstream_test";
        case Role::key_pool: return "key_pool";
    }
    return "?";
}

void SyntheticConfig::validate() const {
    if (num_classes < 1 || samples_per_class < 1 || height < 1 || width < 1 || channels < 1)
        throw ConfigError("SyntheticConfig: all counts must be >= 1");
    if (noise_std < 0.0 || prototype_scale <= 0.0)
        throw ConfigError("SyntheticConfig: noise_std must be >= 0 and prototype_scale > 0");
}

Dataset::Dataset(std::size_t h, std::size_t w, std::size_t c, Tensor images, std::vector<int> labels,
                 std::vector<Role> roles, std::size_t num_classes, std::int64_t key_class)
    : h_(h), w_(w), c_(c), images_(std::move(images)), labels_(std::move(labels)), roles_(std::move(roles)),
      num_classes_(num_classes), key_class_(key_class) {
    if (images_.rank() != 2 || images_.shape()[1] != input_dim() || images_.shape()[0] != labels_.size() ||
        labels_.size() != roles_.size())
        throw std::invalid_argument("Dataset: inconsistent construction");
}

std::vector<std::size_t> Dataset::indices_of(Role r) const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < roles_.size(); ++i)
        if (roles_[i] == r) out.push_back(i);
    return out;
}

Tensor Dataset::images_of(Role r) const {
    auto idx = indices_of(r);
    Tensor out({idx.size(), input_dim()});
    for (std::size_t i = 0; i < idx.size(); ++i)
        std::copy_n(images_.data().begin() + static_cast<std::ptrdiff_t>(idx[i] * input_dim()), input_dim(),
                    out.data().begin() + static_cast<std::ptrdiff_t>(i * input_dim()));
    return out;
}

std::vector<int> Dataset::labels_of(Role r) const {
    std::vector<int> out;
    for (std::size_t i = 0; i < roles_.size(); ++i)
        if (roles_[i] == r) out.push_back(labels_[i]);
    return out;
}

Tensor Dataset::image(std::size_t index) const {
    Tensor out({input_dim()});
    std::copy_n(images_.data().begin() + static_cast<std::ptrdiff_t>(index * input_dim()), input_dim(),
                out.data().begin());
    return out;
}

Dataset generate(const SyntheticConfig& cfg) {
    cfg.validate();
    auto master = num::Rng::from_seed(cfg.seed);
    std::size_t total_classes = cfg.num_classes + (cfg.hold_out_key_class ? 1 : 0);
    std::size_t n = total_classes * cfg.samples_per_class;
    std::size_t dim = cfg.input_dim();

    Tensor images({n, dim});
    std::vector<int> labels(n);
    std::vector<Role> roles(n);

    // split boundaries inside one class block (visible classes only)
    std::size_t spc = cfg.samples_per_class;
    std::size_t n_pre = spc * 6 / 10;
    std::size_t n_ver = spc * 2 / 10;
    std::size_t n_dtr = spc / 10;

    std::size_t row = 0;
    for (std::size_t cls = 0; cls < total_classes; ++cls) {
        bool is_key_class = cfg.hold_out_key_class && cls == cfg.num_classes;
        auto proto_rng = master.fork(num::seed_mix(kProtoTag, cls));

        // prototype: a few random low-frequency waves per channel, rescaled
        // to amplitude prototype_scale around 0.5
        std::vector<double> proto(dim);
        for (std::size_t ch = 0; ch < cfg.channels; ++ch) {
            struct Wave {
                double fx, fy, phase, amp;
            };
            Wave waves[3];
            for (auto& wv : waves) {
                wv.fx = static_cast<double>(proto_rng.uniform_int(1, 3));
                wv.fy = static_cast<double>(proto_rng.uniform_int(1, 3));
                wv.phase = proto_rng.uniform(0.0, 2.0 * M_PI);
                wv.amp = proto_rng.uniform(0.5, 1.0);
            }
            double max_abs = 0.0;
            std::vector<double> raw(cfg.height * cfg.width);
            for (std::size_t y = 0; y < cfg.height; ++y)
                for (std::size_t x = 0; x < cfg.width; ++x) {
                    double v = 0.0;
                    for (const auto& wv : waves)
                        v += wv.amp * std::sin(2.0 * M_PI * (wv.fx * static_cast<double>(y) / static_cast<double>(cfg.height) +
                                                             wv.fy * static_cast<double>(x) / static_cast<double>(cfg.width)) +
                                               wv.phase);
                    raw[y * cfg.width + x] = v;
                    max_abs = std::max(max_abs, std::abs(v));
                }
            if (max_abs == 0.0) max_abs = 1.0;
            for (std::size_t y = 0; y < cfg.height; ++y)
                for (std::size_t x = 0; x < cfg.width; ++x)
                    proto[(y * cfg.width + x) * cfg.channels + ch] =
                        0.5 + cfg.prototype_scale * raw[y * cfg.width + x] / max_abs;
        }

        auto noise_rng = master.fork(num::seed_mix(kNoiseTag, cls));
        for (std::size_t s = 0; s < spc; ++s, ++row) {
            double* dst = images.data().data() + row * dim;
            for (std::size_t j = 0; j < dim; ++j) {
                double v = proto[j] + (cfg.noise_std > 0.0 ? noise_rng.normal(0.0, cfg.noise_std) : 0.0);
                dst[j] = std::min(1.0, std::max(0.0, v));
            }
            labels[row] = static_cast<int>(cls);
            if (is_key_class)
                roles[row] = Role::key_pool;
            else if (s < n_pre)
                roles[row] = Role::pretrain;
            else if (s < n_pre + n_ver)
                roles[row] = Role::verify;
            else if (s < n_pre + n_ver + n_dtr)
                roles[row] = Role::downstream_train;
            else
                roles[row] = Role::downstream_test;
        }
    }

    return Dataset(cfg.height, cfg.width, cfg.channels, std::move(images), std::move(labels), std::move(roles),
                   cfg.num_classes, cfg.hold_out_key_class ? static_cast<std::int64_t>(cfg.num_classes) : -1);
}

void Dataset::save(const std::string& path) const {
    io::ByteWriter w;
    w.magic("AWDS");
    w.u32(kDatasetVersion);
    w.u64(h_);
    w.u64(w_);
    w.u64(c_);
    w.u64(size());
    w.u64(num_classes_);
    w.i64(key_class_);
    for (double v : images_.data()) w.f64(v);
    for (int v : labels_) w.u32(static_cast<std::uint32_t>(v));
    for (Role r : roles_) w.u8(static_cast<std::uint8_t>(r));
    w.write_file(path);
}

Dataset Dataset::load(const std::string& path) {
    auto r = io::ByteReader::from_file(path);
    r.expect_magic("AWDS", "dataset " + path);
    std::uint32_t version = r.u32();
    if (version != kDatasetVersion)
        throw ConfigError("dataset " + path + ": unsupported format version " + std::to_string(version));
    std::size_t h = r.u64(), w = r.u64(), c = r.u64(), n = r.u64();
    std::size_t classes = r.u64();
    std::int64_t key_class = r.i64();
    Tensor images({n, h * w * c});
    for (auto& v : images.data()) v = r.f64();
    std::vector<int> labels(n);
    for (auto& v : labels) v = static_cast<int>(r.u32());
    std::vector<Role> roles(n);
    for (auto& v : roles) {
        std::uint8_t b = r.u8();
        if (b > static_cast<std::uint8_t>(Role::key_pool))
            throw ConfigError("dataset " + path + ": invalid role tag " + std::to_string(b));
        v = static_cast<Role>(b);
    }
    r.expect_end("dataset " + path);
    return Dataset(h, w, c, std::move(images), std::move(labels), std::move(roles), classes, key_class);
}

}  // namespace awenc::data
