#include "awenc/models.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <tuple>

#include "awenc/ops.hpp"
#include "awenc/rng.hpp"

namespace awenc::models {

using num::Graph;
using num::Tensor;

std::vector<MlpConfig::Layer> MlpConfig::layers() const {
    std::vector<Layer> out;
    std::size_t prev = input_dim;
    for (std::size_t h : hidden) {
        out.push_back({prev, h, true});
        prev = h;
    }
    out.push_back({prev, output_dim, false});
    return out;
}

ParamStore init_params(const MlpConfig& cfg, std::uint64_t seed) {
    if (cfg.input_dim == 0 || cfg.output_dim == 0)
        throw std::invalid_argument("init_params: dimensions must be positive");
    for (std::size_t h : cfg.hidden)
        if (h == 0) throw std::invalid_argument("init_params: dimensions must be positive");
    auto rng = num::Rng::from_seed(seed);
    ParamStore store;
    std::size_t li = 0;
    for (const auto& layer : cfg.layers()) {
        double bound = std::sqrt(6.0 / static_cast<double>(layer.in + layer.out));
        Tensor w({layer.in, layer.out});
        for (auto& v : w.data()) v = rng.uniform(-bound, bound);
        store.add("layer" + std::to_string(li) + ".weight", std::move(w));
        store.add("layer" + std::to_string(li) + ".bias", Tensor({layer.out}));
        ++li;
    }
    return store;
}

Mlp::Mlp(MlpConfig cfg, ParamStore params) : cfg_(std::move(cfg)), params_(std::move(params)) {
    auto layers = cfg_.layers();
    bool ok = params_.size() == 2 * layers.size();
    for (std::size_t l = 0; ok && l < layers.size(); ++l) {
        ok = params_.name(2 * l) == "layer" + std::to_string(l) + ".weight" &&
             params_.at(2 * l).shape() == num::Shape{layers[l].in, layers[l].out} &&
             params_.name(2 * l + 1) == "layer" + std::to_string(l) + ".bias" &&
             params_.at(2 * l + 1).shape() == num::Shape{layers[l].out};
    }
    if (!ok) throw std::invalid_argument("Mlp: parameter store does not match architecture");
}

Tensor Mlp::forward(const Tensor& batch) const {
    if (batch.rank() != 2 || batch.shape()[1] != cfg_.input_dim)
        throw std::invalid_argument("Mlp::forward: expected [B x " + std::to_string(cfg_.input_dim) +
                                    "] input, got " + num::shape_str(batch.shape()));
    Tensor h = batch;
    auto layers = cfg_.layers();
    for (std::size_t l = 0; l < layers.size(); ++l) {
        h = num::add_rowvec(num::matmul(h, params_.at(2 * l)), params_.at(2 * l + 1));
        if (layers[l].activation) h = num::relu(h);
    }
    return h;
}

Graph::Var Mlp::forward(Graph& g, Graph::Var x, std::span<const Graph::Var> pv) const {
    if (pv.size() != params_.size()) throw std::invalid_argument("Mlp::forward: wrong number of bound params");
    auto layers = cfg_.layers();
    Graph::Var h = x;
    for (std::size_t l = 0; l < layers.size(); ++l) {
        h = g.add_rowvec(g.matmul(h, pv[2 * l]), pv[2 * l + 1]);
        if (layers[l].activation) h = g.relu(h);
    }
    return h;
}

std::vector<Graph::Var> Mlp::bind(Graph& g, bool requires_grad) const {
    std::vector<Graph::Var> vars;
    vars.reserve(params_.size());
    for (std::size_t i = 0; i < params_.size(); ++i) vars.push_back(g.leaf(params_.at(i), requires_grad));
    return vars;
}

void Mlp::apply_gradient_step(Graph& g, std::span<const Graph::Var> pv, double lr) {
    for (std::size_t i = 0; i < pv.size(); ++i) {
        const auto& grad = g.value(pv[i]).grad();
        auto& data = params_.at(i).data();
        for (std::size_t j = 0; j < data.size(); ++j) data[j] -= lr * grad[j];
    }
}

MlpConfig default_encoder_arch(std::size_t input_dim, std::size_t embed_dim) {
    return MlpConfig{input_dim, {256, 128}, embed_dim};
}

MlpConfig surrogate_encoder_arch(std::size_t input_dim, std::size_t embed_dim) {
    return MlpConfig{input_dim, {384, 192, 96}, embed_dim};
}

MlpConfig projection_head_arch(std::size_t embed_dim) { return MlpConfig{embed_dim, {32}, 16}; }

MlpConfig linear_probe_arch(std::size_t embed_dim, std::size_t num_classes) {
    return MlpConfig{embed_dim, {}, num_classes};
}

LinearProbe train_linear_probe(const EncoderModel& encoder, const Tensor& images, const std::vector<int>& labels,
                               std::size_t num_classes, const ProbeConfig& cfg) {
    if (images.rows() == 0 || labels.empty()) throw std::invalid_argument("train_linear_probe: empty split");
    if (images.rows() != labels.size()) throw std::invalid_argument("train_linear_probe: image/label count mismatch");
    for (int y : labels)
        if (y < 0 || static_cast<std::size_t>(y) >= num_classes)
            throw std::invalid_argument("train_linear_probe: label out of range");

    Tensor embeddings = encoder.forward(images);
    LinearProbe probe(linear_probe_arch(encoder.output_dim(), num_classes), cfg.seed);
    for (int epoch = 0; epoch < cfg.epochs; ++epoch) {
        Graph g;
        auto x = g.leaf(embeddings, false);
        auto pv = probe.bind(g, true);
        auto loss = g.softmax_xent(probe.forward(g, x, pv), labels);
        g.backward(loss);
        probe.apply_gradient_step(g, pv, cfg.learning_rate);
    }
    return probe;
}

ParamStore prune_params(const ParamStore& params, double ratio) {
    if (!(ratio >= 0.0 && ratio <= 1.0)) throw std::invalid_argument("prune_params: ratio must be in [0,1]");
    ParamStore out = params;
    std::vector<std::tuple<double, std::size_t, std::size_t>> entries;  // (|v|, param idx, elem idx)
    for (std::size_t p = 0; p < params.size(); ++p) {
        const std::string& nm = params.name(p);
        if (nm.size() < 7 || nm.substr(nm.size() - 7) != ".weight") continue;
        const auto& data = params.at(p).data();
        for (std::size_t e = 0; e < data.size(); ++e) entries.emplace_back(std::abs(data[e]), p, e);
    }
    auto k = static_cast<std::size_t>(std::ceil(ratio * static_cast<double>(entries.size())));
    if (k == 0) return out;
    std::nth_element(entries.begin(), entries.begin() + static_cast<std::ptrdiff_t>(k - 1), entries.end());
    for (std::size_t i = 0; i < k; ++i) {
        auto [mag, p, e] = entries[i];
        out.at(p).data()[e] = 0.0;
    }
    return out;
}

std::vector<int> predict_labels(const EncoderModel& encoder, const LinearProbe& probe, const Tensor& images) {
    Tensor logits = probe.forward(encoder.forward(images));
    std::vector<int> out(logits.rows());
    std::size_t cols = logits.cols();
    for (std::size_t i = 0; i < logits.rows(); ++i) {
        std::size_t best = 0;
        for (std::size_t j = 1; j < cols; ++j)
            if (logits[i * cols + j] > logits[i * cols + best]) best = j;
        out[i] = static_cast<int>(best);
    }
    return out;
}

double accuracy(const EncoderModel& encoder, const LinearProbe& probe, const Tensor& images,
                const std::vector<int>& labels) {
    auto preds = predict_labels(encoder, probe, images);
    if (preds.size() != labels.size()) throw std::invalid_argument("accuracy: label count mismatch");
    if (preds.empty()) throw std::invalid_argument("accuracy: empty split");
    std::size_t hits = 0;
    for (std::size_t i = 0; i < preds.size(); ++i)
        if (preds[i] == labels[i]) ++hits;
    return static_cast<double>(hits) / static_cast<double>(preds.size());
}

}  // namespace awenc::models
