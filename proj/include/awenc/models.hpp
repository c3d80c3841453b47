#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "awenc/graph.hpp"
#include "awenc/param_store.hpp"
#include "awenc/tensor.hpp"

namespace awenc::models {

/// Fully-connected architecture: input -> hidden... -> output, relu after
/// every hidden layer, linear output.
struct MlpConfig {
    std::size_t input_dim = 0;
    std::vector<std::size_t> hidden;
    std::size_t output_dim = 0;

    struct Layer {
        std::size_t in, out;
        bool activation;
    };
    std::vector<Layer> layers() const;
    bool operator==(const MlpConfig&) const = default;
};

/// Glorot-uniform weights (bound sqrt(6/(fan_in+fan_out))), zero biases.
/// Same seed gives a bit-identical store. Parameter names are
/// "layer<i>.weight" ([in x out]) and "layer<i>.bias" ([out]).
ParamStore init_params(const MlpConfig& cfg, std::uint64_t seed);

class Mlp {
public:
    Mlp() = default;
    Mlp(MlpConfig cfg, std::uint64_t seed) : cfg_(std::move(cfg)), params_(init_params(cfg_, seed)) {}
    Mlp(MlpConfig cfg, ParamStore params);

    const MlpConfig& config() const { return cfg_; }
    ParamStore& params() { return params_; }
    const ParamStore& params() const { return params_; }
    std::size_t input_dim() const { return cfg_.input_dim; }
    std::size_t output_dim() const { return cfg_.output_dim; }

    /// Value-only forward of a [B x input_dim] batch.
    num::Tensor forward(const num::Tensor& batch) const;
    /// Graph forward; param_vars must come from bind() on the same store.
    num::Graph::Var forward(num::Graph& g, num::Graph::Var x, std::span<const num::Graph::Var> param_vars) const;
    /// Registers every parameter as a graph leaf, in store order.
    std::vector<num::Graph::Var> bind(num::Graph& g, bool requires_grad) const;
    /// Writes gradients from bound leaves back as a plain GD step.
    void apply_gradient_step(num::Graph& g, std::span<const num::Graph::Var> param_vars, double lr);

private:
    MlpConfig cfg_;
    ParamStore params_;
};

// Role aliases: the encoder maps images to embeddings, the projection head
// maps embeddings to the contrastive space, the probe maps embeddings to
// class logits.
using EncoderModel = Mlp;
using ProjectionHead = Mlp;
using LinearProbe = Mlp;

MlpConfig default_encoder_arch(std::size_t input_dim, std::size_t embed_dim = 32);
MlpConfig surrogate_encoder_arch(std::size_t input_dim, std::size_t embed_dim = 32);
MlpConfig projection_head_arch(std::size_t embed_dim);
MlpConfig linear_probe_arch(std::size_t embed_dim, std::size_t num_classes);

struct ProbeConfig {
    double learning_rate = 0.05;
    int epochs = 200;
    std::uint64_t seed = 0;
};

/// Trains a linear probe on frozen-encoder embeddings by full-batch
/// softmax cross-entropy. The encoder is never touched.
LinearProbe train_linear_probe(const EncoderModel& encoder, const num::Tensor& images,
                               const std::vector<int>& labels, std::size_t num_classes, const ProbeConfig& cfg);

/// Zeroes exactly ceil(ratio * #weight-entries) weight entries of smallest
/// magnitude; biases are exempt. Ties break by parameter order then index.
ParamStore prune_params(const ParamStore& params, double ratio);

std::vector<int> predict_labels(const EncoderModel& encoder, const LinearProbe& probe, const num::Tensor& images);
double accuracy(const EncoderModel& encoder, const LinearProbe& probe, const num::Tensor& images,
                const std::vector<int>& labels);

}  // namespace awenc::models
