#pragma once

#include <cstdint>
#include <deque>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "awenc/augment.hpp"
#include "awenc/data.hpp"
#include "awenc/graph.hpp"
#include "awenc/models.hpp"

namespace awenc::contrastive {

using num::Graph;
using num::Tensor;

enum class Algorithm { simclr, moco };

Algorithm algorithm_from_string(const std::string& s);
const char* algorithm_name(Algorithm a);

struct ContrastiveConfig {
    Algorithm algorithm = Algorithm::simclr;
    double temperature = 0.5;  // conventional: 0.5 simclr-style, 0.2 moco-style
    std::size_t batch_size = 50;
    int epochs = 50;
    double learning_rate = 0.003;
    double momentum = 0.99;        // key-encoder momentum coefficient
    std::size_t queue_size = 256;  // negative dictionary capacity
    std::size_t embed_dim = 32;

    void validate() const;
};

/// FIFO dictionary of l2-normalized key embeddings.
class MocoQueue {
public:
    explicit MocoQueue(std::size_t capacity);
    /// key must be normalized (||k|| within 1e-6 of 1); oldest entry is
    /// evicted once the queue is full
    void push(const Tensor& key);
    std::size_t size() const { return entries_.size(); }
    std::size_t capacity() const { return capacity_; }
    const std::deque<Tensor>& entries() const { return entries_; }
    /// entries stacked column-wise: [dim x size], oldest first
    Tensor as_matrix_transposed() const;

private:
    std::size_t capacity_;
    std::deque<Tensor> entries_;
};

/// Query/key parameter pair plus the negative dictionary.
struct MocoState {
    models::EncoderModel key_encoder;
    models::ProjectionHead key_head;
    MocoQueue queue;
};

/// NT-Xent over an interleaved batch: rows (2k, 2k+1) are the positive
/// pair of sample k. Returns the mean per-anchor loss over all 2N anchors.
Graph::Var ntxent_loss(Graph& g, Graph::Var z, double tau);

/// Single-query dictionary loss: -log(exp(q.k+ / tau) / sum exp(q.k / tau))
/// with k+ included among the dictionary entries. q may be rank-1.
Graph::Var moco_loss(Graph& g, Graph::Var q, const Tensor& k_plus, const MocoQueue& queue, double tau);

/// Batch form: zq [N x d] already normalized in-graph, k_plus [N x d]
/// constant rows. Mean per-sample loss.
Graph::Var moco_batch_loss(Graph& g, Graph::Var zq, const Tensor& k_plus, const MocoQueue& queue, double tau);

/// theta_k <- lambda * theta_k + (1 - lambda) * theta_q, elementwise.
void momentum_update(models::ParamStore& theta_k, const models::ParamStore& theta_q, double lambda);

struct EpochStat {
    int epoch = 0;
    double mean_loss = 0.0;      // total objective
    double mean_con = 0.0;       // contrastive part
    double mean_extra = 0.0;     // weighted extra term, 0 when absent
    double wall_ms = 0.0;
};

/// Optional extra loss appended to the contrastive objective each batch
/// (the watermarking term plugs in through this). Receives the clean
/// augmented views of the batch; must return a scalar var already weighted.
using ExtraLoss = std::function<Graph::Var(Graph& g, const models::EncoderModel& encoder,
                                           std::span<const Graph::Var> encoder_vars, const Tensor& view1,
                                           const Tensor& view2, int epoch, std::size_t batch_index)>;

struct TrainResult {
    models::EncoderModel encoder;
    models::ProjectionHead head;
    std::vector<EpochStat> history;
};

/// Shared training loop for pretraining, continuation (fine-tuning) and
/// watermark embedding. Deterministic given (inputs, seed); augmentation
/// sub-seeds depend only on (seed, epoch, sample index) so the schedule is
/// independent of batching internals.
TrainResult train_contrastive(models::EncoderModel encoder, models::ProjectionHead head, const data::Dataset& ds,
                              const ContrastiveConfig& cfg, const AugmentConfig& aug, int epochs, double lr,
                              std::uint64_t seed, const ExtraLoss& extra = nullptr);

/// Phase-I pretraining from fresh initialization on the pretrain split.
TrainResult pretrain(const data::Dataset& ds, const ContrastiveConfig& cfg, const AugmentConfig& aug,
                     std::uint64_t seed, const models::MlpConfig* encoder_arch = nullptr);

void write_history_csv(const std::string& path, std::span<const EpochStat> history);

}  // namespace awenc::contrastive
