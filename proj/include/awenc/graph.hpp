#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "awenc/tensor.hpp"

namespace awenc::num {

/// Reverse-mode autodiff tape. A graph is built per forward pass: every
/// operation appends a node, so construction order is already topological
/// and backward() is a single reverse sweep that visits each node once.
/// Graphs are meant to be cheap and disposable; parameters live outside in
/// value-semantic stores and enter as leaves.
class Graph {
public:
    struct Var {
        std::int32_t id = -1;
        bool valid() const { return id >= 0; }
    };

    Graph() = default;
    Graph(const Graph&) = delete;
    Graph& operator=(const Graph&) = delete;

    Var leaf(Tensor value, bool requires_grad = false);

    // ---- elementwise ----
    Var add(Var a, Var b);
    Var sub(Var a, Var b);
    Var mul(Var a, Var b);
    Var div(Var a, Var b);
    Var add(Var a, double s) { return affine(a, 1.0, s); }
    Var sub(Var a, double s) { return affine(a, 1.0, -s); }
    Var mul(Var a, double s) { return affine(a, s, 0.0); }
    Var div(Var a, double s);
    /// y = scale * x + shift, elementwise
    Var affine(Var a, double scale, double shift);
    Var exp(Var a);
    Var log(Var a);
    Var relu(Var a);
    Var clamp(Var a, double lo, double hi);

    /// same data, new shape (element count must match)
    Var reshape(Var a, Shape shape);

    // ---- linear algebra ----
    Var matmul(Var a, Var b);
    Var transpose(Var a);
    /// rows of m plus a broadcast row vector (bias add)
    Var add_rowvec(Var m, Var v);

    // ---- reductions ----
    Var row_sum(Var m);   // [r x c] -> [r]
    Var sum_all(Var a);   // -> scalar
    Var mean_all(Var a);  // -> scalar

    // ---- normalization / similarity / divergence ----
    /// softmax over the last dimension (per row for matrices); stable via
    /// max subtraction
    Var softmax(Var a);
    Var l2_normalize_rows(Var m);
    /// cosine similarity of two equal-length vectors -> scalar
    Var cosine_sim(Var u, Var v);
    /// cosine similarity of each row of z against vector t -> [rows]
    Var cosine_rows(Var z, Var t);
    /// KL(p||q) over the last dimension with the 0*log(0/q):=0 convention;
    /// rows must be probability vectors. vector inputs -> scalar,
    /// matrix inputs -> one value per row.
    Var kl_div(Var p, Var q);
    /// out[i] = m[i, idx[i]]
    Var gather_pairs(Var m, std::vector<std::size_t> idx);
    /// mean softmax cross-entropy of logits [B x C] against integer labels
    Var softmax_xent(Var logits, std::vector<int> labels);

    /// Reverse sweep from a scalar root. Rejects a second call when no new
    /// nodes were recorded since the last sweep.
    void backward(Var root);

    const Tensor& value(Var v) const { return node(v).value; }
    /// Gradient of the last backward() w.r.t. v, as a tensor of v's shape.
    Tensor grad(Var v) const;
    std::size_t num_nodes() const { return nodes_.size(); }

private:
    struct Node {
        Tensor value;
        bool requires_grad = false;
        std::function<void(Graph&)> backprop;  // empty for leaves
    };

    const Node& node(Var v) const;
    Node& node(Var v);
    Var push(Tensor value, bool requires_grad, std::function<void(Graph&)> backprop);
    bool wants_grad(Var v) const { return node(v).requires_grad; }
    std::vector<double>& grad_buf(Var v) { return node(v).value.grad(); }
    const std::vector<double>& grad_buf_const(Var v) const { return node(v).value.grad(); }

    std::vector<Node> nodes_;
    bool backward_run_ = false;
    std::size_t nodes_at_backward_ = 0;
};

}  // namespace awenc::num
