#pragma once

#include "awenc/tensor.hpp"

// Value-only counterparts of the graph operations, for evaluation paths
// that never need gradients.
namespace awenc::num {

Tensor matmul(const Tensor& a, const Tensor& b);
Tensor add_rowvec(const Tensor& m, const Tensor& v);
Tensor relu(const Tensor& a);
Tensor clamp(const Tensor& a, double lo, double hi);
/// stable softmax over the last dimension
Tensor softmax(const Tensor& a);
/// KL(p||q) for probability vectors
double kl_divergence(const Tensor& p, const Tensor& q);
/// per-row KL for matrices of probability rows
std::vector<double> kl_rows(const Tensor& p, const Tensor& q);
double cosine_similarity(const Tensor& u, const Tensor& v);
double linf_norm(const Tensor& a);

}  // namespace awenc::num
