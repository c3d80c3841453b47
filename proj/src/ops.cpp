#include "awenc/ops.hpp"

#include <algorithm>
#include <stdexcept>

#include "kernels.hpp"

namespace awenc::num {

Tensor matmul(const Tensor& a, const Tensor& b) {
    if (a.rank() != 2 || b.rank() != 2) throw std::invalid_argument("matmul: operands must be 2-D");
    std::size_t m = a.shape()[0], k = a.shape()[1];
    if (k != b.shape()[0])
        throw std::invalid_argument("matmul: inner dimensions differ, " + shape_str(a.shape()) + " x " +
                                    shape_str(b.shape()));
    std::size_t n = b.shape()[1];
    Tensor out({m, n});
    detail::k_matmul_acc(a.data().data(), b.data().data(), out.data().data(), m, k, n);
    return out;
}

Tensor add_rowvec(const Tensor& m, const Tensor& v) {
    if (m.rank() != 2) throw std::invalid_argument("add_rowvec: matrix operand must be 2-D");
    std::size_t rows = m.shape()[0], cols = m.shape()[1];
    if (v.size() != cols) throw std::invalid_argument("add_rowvec: vector length mismatch");
    Tensor out = m;
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j) out[i * cols + j] += v[j];
    return out;
}

Tensor relu(const Tensor& a) {
    Tensor out = a;
    for (auto& x : out.data()) x = x > 0.0 ? x : 0.0;
    return out;
}

Tensor clamp(const Tensor& a, double lo, double hi) {
    Tensor out = a;
    for (auto& x : out.data()) x = std::min(std::max(x, lo), hi);
    return out;
}

Tensor softmax(const Tensor& a) {
    if (a.size() == 0) throw std::invalid_argument("softmax: empty tensor");
    Tensor out = a;
    std::size_t rows = a.rows(), cols = a.cols();
    for (std::size_t i = 0; i < rows; ++i) detail::k_softmax_row(out.data().data() + i * cols, cols);
    return out;
}

double kl_divergence(const Tensor& p, const Tensor& q) {
    if (!p.same_shape(q)) throw std::invalid_argument("kl_divergence: shape mismatch");
    if (p.rank() != 1) throw std::invalid_argument("kl_divergence: expects vectors; use kl_rows for matrices");
    return detail::k_kl_row(p.data().data(), q.data().data(), p.size(), 0);
}

std::vector<double> kl_rows(const Tensor& p, const Tensor& q) {
    if (!p.same_shape(q)) throw std::invalid_argument("kl_rows: shape mismatch");
    std::size_t rows = p.rows(), cols = p.cols();
    std::vector<double> out(rows);
    for (std::size_t i = 0; i < rows; ++i)
        out[i] = detail::k_kl_row(p.data().data() + i * cols, q.data().data() + i * cols, cols, i);
    return out;
}

double cosine_similarity(const Tensor& u, const Tensor& v) {
    if (u.size() != v.size()) throw std::invalid_argument("cosine_similarity: length mismatch");
    return detail::k_cosine(u.data().data(), v.data().data(), u.size());
}

double linf_norm(const Tensor& a) {
    double m = 0.0;
    for (double v : a.data()) m = std::max(m, std::abs(v));
    return m;
}

}  // namespace awenc::num
