#include "awenc/graph.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "awenc/errors.hpp"
#include "kernels.hpp"

namespace awenc::num {

using detail::k_kl_row;
using detail::k_matmul_acc;
using detail::k_softmax_row;
using detail::kDivFloor;

namespace {

void check_same_shape(const char* op, const Tensor& a, const Tensor& b) {
    if (!a.same_shape(b))
        throw std::invalid_argument(std::string(op) + ": shape mismatch " + shape_str(a.shape()) + " vs " +
                                    shape_str(b.shape()));
}

// da += g * b^T  (g[m x n], b[k x n] -> da[m x k])
void k_matmul_grad_a(const double* g, const double* b, double* da, std::size_t m, std::size_t k, std::size_t n) {
    for (std::size_t i = 0; i < m; ++i) {
        const double* gi = g + i * n;
        double* dai = da + i * k;
        for (std::size_t kk = 0; kk < k; ++kk) {
            const double* bk = b + kk * n;
            double s = 0.0;
            for (std::size_t j = 0; j < n; ++j) s += gi[j] * bk[j];
            dai[kk] += s;
        }
    }
}

// db += a^T * g  (a[m x k], g[m x n] -> db[k x n])
void k_matmul_grad_b(const double* a, const double* g, double* db, std::size_t m, std::size_t k, std::size_t n) {
    for (std::size_t i = 0; i < m; ++i) {
        const double* ai = a + i * k;
        const double* gi = g + i * n;
        for (std::size_t kk = 0; kk < k; ++kk) {
            double r = ai[kk];
            if (r == 0.0) continue;
            double* dbk = db + kk * n;
            for (std::size_t j = 0; j < n; ++j) dbk[j] += r * gi[j];
        }
    }
}

double vec_norm(const double* x, std::size_t n) { return detail::k_vec_norm(x, n); }

}  // namespace

const Graph::Node& Graph::node(Var v) const {
    if (!v.valid() || static_cast<std::size_t>(v.id) >= nodes_.size())
        throw std::logic_error("Graph: invalid node handle");
    return nodes_[static_cast<std::size_t>(v.id)];
}

Graph::Node& Graph::node(Var v) { return const_cast<Node&>(static_cast<const Graph*>(this)->node(v)); }

Graph::Var Graph::push(Tensor value, bool requires_grad, std::function<void(Graph&)> backprop) {
    nodes_.push_back(Node{std::move(value), requires_grad, std::move(backprop)});
    return Var{static_cast<std::int32_t>(nodes_.size()) - 1};
}

Graph::Var Graph::leaf(Tensor value, bool requires_grad) {
    return push(std::move(value), requires_grad, nullptr);
}

Graph::Var Graph::add(Var a, Var b) {
    const Tensor& ta = value(a);
    const Tensor& tb = value(b);
    check_same_shape("add", ta, tb);
    Tensor out = ta;
    for (std::size_t i = 0; i < out.size(); ++i) out[i] += tb[i];
    bool rg = wants_grad(a) || wants_grad(b);
    Var self{static_cast<std::int32_t>(nodes_.size())};
    return push(std::move(out), rg, !rg ? std::function<void(Graph&)>() : [=](Graph& g) {
        const auto& go = g.grad_buf_const(self);
        if (g.wants_grad(a)) {
            auto& da = g.grad_buf(a);
            for (std::size_t i = 0; i < go.size(); ++i) da[i] += go[i];
        }
        if (g.wants_grad(b)) {
            auto& db = g.grad_buf(b);
            for (std::size_t i = 0; i < go.size(); ++i) db[i] += go[i];
        }
    });
}

Graph::Var Graph::sub(Var a, Var b) {
    const Tensor& ta = value(a);
    const Tensor& tb = value(b);
    check_same_shape("sub", ta, tb);
    Tensor out = ta;
    for (std::size_t i = 0; i < out.size(); ++i) out[i] -= tb[i];
    bool rg = wants_grad(a) || wants_grad(b);
    Var self{static_cast<std::int32_t>(nodes_.size())};
    return push(std::move(out), rg, !rg ? std::function<void(Graph&)>() : [=](Graph& g) {
        const auto& go = g.grad_buf_const(self);
        if (g.wants_grad(a)) {
            auto& da = g.grad_buf(a);
            for (std::size_t i = 0; i < go.size(); ++i) da[i] += go[i];
        }
        if (g.wants_grad(b)) {
            auto& db = g.grad_buf(b);
            for (std::size_t i = 0; i < go.size(); ++i) db[i] -= go[i];
        }
    });
}

Graph::Var Graph::mul(Var a, Var b) {
    const Tensor& ta = value(a);
    const Tensor& tb = value(b);
    check_same_shape("mul", ta, tb);
    Tensor out = ta;
    for (std::size_t i = 0; i < out.size(); ++i) out[i] *= tb[i];
    bool rg = wants_grad(a) || wants_grad(b);
    Var self{static_cast<std::int32_t>(nodes_.size())};
    return push(std::move(out), rg, !rg ? std::function<void(Graph&)>() : [=](Graph& g) {
        const auto& go = g.grad_buf_const(self);
        const Tensor& va = g.value(a);
        const Tensor& vb = g.value(b);
        if (g.wants_grad(a)) {
            auto& da = g.grad_buf(a);
            for (std::size_t i = 0; i < go.size(); ++i) da[i] += go[i] * vb[i];
        }
        if (g.wants_grad(b)) {
            auto& db = g.grad_buf(b);
            for (std::size_t i = 0; i < go.size(); ++i) db[i] += go[i] * va[i];
        }
    });
}

Graph::Var Graph::div(Var a, Var b) {
    const Tensor& ta = value(a);
    const Tensor& tb = value(b);
    check_same_shape("div", ta, tb);
    Tensor out = ta;
    for (std::size_t i = 0; i < out.size(); ++i) {
        if (std::abs(tb[i]) < kDivFloor)
            throw NumericError("div: divisor magnitude below 1e-12 at index " + std::to_string(i));
        out[i] /= tb[i];
    }
    bool rg = wants_grad(a) || wants_grad(b);
    Var self{static_cast<std::int32_t>(nodes_.size())};
    return push(std::move(out), rg, !rg ? std::function<void(Graph&)>() : [=](Graph& g) {
        const auto& go = g.grad_buf_const(self);
        const Tensor& va = g.value(a);
        const Tensor& vb = g.value(b);
        if (g.wants_grad(a)) {
            auto& da = g.grad_buf(a);
            for (std::size_t i = 0; i < go.size(); ++i) da[i] += go[i] / vb[i];
        }
        if (g.wants_grad(b)) {
            auto& db = g.grad_buf(b);
            for (std::size_t i = 0; i < go.size(); ++i) db[i] -= go[i] * va[i] / (vb[i] * vb[i]);
        }
    });
}

Graph::Var Graph::div(Var a, double s) {
    if (std::abs(s) < kDivFloor) throw NumericError("div: scalar divisor magnitude below 1e-12");
    return affine(a, 1.0 / s, 0.0);
}

Graph::Var Graph::affine(Var a, double scale, double shift) {
    Tensor out = value(a);
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = scale * out[i] + shift;
    bool rg = wants_grad(a);
    Var self{static_cast<std::int32_t>(nodes_.size())};
    return push(std::move(out), rg, !rg ? std::function<void(Graph&)>() : [=](Graph& g) {
        const auto& go = g.grad_buf_const(self);
        auto& da = g.grad_buf(a);
        for (std::size_t i = 0; i < go.size(); ++i) da[i] += scale * go[i];
    });
}

Graph::Var Graph::exp(Var a) {
    Tensor out = value(a);
    for (std::size_t i = 0; i < out.size(); ++i) {
        out[i] = std::exp(out[i]);
        if (!std::isfinite(out[i])) throw NumericError("exp: non-finite result at index " + std::to_string(i));
    }
    bool rg = wants_grad(a);
    Var self{static_cast<std::int32_t>(nodes_.size())};
    return push(std::move(out), rg, !rg ? std::function<void(Graph&)>() : [=](Graph& g) {
        const auto& go = g.grad_buf_const(self);
        const Tensor& y = g.value(self);
        auto& da = g.grad_buf(a);
        for (std::size_t i = 0; i < go.size(); ++i) da[i] += go[i] * y[i];
    });
}

Graph::Var Graph::log(Var a) {
    const Tensor& ta = value(a);
    Tensor out = ta;
    for (std::size_t i = 0; i < out.size(); ++i) {
        if (out[i] <= 0.0) throw NumericError("log: non-positive input at index " + std::to_string(i));
        out[i] = std::log(out[i]);
    }
    bool rg = wants_grad(a);
    Var self{static_cast<std::int32_t>(nodes_.size())};
    return push(std::move(out), rg, !rg ? std::function<void(Graph&)>() : [=](Graph& g) {
        const auto& go = g.grad_buf_const(self);
        const Tensor& x = g.value(a);
        auto& da = g.grad_buf(a);
        for (std::size_t i = 0; i < go.size(); ++i) da[i] += go[i] / x[i];
    });
}

Graph::Var Graph::relu(Var a) {
    Tensor out = value(a);
    for (auto& v : out.data()) v = v > 0.0 ? v : 0.0;
    bool rg = wants_grad(a);
    Var self{static_cast<std::int32_t>(nodes_.size())};
    return push(std::move(out), rg, !rg ? std::function<void(Graph&)>() : [=](Graph& g) {
        const auto& go = g.grad_buf_const(self);
        const Tensor& x = g.value(a);
        auto& da = g.grad_buf(a);
        for (std::size_t i = 0; i < go.size(); ++i)
            if (x[i] > 0.0) da[i] += go[i];
    });
}

Graph::Var Graph::clamp(Var a, double lo, double hi) {
    if (lo > hi) throw std::invalid_argument("clamp: lo > hi");
    Tensor out = value(a);
    for (auto& v : out.data()) v = std::min(std::max(v, lo), hi);
    bool rg = wants_grad(a);
    Var self{static_cast<std::int32_t>(nodes_.size())};
    return push(std::move(out), rg, !rg ? std::function<void(Graph&)>() : [=](Graph& g) {
        const auto& go = g.grad_buf_const(self);
        const Tensor& x = g.value(a);
        auto& da = g.grad_buf(a);
        for (std::size_t i = 0; i < go.size(); ++i)
            if (x[i] >= lo && x[i] <= hi) da[i] += go[i];
    });
}

Graph::Var Graph::reshape(Var a, Shape shape) {
    const Tensor& ta = value(a);
    if (shape_numel(shape) != ta.size())
        throw std::invalid_argument("reshape: element count mismatch for " + shape_str(shape));
    Tensor out(std::move(shape), ta.data());
    bool rg = wants_grad(a);
    Var self{static_cast<std::int32_t>(nodes_.size())};
    return push(std::move(out), rg, !rg ? std::function<void(Graph&)>() : [=](Graph& g) {
        const auto& go = g.grad_buf_const(self);
        auto& da = g.grad_buf(a);
        for (std::size_t i = 0; i < go.size(); ++i) da[i] += go[i];
    });
}

Graph::Var Graph::matmul(Var a, Var b) {
    const Tensor& ta = value(a);
    const Tensor& tb = value(b);
    if (ta.rank() != 2 || tb.rank() != 2)
        throw std::invalid_argument("matmul: operands must be 2-D, got " + shape_str(ta.shape()) + " and " +
                                    shape_str(tb.shape()));
    std::size_t m = ta.shape()[0], k = ta.shape()[1], k2 = tb.shape()[0], n = tb.shape()[1];
    if (k != k2)
        throw std::invalid_argument("matmul: inner dimensions differ, " + shape_str(ta.shape()) + " x " +
                                    shape_str(tb.shape()));
    Tensor out({m, n});
    k_matmul_acc(ta.data().data(), tb.data().data(), out.data().data(), m, k, n);
    bool rg = wants_grad(a) || wants_grad(b);
    Var self{static_cast<std::int32_t>(nodes_.size())};
    return push(std::move(out), rg, !rg ? std::function<void(Graph&)>() : [=](Graph& g) {
        const auto& go = g.grad_buf_const(self);
        const Tensor& va = g.value(a);
        const Tensor& vb = g.value(b);
        if (g.wants_grad(a)) k_matmul_grad_a(go.data(), vb.data().data(), g.grad_buf(a).data(), m, k, n);
        if (g.wants_grad(b)) k_matmul_grad_b(va.data().data(), go.data(), g.grad_buf(b).data(), m, k, n);
    });
}

Graph::Var Graph::transpose(Var a) {
    const Tensor& ta = value(a);
    if (ta.rank() != 2) throw std::invalid_argument("transpose: operand must be 2-D");
    std::size_t r = ta.shape()[0], c = ta.shape()[1];
    Tensor out({c, r});
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < c; ++j) out[j * r + i] = ta[i * c + j];
    bool rg = wants_grad(a);
    Var self{static_cast<std::int32_t>(nodes_.size())};
    return push(std::move(out), rg, !rg ? std::function<void(Graph&)>() : [=](Graph& g) {
        const auto& go = g.grad_buf_const(self);
        auto& da = g.grad_buf(a);
        for (std::size_t i = 0; i < r; ++i)
            for (std::size_t j = 0; j < c; ++j) da[i * c + j] += go[j * r + i];
    });
}

Graph::Var Graph::add_rowvec(Var m, Var v) {
    const Tensor& tm = value(m);
    const Tensor& tv = value(v);
    if (tm.rank() != 2) throw std::invalid_argument("add_rowvec: matrix operand must be 2-D");
    std::size_t rows = tm.shape()[0], cols = tm.shape()[1];
    if (tv.size() != cols)
        throw std::invalid_argument("add_rowvec: vector length " + std::to_string(tv.size()) +
                                    " does not match row width " + std::to_string(cols));
    Tensor out = tm;
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j) out[i * cols + j] += tv[j];
    bool rg = wants_grad(m) || wants_grad(v);
    Var self{static_cast<std::int32_t>(nodes_.size())};
    return push(std::move(out), rg, !rg ? std::function<void(Graph&)>() : [=](Graph& g) {
        const auto& go = g.grad_buf_const(self);
        if (g.wants_grad(m)) {
            auto& dm = g.grad_buf(m);
            for (std::size_t i = 0; i < go.size(); ++i) dm[i] += go[i];
        }
        if (g.wants_grad(v)) {
            auto& dv = g.grad_buf(v);
            for (std::size_t i = 0; i < rows; ++i)
                for (std::size_t j = 0; j < cols; ++j) dv[j] += go[i * cols + j];
        }
    });
}

Graph::Var Graph::row_sum(Var m) {
    const Tensor& tm = value(m);
    if (tm.rank() != 2) throw std::invalid_argument("row_sum: operand must be 2-D");
    std::size_t rows = tm.shape()[0], cols = tm.shape()[1];
    Tensor out({rows});
    for (std::size_t i = 0; i < rows; ++i) {
        double s = 0.0;
        for (std::size_t j = 0; j < cols; ++j) s += tm[i * cols + j];
        out[i] = s;
    }
    bool rg = wants_grad(m);
    Var self{static_cast<std::int32_t>(nodes_.size())};
    return push(std::move(out), rg, !rg ? std::function<void(Graph&)>() : [=](Graph& g) {
        const auto& go = g.grad_buf_const(self);
        auto& dm = g.grad_buf(m);
        for (std::size_t i = 0; i < rows; ++i)
            for (std::size_t j = 0; j < cols; ++j) dm[i * cols + j] += go[i];
    });
}

Graph::Var Graph::sum_all(Var a) {
    const Tensor& ta = value(a);
    double s = 0.0;
    for (double v : ta.data()) s += v;
    bool rg = wants_grad(a);
    Var self{static_cast<std::int32_t>(nodes_.size())};
    return push(Tensor::scalar(s), rg, !rg ? std::function<void(Graph&)>() : [=](Graph& g) {
        double go = g.grad_buf_const(self)[0];
        auto& da = g.grad_buf(a);
        for (auto& v : da) v += go;
    });
}

Graph::Var Graph::mean_all(Var a) {
    const Tensor& ta = value(a);
    if (ta.size() == 0) throw std::invalid_argument("mean_all: empty tensor");
    double inv = 1.0 / static_cast<double>(ta.size());
    double s = 0.0;
    for (double v : ta.data()) s += v;
    bool rg = wants_grad(a);
    Var self{static_cast<std::int32_t>(nodes_.size())};
    return push(Tensor::scalar(s * inv), rg, !rg ? std::function<void(Graph&)>() : [=](Graph& g) {
        double go = g.grad_buf_const(self)[0] * inv;
        auto& da = g.grad_buf(a);
        for (auto& v : da) v += go;
    });
}

Graph::Var Graph::softmax(Var a) {
    const Tensor& ta = value(a);
    if (ta.size() == 0) throw std::invalid_argument("softmax: empty tensor");
    std::size_t rows = ta.rows(), cols = ta.cols();
    Tensor out = ta;
    for (std::size_t i = 0; i < rows; ++i) k_softmax_row(out.data().data() + i * cols, cols);
    bool rg = wants_grad(a);
    Var self{static_cast<std::int32_t>(nodes_.size())};
    return push(std::move(out), rg, !rg ? std::function<void(Graph&)>() : [=](Graph& g) {
        const auto& go = g.grad_buf_const(self);
        const Tensor& y = g.value(self);
        auto& da = g.grad_buf(a);
        for (std::size_t i = 0; i < rows; ++i) {
            const double* gi = go.data() + i * cols;
            const double* yi = y.data().data() + i * cols;
            double dot = 0.0;
            for (std::size_t j = 0; j < cols; ++j) dot += gi[j] * yi[j];
            double* di = da.data() + i * cols;
            for (std::size_t j = 0; j < cols; ++j) di[j] += (gi[j] - dot) * yi[j];
        }
    });
}

Graph::Var Graph::l2_normalize_rows(Var m) {
    const Tensor& tm = value(m);
    std::size_t rows = tm.rows(), cols = tm.cols();
    Tensor out = tm;
    std::vector<double> norms(rows);
    for (std::size_t i = 0; i < rows; ++i) {
        double* o = out.data().data() + i * cols;
        double r = vec_norm(o, cols);
        if (r < kDivFloor) throw NumericError("l2_normalize_rows: zero-norm row " + std::to_string(i));
        norms[i] = r;
        for (std::size_t j = 0; j < cols; ++j) o[j] /= r;
    }
    bool rg = wants_grad(m);
    Var self{static_cast<std::int32_t>(nodes_.size())};
    return push(std::move(out), rg,
                !rg ? std::function<void(Graph&)>() : [=, norms = std::move(norms)](Graph& g) {
                    const auto& go = g.grad_buf_const(self);
                    const Tensor& y = g.value(self);
                    auto& dm = g.grad_buf(m);
                    for (std::size_t i = 0; i < rows; ++i) {
                        const double* gi = go.data() + i * cols;
                        const double* yi = y.data().data() + i * cols;
                        double dot = 0.0;
                        for (std::size_t j = 0; j < cols; ++j) dot += gi[j] * yi[j];
                        double* di = dm.data() + i * cols;
                        for (std::size_t j = 0; j < cols; ++j) di[j] += (gi[j] - yi[j] * dot) / norms[i];
                    }
                });
}

Graph::Var Graph::cosine_sim(Var u, Var v) {
    const Tensor& tu = value(u);
    const Tensor& tv = value(v);
    if (tu.size() != tv.size()) throw std::invalid_argument("cosine_sim: length mismatch");
    std::size_t n = tu.size();
    double ru = vec_norm(tu.data().data(), n);
    double rv = vec_norm(tv.data().data(), n);
    if (ru < kDivFloor || rv < kDivFloor) throw NumericError("cosine_sim: zero-norm input");
    double dot = 0.0;
    for (std::size_t i = 0; i < n; ++i) dot += tu[i] * tv[i];
    double c = dot / (ru * rv);
    bool rg = wants_grad(u) || wants_grad(v);
    Var self{static_cast<std::int32_t>(nodes_.size())};
    return push(Tensor::scalar(c), rg, !rg ? std::function<void(Graph&)>() : [=](Graph& g) {
        double go = g.grad_buf_const(self)[0];
        const Tensor& a = g.value(u);
        const Tensor& b = g.value(v);
        if (g.wants_grad(u)) {
            auto& du = g.grad_buf(u);
            for (std::size_t i = 0; i < n; ++i) du[i] += go * (b[i] / (ru * rv) - c * a[i] / (ru * ru));
        }
        if (g.wants_grad(v)) {
            auto& dv = g.grad_buf(v);
            for (std::size_t i = 0; i < n; ++i) dv[i] += go * (a[i] / (ru * rv) - c * b[i] / (rv * rv));
        }
    });
}

Graph::Var Graph::cosine_rows(Var z, Var t) {
    const Tensor& tz = value(z);
    const Tensor& tt = value(t);
    if (tz.rank() != 2) throw std::invalid_argument("cosine_rows: first operand must be 2-D");
    std::size_t rows = tz.shape()[0], cols = tz.shape()[1];
    if (tt.size() != cols) throw std::invalid_argument("cosine_rows: target length mismatch");
    double rt = vec_norm(tt.data().data(), cols);
    if (rt < kDivFloor) throw NumericError("cosine_rows: zero-norm target");
    Tensor out({rows});
    std::vector<double> rnorm(rows);
    for (std::size_t i = 0; i < rows; ++i) {
        const double* zi = tz.data().data() + i * cols;
        double rz = vec_norm(zi, cols);
        if (rz < kDivFloor) throw NumericError("cosine_rows: zero-norm row " + std::to_string(i));
        double dot = 0.0;
        for (std::size_t j = 0; j < cols; ++j) dot += zi[j] * tt[j];
        rnorm[i] = rz;
        out[i] = dot / (rz * rt);
    }
    bool rg = wants_grad(z) || wants_grad(t);
    Var self{static_cast<std::int32_t>(nodes_.size())};
    return push(std::move(out), rg,
                !rg ? std::function<void(Graph&)>() : [=, rnorm = std::move(rnorm)](Graph& g) {
                    const auto& go = g.grad_buf_const(self);
                    const Tensor& zt = g.value(z);
                    const Tensor& tv = g.value(t);
                    const Tensor& c = g.value(self);
                    for (std::size_t i = 0; i < rows; ++i) {
                        const double* zi = zt.data().data() + i * cols;
                        double rz = rnorm[i];
                        if (g.wants_grad(z)) {
                            double* dz = g.grad_buf(z).data() + i * cols;
                            for (std::size_t j = 0; j < cols; ++j)
                                dz[j] += go[i] * (tv[j] / (rz * rt) - c[i] * zi[j] / (rz * rz));
                        }
                        if (g.wants_grad(t)) {
                            auto& dt = g.grad_buf(t);
                            for (std::size_t j = 0; j < cols; ++j)
                                dt[j] += go[i] * (zi[j] / (rz * rt) - c[i] * tv[j] / (rt * rt));
                        }
                    }
                });
}

Graph::Var Graph::kl_div(Var p, Var q) {
    const Tensor& tp = value(p);
    const Tensor& tq = value(q);
    check_same_shape("kl_div", tp, tq);
    std::size_t rows = tp.rows(), cols = tp.cols();
    Tensor out(rows > 1 || tp.rank() == 2 ? Shape{rows} : Shape{1});
    for (std::size_t i = 0; i < rows; ++i)
        out[i] = k_kl_row(tp.data().data() + i * cols, tq.data().data() + i * cols, cols, i);
    bool rg = wants_grad(p) || wants_grad(q);
    Var self{static_cast<std::int32_t>(nodes_.size())};
    return push(std::move(out), rg, !rg ? std::function<void(Graph&)>() : [=](Graph& g) {
        const auto& go = g.grad_buf_const(self);
        const Tensor& pv = g.value(p);
        const Tensor& qv = g.value(q);
        for (std::size_t i = 0; i < rows; ++i) {
            const double* pi = pv.data().data() + i * cols;
            const double* qi = qv.data().data() + i * cols;
            if (g.wants_grad(p)) {
                double* dp = g.grad_buf(p).data() + i * cols;
                for (std::size_t j = 0; j < cols; ++j)
                    if (pi[j] > 0.0) dp[j] += go[i] * (std::log(pi[j] / qi[j]) + 1.0);
            }
            if (g.wants_grad(q)) {
                double* dq = g.grad_buf(q).data() + i * cols;
                for (std::size_t j = 0; j < cols; ++j)
                    if (pi[j] > 0.0) dq[j] -= go[i] * pi[j] / qi[j];
            }
        }
    });
}

Graph::Var Graph::gather_pairs(Var m, std::vector<std::size_t> idx) {
    const Tensor& tm = value(m);
    if (tm.rank() != 2) throw std::invalid_argument("gather_pairs: operand must be 2-D");
    std::size_t rows = tm.shape()[0], cols = tm.shape()[1];
    if (idx.size() != rows) throw std::invalid_argument("gather_pairs: index count != rows");
    Tensor out({rows});
    for (std::size_t i = 0; i < rows; ++i) {
        if (idx[i] >= cols) throw std::invalid_argument("gather_pairs: index out of range");
        out[i] = tm[i * cols + idx[i]];
    }
    bool rg = wants_grad(m);
    Var self{static_cast<std::int32_t>(nodes_.size())};
    return push(std::move(out), rg,
                !rg ? std::function<void(Graph&)>() : [=, idx = std::move(idx)](Graph& g) {
                    const auto& go = g.grad_buf_const(self);
                    auto& dm = g.grad_buf(m);
                    for (std::size_t i = 0; i < rows; ++i) dm[i * cols + idx[i]] += go[i];
                });
}

Graph::Var Graph::softmax_xent(Var logits, std::vector<int> labels) {
    const Tensor& tl = value(logits);
    if (tl.rank() != 2) throw std::invalid_argument("softmax_xent: logits must be 2-D");
    std::size_t rows = tl.shape()[0], cols = tl.shape()[1];
    if (labels.size() != rows) throw std::invalid_argument("softmax_xent: label count != rows");
    if (rows == 0) throw std::invalid_argument("softmax_xent: empty batch");
    double total = 0.0;
    for (std::size_t i = 0; i < rows; ++i) {
        if (labels[i] < 0 || static_cast<std::size_t>(labels[i]) >= cols)
            throw std::invalid_argument("softmax_xent: label out of range at row " + std::to_string(i));
        const double* li = tl.data().data() + i * cols;
        double mx = li[0];
        for (std::size_t j = 1; j < cols; ++j) mx = std::max(mx, li[j]);
        double denom = 0.0;
        for (std::size_t j = 0; j < cols; ++j) denom += std::exp(li[j] - mx);
        total += std::log(denom) + mx - li[labels[i]];
    }
    bool rg = wants_grad(logits);
    Var self{static_cast<std::int32_t>(nodes_.size())};
    double inv = 1.0 / static_cast<double>(rows);
    return push(Tensor::scalar(total * inv), rg,
                !rg ? std::function<void(Graph&)>() : [=, labels = std::move(labels)](Graph& g) {
                    double go = g.grad_buf_const(self)[0] * inv;
                    const Tensor& lv = g.value(logits);
                    auto& dl = g.grad_buf(logits);
                    for (std::size_t i = 0; i < rows; ++i) {
                        const double* li = lv.data().data() + i * cols;
                        double mx = li[0];
                        for (std::size_t j = 1; j < cols; ++j) mx = std::max(mx, li[j]);
                        double denom = 0.0;
                        for (std::size_t j = 0; j < cols; ++j) denom += std::exp(li[j] - mx);
                        double* di = dl.data() + i * cols;
                        for (std::size_t j = 0; j < cols; ++j) {
                            double soft = std::exp(li[j] - mx) / denom;
                            di[j] += go * (soft - (static_cast<std::size_t>(labels[i]) == j ? 1.0 : 0.0));
                        }
                    }
                });
}

void Graph::backward(Var root) {
    const Node& r = node(root);
    if (r.value.size() != 1) throw std::invalid_argument("backward: root must be a scalar");
    if (backward_run_ && nodes_.size() == nodes_at_backward_)
        throw std::logic_error("backward: called twice without a new forward pass");
    for (std::int32_t i = 0; i <= root.id; ++i)
        if (nodes_[static_cast<std::size_t>(i)].requires_grad)
            nodes_[static_cast<std::size_t>(i)].value.ensure_grad_zeroed();
    backward_run_ = true;
    nodes_at_backward_ = nodes_.size();
    if (!r.requires_grad) return;  // constant root: all gradients are zero
    node(root).value.grad()[0] = 1.0;
    for (std::int32_t i = root.id; i >= 0; --i) {
        Node& n = nodes_[static_cast<std::size_t>(i)];
        if (n.requires_grad && n.backprop) n.backprop(*this);
    }
}

Tensor Graph::grad(Var v) const {
    const Node& n = node(v);
    if (!n.requires_grad || !n.value.has_grad())
        throw std::logic_error("Graph::grad: no gradient tracked for this node");
    return Tensor(n.value.shape(), n.value.grad());
}

}  // namespace awenc::num
