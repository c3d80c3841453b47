#pragma once

#include <cmath>
#include <cstddef>
#include <string>

#include "awenc/errors.hpp"

// Shared inner loops so the graph ops and the value-only evaluation path
// run identical arithmetic.
namespace awenc::num::detail {

constexpr double kDivFloor = 1e-12;

// c += a * b for row-major a[m x k], b[k x n]
inline void k_matmul_acc(const double* a, const double* b, double* c, std::size_t m, std::size_t k,
                         std::size_t n) {
    for (std::size_t i = 0; i < m; ++i) {
        const double* ai = a + i * k;
        double* ci = c + i * n;
        for (std::size_t kk = 0; kk < k; ++kk) {
            double r = ai[kk];
            const double* bk = b + kk * n;
            for (std::size_t j = 0; j < n; ++j) ci[j] += r * bk[j];
        }
    }
}

inline double k_vec_norm(const double* x, std::size_t n) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += x[i] * x[i];
    return std::sqrt(s);
}

// in-place stable softmax of one row
inline void k_softmax_row(double* o, std::size_t n) {
    double mx = o[0];
    for (std::size_t j = 1; j < n; ++j) mx = std::max(mx, o[j]);
    double denom = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
        o[j] = std::exp(o[j] - mx);
        denom += o[j];
    }
    for (std::size_t j = 0; j < n; ++j) o[j] /= denom;
}

// KL(p||q) of one row with validation; `row` only feeds error messages
inline double k_kl_row(const double* p, const double* q, std::size_t n, std::size_t row) {
    double sp = 0.0, sq = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
        if (p[j] < 0.0 || q[j] < 0.0) throw NumericError("kl_div: negative entry in row " + std::to_string(row));
        sp += p[j];
        sq += q[j];
    }
    if (std::abs(sp - 1.0) > 1e-6 || std::abs(sq - 1.0) > 1e-6)
        throw NumericError("kl_div: non-normalized input in row " + std::to_string(row));
    double s = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
        if (p[j] == 0.0) continue;  // 0*log(0/q) := 0
        if (q[j] < kDivFloor)
            throw NumericError("kl_div: q below 1e-12 where p > 0, row " + std::to_string(row) + " index " +
                               std::to_string(j));
        s += p[j] * std::log(p[j] / q[j]);
    }
    return s;
}

inline double k_cosine(const double* u, const double* v, std::size_t n) {
    double ru = k_vec_norm(u, n);
    double rv = k_vec_norm(v, n);
    if (ru < kDivFloor || rv < kDivFloor) throw NumericError("cosine_sim: zero-norm input");
    double dot = 0.0;
    for (std::size_t i = 0; i < n; ++i) dot += u[i] * v[i];
    return dot / (ru * rv);
}

}  // namespace awenc::num::detail
