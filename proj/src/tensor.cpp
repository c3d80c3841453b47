#include "awenc/tensor.hpp"

#include <cmath>
#include <stdexcept>

namespace awenc::num {

std::size_t shape_numel(const Shape& s) {
    std::size_t n = 1;
    for (auto d : s) n *= d;
    return n;
}

std::string shape_str(const Shape& s) {
    std::string out = "[";
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (i) out += "x";
        out += std::to_string(s[i]);
    }
    return out + "]";
}

Tensor::Tensor(Shape shape) : shape_(std::move(shape)), data_(shape_numel(shape_), 0.0) {}

Tensor::Tensor(Shape shape, std::vector<double> data) : shape_(std::move(shape)), data_(std::move(data)) {
    if (data_.size() != shape_numel(shape_))
        throw std::invalid_argument("Tensor: data length " + std::to_string(data_.size()) +
                                    " does not match shape " + shape_str(shape_));
}

Tensor Tensor::full(Shape shape, double v) {
    Tensor t(std::move(shape));
    for (auto& x : t.data_) x = v;
    return t;
}

std::size_t Tensor::rows() const { return shape_.size() >= 2 ? shape_[0] : 1; }

std::size_t Tensor::cols() const {
    if (shape_.empty()) return 0;
    return shape_.size() >= 2 ? shape_[1] : shape_[0];
}

double& Tensor::at(std::size_t r, std::size_t c) { return data_[r * cols() + c]; }
double Tensor::at(std::size_t r, std::size_t c) const { return data_[r * cols() + c]; }

double Tensor::item() const {
    if (data_.size() != 1)
        throw std::invalid_argument("Tensor::item: tensor has " + std::to_string(data_.size()) + " elements");
    return data_[0];
}

std::span<const double> Tensor::row(std::size_t r) const {
    return std::span<const double>(data_.data() + r * cols(), cols());
}

bool Tensor::all_finite() const {
    for (double v : data_)
        if (!std::isfinite(v)) return false;
    return true;
}

std::vector<double>& Tensor::grad() {
    if (!grad_) throw std::logic_error("Tensor::grad: no gradient buffer");
    return *grad_;
}

const std::vector<double>& Tensor::grad() const {
    if (!grad_) throw std::logic_error("Tensor::grad: no gradient buffer");
    return *grad_;
}

void Tensor::ensure_grad_zeroed() {
    if (!grad_)
        grad_.emplace(data_.size(), 0.0);
    else
        grad_->assign(data_.size(), 0.0);
}

}  // namespace awenc::num
