#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace awenc::num {

using Shape = std::vector<std::size_t>;

std::size_t shape_numel(const Shape& s);
std::string shape_str(const Shape& s);

/// Dense row-major tensor of doubles. Value semantics throughout; the
/// optional grad buffer is filled by Graph::backward and always matches the
/// data shape.
class Tensor {
public:
    Tensor() = default;
    explicit Tensor(Shape shape);  // zero-filled
    Tensor(Shape shape, std::vector<double> data);

    static Tensor scalar(double v) { return Tensor({1}, {v}); }
    static Tensor zeros(Shape shape) { return Tensor(std::move(shape)); }
    static Tensor full(Shape shape, double v);

    const Shape& shape() const { return shape_; }
    std::size_t size() const { return data_.size(); }
    std::size_t rank() const { return shape_.size(); }

    // 2-D helpers; a rank-1 tensor counts as a single row
    std::size_t rows() const;
    std::size_t cols() const;

    double& operator[](std::size_t i) { return data_[i]; }
    double operator[](std::size_t i) const { return data_[i]; }
    double& at(std::size_t r, std::size_t c);
    double at(std::size_t r, std::size_t c) const;

    /// Value of a one-element tensor.
    double item() const;

    std::vector<double>& data() { return data_; }
    const std::vector<double>& data() const { return data_; }
    std::span<const double> row(std::size_t r) const;

    bool same_shape(const Tensor& other) const { return shape_ == other.shape_; }
    bool all_finite() const;

    bool has_grad() const { return grad_.has_value(); }
    std::vector<double>& grad();
    const std::vector<double>& grad() const;
    void ensure_grad_zeroed();
    void drop_grad() { grad_.reset(); }

private:
    Shape shape_;
    std::vector<double> data_;
    std::optional<std::vector<double>> grad_;
};

}  // namespace awenc::num
