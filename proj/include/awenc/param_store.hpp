#pragma once

#include <string>
#include <unordered_map>
#include <vector>

#include "awenc/tensor.hpp"

namespace awenc::models {

/// Named, ordered collection of parameter tensors. Value-semantic: copying
/// a store snapshots the model. Entry order is declaration order and is
/// what checkpoint serialization and pruning tie-breaks rely on.
class ParamStore {
public:
    void add(std::string name, num::Tensor t);
    bool has(const std::string& name) const { return index_.count(name) != 0; }
    num::Tensor& at(const std::string& name);
    const num::Tensor& at(const std::string& name) const;
    num::Tensor& at(std::size_t i) { return tensors_[i]; }
    const num::Tensor& at(std::size_t i) const { return tensors_[i]; }
    const std::string& name(std::size_t i) const { return names_[i]; }
    std::size_t size() const { return tensors_.size(); }
    std::size_t total_elements() const;

    /// true when names and shapes match entrywise
    bool same_layout(const ParamStore& other) const;
    bool same_values(const ParamStore& other) const;

private:
    std::vector<std::string> names_;
    std::vector<num::Tensor> tensors_;
    std::unordered_map<std::string, std::size_t> index_;
};

}  // namespace awenc::models
