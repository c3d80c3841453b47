#include "awenc/param_store.hpp"

#include <stdexcept>

namespace awenc::models {

void ParamStore::add(std::string name, num::Tensor t) {
    if (index_.count(name)) throw std::invalid_argument("ParamStore: duplicate name '" + name + "'");
    index_[name] = tensors_.size();
    names_.push_back(std::move(name));
    tensors_.push_back(std::move(t));
}

num::Tensor& ParamStore::at(const std::string& name) {
    auto it = index_.find(name);
    if (it == index_.end()) throw std::invalid_argument("ParamStore: no parameter '" + name + "'");
    return tensors_[it->second];
}

const num::Tensor& ParamStore::at(const std::string& name) const {
    auto it = index_.find(name);
    if (it == index_.end()) throw std::invalid_argument("ParamStore: no parameter '" + name + "'");
    return tensors_[it->second];
}

std::size_t ParamStore::total_elements() const {
    std::size_t n = 0;
    for (const auto& t : tensors_) n += t.size();
    return n;
}

bool ParamStore::same_layout(const ParamStore& other) const {
    if (size() != other.size()) return false;
    for (std::size_t i = 0; i < size(); ++i)
        if (names_[i] != other.names_[i] || !tensors_[i].same_shape(other.tensors_[i])) return false;
    return true;
}

bool ParamStore::same_values(const ParamStore& other) const {
    if (!same_layout(other)) return false;
    for (std::size_t i = 0; i < size(); ++i)
        if (tensors_[i].data() != other.tensors_[i].data()) return false;
    return true;
}

}  // namespace awenc::models
