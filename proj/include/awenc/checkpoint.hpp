#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "awenc/models.hpp"

namespace awenc::models {

/// Container persisted as an "AWCK" file: a versioned header carrying each
/// component's architecture as JSON, followed by raw little-endian doubles
/// per named tensor in declaration order. Round-trips bit-exactly.
class Checkpoint {
public:
    void add(std::string name, Mlp model);
    bool has(const std::string& name) const;
    const Mlp& get(const std::string& name) const;
    const std::vector<std::pair<std::string, Mlp>>& components() const { return components_; }

    std::vector<std::uint8_t> serialize() const;
    void save(const std::string& path) const;
    static Checkpoint load(const std::string& path);
    std::uint64_t fingerprint() const;

private:
    std::vector<std::pair<std::string, Mlp>> components_;
};

}  // namespace awenc::models
