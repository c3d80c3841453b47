#include "awenc/checkpoint.hpp"

#include <json.hpp>

#include "awenc/binio.hpp"
#include "awenc/errors.hpp"

namespace awenc::models {

namespace {
constexpr std::uint32_t kCheckpointVersion = 1;
}

void Checkpoint::add(std::string name, Mlp model) {
    if (has(name)) throw std::invalid_argument("Checkpoint: duplicate component '" + name + "'");
    components_.emplace_back(std::move(name), std::move(model));
}

bool Checkpoint::has(const std::string& name) const {
    for (const auto& [n, m] : components_)
        if (n == name) return true;
    return false;
}

const Mlp& Checkpoint::get(const std::string& name) const {
    for (const auto& [n, m] : components_)
        if (n == name) return m;
    throw std::invalid_argument("Checkpoint: no component '" + name + "'");
}

std::vector<std::uint8_t> Checkpoint::serialize() const {
    nlohmann::json header;
    header["components"] = nlohmann::json::array();
    for (const auto& [name, model] : components_) {
        header["components"].push_back({{"name", name},
                                        {"input_dim", model.config().input_dim},
                                        {"hidden", model.config().hidden},
                                        {"output_dim", model.config().output_dim}});
    }
    io::ByteWriter w;
    w.magic("AWCK");
    w.u32(kCheckpointVersion);
    w.str(header.dump());
    for (const auto& [name, model] : components_) {
        const ParamStore& ps = model.params();
        for (std::size_t i = 0; i < ps.size(); ++i) {
            const auto& t = ps.at(i);
            w.u64(t.size());
            for (double v : t.data()) w.f64(v);
        }
    }
    return w.buffer();
}

void Checkpoint::save(const std::string& path) const {
    io::ByteWriter w;
    auto bytes = serialize();
    w.raw(reinterpret_cast<const char*>(bytes.data()), bytes.size());
    w.write_file(path);
}

Checkpoint Checkpoint::load(const std::string& path) {
    auto r = io::ByteReader::from_file(path);
    r.expect_magic("AWCK", "checkpoint " + path);
    std::uint32_t version = r.u32();
    if (version != kCheckpointVersion)
        throw ConfigError("checkpoint " + path + ": unsupported format version " + std::to_string(version));
    nlohmann::json header;
    try {
        header = nlohmann::json::parse(r.str());
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError("checkpoint " + path + ": bad header: " + e.what());
    }
    Checkpoint ck;
    for (const auto& comp : header.at("components")) {
        MlpConfig cfg;
        cfg.input_dim = comp.at("input_dim").get<std::size_t>();
        cfg.hidden = comp.at("hidden").get<std::vector<std::size_t>>();
        cfg.output_dim = comp.at("output_dim").get<std::size_t>();
        ParamStore ps;
        std::size_t li = 0;
        for (const auto& layer : cfg.layers()) {
            num::Tensor wt({layer.in, layer.out});
            num::Tensor bt({layer.out});
            for (num::Tensor* t : {&wt, &bt}) {
                std::uint64_t n = r.u64();
                if (n != t->size())
                    throw ConfigError("checkpoint " + path + ": tensor size mismatch in component '" +
                                      comp.at("name").get<std::string>() + "'");
                for (auto& v : t->data()) v = r.f64();
            }
            ps.add("layer" + std::to_string(li) + ".weight", std::move(wt));
            ps.add("layer" + std::to_string(li) + ".bias", std::move(bt));
            ++li;
        }
        ck.add(comp.at("name").get<std::string>(), Mlp(cfg, std::move(ps)));
    }
    r.expect_end("checkpoint " + path);
    return ck;
}

std::uint64_t Checkpoint::fingerprint() const {
    auto bytes = serialize();
    return io::fnv1a64(bytes);
}

}  // namespace awenc::models
