#include "cascade/network.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>

#include "cascade/rng.hpp"
#include <json.hpp>

namespace cascade {

namespace {

using Json = nlohmann::json;

constexpr double kRawFrequencies[kNumAssetClasses] = {
    0.0438,   // CellTower
    0.0501,   // EMS
    0.00887,  // ThermalGeneration
    0.0162,   // RenewableGeneration
    0.178,    // Substation
    0.0391,   // HealthCare
    0.527,    // Pharmacies
    0.0318,   // Transport
    0.105,    // Water
};

constexpr std::string_view kClassNames[kNumAssetClasses] = {
    "CellTower",          "EMS",        "ThermalGeneration", "RenewableGeneration",
    "Substation",         "HealthCare", "Pharmacies",        "Transport",
    "Water",
};

std::array<AssetClassInfo, kNumAssetClasses> build_class_table() {
    double sum = 0.0;
    for (double f : kRawFrequencies) sum += f;
    std::array<AssetClassInfo, kNumAssetClasses> table{};
    for (int i = 0; i < kNumAssetClasses; ++i) {
        table[static_cast<std::size_t>(i)] = AssetClassInfo{
            static_cast<AssetClass>(i), kClassNames[i], kRawFrequencies[i] / sum,
            kRawFrequencies[i], weight_from_frequency(kRawFrequencies[i])};
    }
    return table;
}

}  // namespace

const std::array<AssetClassInfo, kNumAssetClasses>& asset_class_table() {
    static const auto table = build_class_table();
    return table;
}

const std::vector<AssetClass>& upstream_classes(AssetClass cls) {
    using C = AssetClass;
    static const std::array<std::vector<AssetClass>, kNumAssetClasses> deps = {{
        /* CellTower */ {C::Substation},
        /* EMS */ {C::Substation, C::CellTower, C::Water, C::HealthCare},
        /* ThermalGeneration */ {C::Transport, C::CellTower},
        /* RenewableGeneration */ {C::CellTower},
        // "Thermal or Renewable generation" flattened to two upstream classes;
        // the arc weights decide the relative reliance.
        /* Substation */ {C::ThermalGeneration, C::RenewableGeneration, C::CellTower},
        /* HealthCare */ {C::Transport, C::EMS, C::Substation, C::CellTower, C::Water},
        /* Pharmacies */ {C::Transport, C::Substation, C::CellTower, C::Water},
        /* Transport */ {C::CellTower, C::Substation, C::Water},
        /* Water */ {C::Substation, C::Transport, C::CellTower},
    }};
    int i = static_cast<int>(cls);
    if (i < 0 || i >= kNumAssetClasses) throw std::invalid_argument("unknown asset class");
    return deps[static_cast<std::size_t>(i)];
}

std::string_view to_string(AssetClass cls) {
    int i = static_cast<int>(cls);
    if (i < 0 || i >= kNumAssetClasses) throw std::invalid_argument("unknown asset class");
    return kClassNames[i];
}

AssetClass asset_class_from_name(std::string_view name) {
    for (int i = 0; i < kNumAssetClasses; ++i) {
        if (kClassNames[i] == name) return static_cast<AssetClass>(i);
    }
    throw std::invalid_argument("unknown asset class: " + std::string(name));
}

int weight_from_frequency(double freq) {
    if (!(freq > 0.0) || freq > 1.0) {
        throw std::domain_error("frequency must lie in (0, 1]");
    }
    return static_cast<int>(std::lround(1.0 / freq));
}

Network::Network(std::vector<Asset> assets, std::vector<DependencyArc> arcs)
    : assets_(std::move(assets)), arcs_(std::move(arcs)) {
    validate_and_index();
}

void Network::validate_and_index() {
    const int n = static_cast<int>(assets_.size());
    for (int i = 0; i < n; ++i) {
        if (assets_[static_cast<std::size_t>(i)].id != i) {
            throw std::invalid_argument("asset ids must be unique and contiguous from 0");
        }
        if (assets_[static_cast<std::size_t>(i)].weight < 1) {
            throw std::invalid_argument("asset weight must be >= 1");
        }
    }
    in_.assign(static_cast<std::size_t>(n), {});
    out_.assign(static_cast<std::size_t>(n), {});
    std::set<std::pair<int, int>> seen;
    for (const auto& arc : arcs_) {
        if (arc.src < 0 || arc.src >= n || arc.dst < 0 || arc.dst >= n) {
            throw std::invalid_argument("arc endpoint out of range");
        }
        if (arc.src == arc.dst) throw std::invalid_argument("self-loop arc");
        if (!seen.insert({arc.src, arc.dst}).second) {
            throw std::invalid_argument("duplicate arc");
        }
        const auto& ups = upstream_classes(assets_[static_cast<std::size_t>(arc.dst)].cls);
        AssetClass src_cls = assets_[static_cast<std::size_t>(arc.src)].cls;
        if (std::find(ups.begin(), ups.end(), src_cls) == ups.end()) {
            throw std::invalid_argument("arc violates the class dependency table");
        }
        in_[static_cast<std::size_t>(arc.dst)].push_back(arc.src);
        out_[static_cast<std::size_t>(arc.src)].push_back(arc.dst);
    }
    for (auto& v : in_) std::sort(v.begin(), v.end());
    for (auto& v : out_) std::sort(v.begin(), v.end());
    total_weight_ = 0.0;
    for (const auto& a : assets_) total_weight_ += a.weight;
}

double Network::distance(int a, int b) const {
    const auto& pa = assets_[static_cast<std::size_t>(a)].pos;
    const auto& pb = assets_[static_cast<std::size_t>(b)].pos;
    return std::hypot(pa[0] - pb[0], pa[1] - pb[1]);
}

Network generate_network(const GenerationConfig& config) {
    if (config.n_assets < 0) throw std::invalid_argument("n_assets must be >= 0");
    Rng rng(config.seed);
    const auto& table = asset_class_table();
    std::vector<double> freqs(kNumAssetClasses);
    for (int i = 0; i < kNumAssetClasses; ++i) freqs[static_cast<std::size_t>(i)] = table[static_cast<std::size_t>(i)].frequency;

    std::vector<Asset> assets;
    assets.reserve(static_cast<std::size_t>(config.n_assets));
    for (int id = 0; id < config.n_assets; ++id) {
        auto cls = static_cast<AssetClass>(rng.categorical(freqs));
        double x = rng.uniform(0.0, config.area);
        double y = rng.uniform(0.0, config.area);
        assets.push_back(Asset{id, cls, {x, y}, table[static_cast<std::size_t>(cls)].weight});
    }

    std::vector<DependencyArc> arcs;
    for (int dst = 0; dst < config.n_assets; ++dst) {
        const auto& ups = upstream_classes(assets[static_cast<std::size_t>(dst)].cls);
        for (int src = 0; src < config.n_assets; ++src) {
            if (src == dst) continue;
            AssetClass src_cls = assets[static_cast<std::size_t>(src)].cls;
            if (std::find(ups.begin(), ups.end(), src_cls) == ups.end()) continue;
            double dx = assets[static_cast<std::size_t>(src)].pos[0] - assets[static_cast<std::size_t>(dst)].pos[0];
            double dy = assets[static_cast<std::size_t>(src)].pos[1] - assets[static_cast<std::size_t>(dst)].pos[1];
            if (std::hypot(dx, dy) <= config.threshold) {
                arcs.push_back(DependencyArc{src, dst});
            }
        }
    }
    return Network(std::move(assets), std::move(arcs));
}

namespace {

Json instance_to_json(const NetworkInstance& instance) {
    Json j;
    j["assets"] = Json::array();
    for (const auto& a : instance.network.assets()) {
        j["assets"].push_back({{"id", a.id},
                               {"class", std::string(to_string(a.cls))},
                               {"pos", {a.pos[0], a.pos[1]}},
                               {"weight", a.weight}});
    }
    j["arcs"] = Json::array();
    for (const auto& arc : instance.network.arcs()) {
        j["arcs"].push_back({{"src", arc.src}, {"dst", arc.dst}});
    }
    j["uncertainty"] = {{"delta", instance.delta},
                        {"threshold", instance.threshold},
                        {"min_distance", instance.min_distance}};
    return j;
}

NetworkInstance instance_from(const Json& j) {
    std::vector<Asset> assets;
    for (const auto& a : j.at("assets")) {
        Asset asset;
        asset.id = a.at("id").get<int>();
        asset.cls = asset_class_from_name(a.at("class").get<std::string>());
        asset.pos = {a.at("pos").at(0).get<double>(), a.at("pos").at(1).get<double>()};
        if (a.contains("weight")) {
            asset.weight = a.at("weight").get<int>();
        } else {
            asset.weight = asset_class_table()[static_cast<std::size_t>(asset.cls)].weight;
        }
        assets.push_back(asset);
    }
    std::vector<DependencyArc> arcs;
    for (const auto& e : j.at("arcs")) {
        arcs.push_back(DependencyArc{e.at("src").get<int>(), e.at("dst").get<int>()});
    }
    NetworkInstance instance;
    instance.network = Network(std::move(assets), std::move(arcs));
    if (j.contains("uncertainty")) {
        const auto& u = j.at("uncertainty");
        instance.delta = u.at("delta").get<double>();
        instance.threshold = u.at("threshold").get<double>();
        if (u.contains("min_distance")) instance.min_distance = u.at("min_distance").get<double>();
    }
    return instance;
}

}  // namespace

std::string to_json_string(const NetworkInstance& instance) {
    return instance_to_json(instance).dump(2) + "\n";
}

NetworkInstance instance_from_json(const std::string& text) {
    Json j;
    try {
        j = Json::parse(text);
    } catch (const Json::parse_error& e) {
        throw std::runtime_error(std::string("network JSON parse error: ") + e.what());
    }
    try {
        return instance_from(j);
    } catch (const Json::exception& e) {
        throw std::runtime_error(std::string("network JSON field error: ") + e.what());
    }
}

void save_instance(const NetworkInstance& instance, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    out << to_json_string(instance);
    if (!out) throw std::runtime_error("write failed: " + path);
}

NetworkInstance load_instance(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open network file: " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    return instance_from_json(buf.str());
}

std::string to_json_string(const GenerationConfig& config) {
    Json j = {{"seed", config.seed},       {"n_assets", config.n_assets},
              {"area", config.area},       {"threshold", config.threshold},
              {"delta", config.delta},     {"min_distance", config.min_distance}};
    return j.dump(2) + "\n";
}

GenerationConfig generation_config_from_json(const std::string& text) {
    Json j;
    try {
        j = Json::parse(text);
    } catch (const Json::parse_error& e) {
        throw std::runtime_error(std::string("generation config parse error: ") + e.what());
    }
    GenerationConfig config;
    try {
        config.seed = j.at("seed").get<std::uint64_t>();
        config.n_assets = j.at("n_assets").get<int>();
        if (j.contains("area")) config.area = j.at("area").get<double>();
        if (j.contains("threshold")) config.threshold = j.at("threshold").get<double>();
        if (j.contains("delta")) config.delta = j.at("delta").get<double>();
        if (j.contains("min_distance")) config.min_distance = j.at("min_distance").get<double>();
    } catch (const Json::exception& e) {
        throw std::runtime_error(std::string("generation config field error: ") + e.what());
    }
    return config;
}

}  // namespace cascade
