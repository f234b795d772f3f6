#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace cascade {

using BinaryVector = std::vector<std::uint8_t>;

/// The nine infrastructure asset classes.
enum class AssetClass : int {
    CellTower = 0,
    EMS,
    ThermalGeneration,
    RenewableGeneration,
    Substation,
    HealthCare,
    Pharmacies,
    Transport,
    Water,
};

inline constexpr int kNumAssetClasses = 9;

/// Static per-class data: sampling frequency and importance weight.
///
/// `raw_frequency` is the published survey value; the stored `frequency`
/// is renormalized so the nine entries sum to exactly 1 (the raw values
/// sum to 0.99987). Weights are round(1 / raw_frequency).
struct AssetClassInfo {
    AssetClass cls;
    std::string_view name;
    double frequency;      // normalized, sums to 1 over all classes
    double raw_frequency;  // as published
    int weight;
};

const std::array<AssetClassInfo, kNumAssetClasses>& asset_class_table();

/// Upstream dependency classes for `cls` (the class-level dependency map).
const std::vector<AssetClass>& upstream_classes(AssetClass cls);

std::string_view to_string(AssetClass cls);
AssetClass asset_class_from_name(std::string_view name);  // throws std::invalid_argument

/// Importance weight inversely proportional to class frequency: round(1/freq).
/// Throws std::domain_error unless 0 < freq <= 1.
int weight_from_frequency(double freq);

struct Asset {
    int id = 0;
    AssetClass cls = AssetClass::CellTower;
    std::array<double, 2> pos{0.0, 0.0};
    int weight = 1;
};

/// Directed dependency arc: dst depends on src.
struct DependencyArc {
    int src = 0;
    int dst = 0;
    friend bool operator==(const DependencyArc&, const DependencyArc&) = default;
};

/// Immutable after construction; safe to share read-only across solver runs.
class Network {
  public:
    Network() = default;
    Network(std::vector<Asset> assets, std::vector<DependencyArc> arcs);

    const std::vector<Asset>& assets() const { return assets_; }
    const std::vector<DependencyArc>& arcs() const { return arcs_; }
    int size() const { return static_cast<int>(assets_.size()); }

    double weight(int id) const { return assets_[static_cast<std::size_t>(id)].weight; }
    double total_weight() const { return total_weight_; }

    /// Asset ids with an arc into `id`, ascending.
    const std::vector<int>& upstream(int id) const { return in_[static_cast<std::size_t>(id)]; }
    /// Asset ids fed by `id`, ascending.
    const std::vector<int>& downstream(int id) const { return out_[static_cast<std::size_t>(id)]; }

    double distance(int a, int b) const;

  private:
    void validate_and_index();

    std::vector<Asset> assets_;
    std::vector<DependencyArc> arcs_;
    std::vector<std::vector<int>> in_;
    std::vector<std::vector<int>> out_;
    double total_weight_ = 0.0;
};

struct GenerationConfig {
    std::uint64_t seed = 0;
    int n_assets = 0;
    double area = 100.0;
    double threshold = 30.0;
    double delta = 0.1;
    double min_distance = 1e-3;
};

/// Deterministic synthetic network: classes drawn i.i.d. from the class
/// frequencies, positions uniform in an `area` x `area` square, arcs for
/// every class-compatible ordered pair within `threshold` distance.
Network generate_network(const GenerationConfig& config);

/// A network plus the uncertainty-set parameters it was built with.
struct NetworkInstance {
    Network network;
    double delta = 0.1;
    double threshold = 30.0;
    double min_distance = 1e-3;
};

std::string to_json_string(const NetworkInstance& instance);
NetworkInstance instance_from_json(const std::string& text);  // throws std::runtime_error

void save_instance(const NetworkInstance& instance, const std::string& path);
NetworkInstance load_instance(const std::string& path);

std::string to_json_string(const GenerationConfig& config);
GenerationConfig generation_config_from_json(const std::string& text);

}  // namespace cascade
