#pragma once

#include <random>
#include <vector>

#include "cascade/follower.hpp"
#include "cascade/network.hpp"
#include "cascade/polytope.hpp"

namespace testutil {

// Dense generation: a large threshold keeps every class-compatible pair.
inline cascade::Network make_network(std::uint64_t seed, int n, double threshold = 200.0) {
    cascade::GenerationConfig config;
    config.seed = seed;
    config.n_assets = n;
    config.area = 100.0;
    config.threshold = threshold;
    return cascade::generate_network(config);
}

inline cascade::PolytopeFamily make_family(const cascade::Network& net, double delta = 0.1,
                                           double threshold = 200.0) {
    return cascade::base_weights(net, threshold, delta);
}

// Pharmacies asset 2 fed by two substations at distances 1 and 2.
inline cascade::Network pharmacy_pair() {
    using namespace cascade;
    std::vector<Asset> assets{
        Asset{0, AssetClass::Substation, {1.0, 0.0}, 6},
        Asset{1, AssetClass::Substation, {2.0, 0.0}, 6},
        Asset{2, AssetClass::Pharmacies, {0.0, 0.0}, 2},
    };
    std::vector<DependencyArc> arcs{{0, 2}, {1, 2}};
    return Network(std::move(assets), std::move(arcs));
}

// Substation 0 feeding cell tower 1; the single arc forces weight one.
inline cascade::Network chain2() {
    using namespace cascade;
    std::vector<Asset> assets{
        Asset{0, AssetClass::Substation, {0.0, 0.0}, 6},
        Asset{1, AssetClass::CellTower, {3.0, 0.0}, 23},
    };
    std::vector<DependencyArc> arcs{{0, 1}};
    return Network(std::move(assets), std::move(arcs));
}

inline cascade::AttackVector random_attack(std::mt19937_64& rng, int n, int budget) {
    cascade::BinaryVector x(static_cast<std::size_t>(n), 0);
    std::vector<int> ids(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) ids[static_cast<std::size_t>(i)] = i;
    for (int i = n - 1; i > 0; --i) {
        std::swap(ids[static_cast<std::size_t>(i)],
                  ids[static_cast<std::size_t>(rng() % static_cast<std::uint64_t>(i + 1))]);
    }
    int count = budget == 0 ? 0 : static_cast<int>(rng() % static_cast<std::uint64_t>(budget + 1));
    std::vector<int> picked(ids.begin(), ids.begin() + count);
    return cascade::AttackVector::from_ids(n, picked, budget);
}

}  // namespace testutil
