#pragma once

#include <cstdint>
#include <iosfwd>
#include <utility>
#include <vector>

#include "cascade/network.hpp"
#include "cascade/polytope.hpp"

namespace cascade {

struct EnumerationResult {
    BinaryVector x_opt;
    double objective = 0.0;
    std::uint64_t n_evaluated = 0;
    // Populated only when requested: every feasible decision with its value.
    std::vector<std::pair<BinaryVector, double>> table;
};

/// Number of binary vectors of length n with at most `budget` ones,
/// saturating at uint64 max.
std::uint64_t count_feasible(int n, int budget);

/// Ground truth by exhaustive enumeration of the leader's feasible set.
/// Ties resolve to the lexicographically smallest vector. Throws
/// std::invalid_argument when the enumeration would exceed `guard`.
EnumerationResult enumerate_optimal(const Network& network, const PolytopeFamily& family,
                                    int n_stages, int budget, std::uint64_t guard = 200000,
                                    bool keep_table = false);

void write_enumeration_csv(std::ostream& out, const EnumerationResult& result);

}  // namespace cascade
