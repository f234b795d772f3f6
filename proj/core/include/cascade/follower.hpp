#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "cascade/network.hpp"
#include "cascade/polytope.hpp"

namespace cascade {

/// Leader decision: binary disable vector under a cardinality budget.
struct AttackVector {
    BinaryVector x;
    int budget = 0;

    AttackVector() = default;
    AttackVector(BinaryVector x_, int budget_);  // validates entries and budget
    static AttackVector from_ids(int n_assets, const std::vector<int>& ids, int budget);

    int count() const;
    std::vector<int> ids() const;
};

/// Stage-by-stage worst-case cascade under one attack.
struct CascadeResult {
    // levels[f][i]: service level of asset f at stage i (0-based stages).
    std::vector<std::vector<double>> levels;
    // lambdas[f][i]: capacity dual of the worst-case solve; NaN for assets
    // without an uncertainty set.
    std::vector<std::vector<double>> lambdas;
    // worst_weights[f][i]: minimizing arc weights in spec coordinate order;
    // empty for assets without a set.
    std::vector<std::vector<std::vector<double>>> worst_weights;
    double objective = 0.0;  // sum_f sum_i W_f levels[f][i]
    int n_stages = 0;
};

/// Clipped linear degradation [1 - P'd]+.
double evaluate_phi(const std::vector<double>& weights, const std::vector<double>& disruption);

/// Forward worst-case cascade: stage 1 caps at 1 - x_f and the per-asset
/// worst-case level under the attacked upstreams; later stages cap at the
/// previous level and the worst case under upstream outages 1 - y.
/// Every stage bound is nondecreasing in the previous levels and weights
/// are nonnegative, so the coordinatewise greedy pass attains the follower
/// optimum (cross-checked against solve_follower_mccormick in the tests).
CascadeResult solve_follower(const Network& network, const PolytopeFamily& family,
                             const AttackVector& attack, int n_stages);

struct McCormickOptions {
    int cap = 24;  // maximum assets * stages admitted to the enumeration
};

/// Independent validator: enumerates the binary capacity multipliers and
/// solves the remaining LP with McCormick rows for each assignment,
/// returning the best objective. Exact for binary multipliers.
/// Throws std::invalid_argument when assets * stages exceeds the cap.
double solve_follower_mccormick(const Network& network, const PolytopeFamily& family,
                                const AttackVector& attack, int n_stages,
                                const McCormickOptions& options = {});

/// Weighted network service level per stage, non-increasing.
std::vector<double> service_level_trajectory(const CascadeResult& result, const Network& network);

/// Per-stage histogram of individual asset levels over [0,1].
std::vector<std::vector<int>> service_level_histogram(const CascadeResult& result, int bins);

std::string to_json_string(const CascadeResult& result);

void write_trajectory_csv(std::ostream& out, const std::vector<double>& trajectory);
void write_histogram_csv(std::ostream& out, const std::vector<std::vector<int>>& histogram,
                         int bins);
/// Stage-to-stage changes of the realized worst-case weights, one row per
/// (asset, upstream, stage pair).
void write_weight_delta_csv(std::ostream& out, const CascadeResult& result,
                            const PolytopeFamily& family);

}  // namespace cascade
