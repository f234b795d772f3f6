#pragma once

#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "cascade/network.hpp"
#include "cascade/polytope.hpp"

namespace cascade {

/// Optimality cut anchored at a leader decision x^k:
///   z >= base - sum_{f: x^k_f=0} alpha_f x_f + sum_{f: x^k_f=1} beta_f (x_f - 1).
struct Cut {
    double base = 0.0;   // follower value at the origin
    BinaryVector origin;
    std::vector<std::pair<int, double>> alpha_terms;  // assets with origin bit 0
    std::vector<std::pair<int, double>> beta_terms;   // assets with origin bit 1
};

/// Per-arc weight upper bounds grouped by source: for each asset f, the
/// list of (downstream asset, upper bound on that arc's weight).
using ArcUpperBounds = std::vector<std::vector<std::pair<int, double>>>;

ArcUpperBounds upper_bounds_by_source(const Network& network, const PolytopeFamily& family);

/// Multi-stage damage over-estimates via dynamic programming on the
/// dependency graph: stage-1 value W_f plus the weighted reach of f's
/// downstream assets, folded forward for each further stage and summed.
/// Depends only on weights, arcs, upper bounds and the stage count, so it
/// runs once per instance.
std::vector<double> compute_alpha(const Network& network, const ArcUpperBounds& upper,
                                  int n_stages);

Cut build_cut(const BinaryVector& x_k, double q_k, const std::vector<double>& alpha);

struct StrengthenedCut {
    Cut cut;                     // origin cut with beta terms filled in
    std::vector<Cut> side_cuts;  // one plain cut per single-asset restore
};

/// Beta coefficients from single-asset restore solves: for each disabled f,
/// beta_f = Q(x with f re-enabled) - Q(x^k). Also returns a plain cut
/// anchored at each restore point.
StrengthenedCut strengthen_cut(const BinaryVector& x_k, double q_k,
                               const std::vector<double>& alpha,
                               const std::function<double(const BinaryVector&)>& follower_value);

double evaluate_cut(const Cut& cut, const BinaryVector& x);

std::string cuts_to_json_string(const std::vector<Cut>& cuts);
std::vector<Cut> cuts_from_json_string(const std::string& text);

}  // namespace cascade
