#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "cascade/network.hpp"

namespace cascade {

/// Arc-weight uncertainty set in simplex-box form: weights sum to one and
/// each coordinate stays within a relative band around its base value.
struct SimplexBoxSpec {
    std::vector<int> upstream;  // asset ids, ascending; coordinate order
    std::vector<double> base;   // normalized base weights, sums to 1
    double delta = 0.1;
};

/// Generic half-space form { P >= 0 : U P >= u }.
struct GenericPolytope {
    std::vector<int> upstream;
    std::vector<std::vector<double>> U;  // |u| rows, |upstream| columns
    std::vector<double> u;
};

using PolytopeSpec = std::variant<SimplexBoxSpec, GenericPolytope>;

const std::vector<int>& spec_upstream(const PolytopeSpec& spec);

/// Half-space rows of a simplex-box set, in the fixed order
/// [sum >= 1, -sum >= -1, P_s >= (1-delta)b_s ..., -P_s >= -(1+delta)b_s ...].
GenericPolytope to_halfspace(const SimplexBoxSpec& spec);
GenericPolytope halfspace_form(const PolytopeSpec& spec);

/// Primal/dual certificate of one worst-case solve.
struct WorstCaseSolution {
    double xi = 0.0;              // worst-case service level in [0,1]
    std::vector<double> weights;  // minimizing arc weights
    double lambda = 0.0;          // dual of the capacity row, binary at optimality
    double pi = 0.0;              // dual of xi >= 0; lambda + pi = 1
    std::vector<double> v;        // duals of the polytope rows (halfspace order)
    double dual_objective = 0.0;  // u'v + lambda, equals xi at optimality
};

/// Per-asset uncertainty sets for a network. Assets with no surviving
/// upstream dependency carry no set and no worst-case constraint.
struct PolytopeFamily {
    double delta = 0.1;
    double threshold = 30.0;
    double min_distance = 1e-3;
    std::vector<std::optional<PolytopeSpec>> specs;  // indexed by asset id
    std::vector<std::string> warnings;               // e.g. clamped coincident positions

    bool has_spec(int id) const { return specs[static_cast<std::size_t>(id)].has_value(); }
    const PolytopeSpec& spec(int id) const { return *specs[static_cast<std::size_t>(id)]; }
};

/// Inverse-square-distance base weights, pruned beyond `threshold` and
/// normalized per asset so the simplex constraint is satisfiable.
/// Coincident positions are clamped to `min_distance` and reported in
/// the family's warning list.
PolytopeFamily base_weights(const Network& network, double threshold, double delta,
                            double min_distance = 1e-3);

PolytopeFamily family_for(const NetworkInstance& instance);

/// Coordinatewise upper bounds over the set: (1+delta)*base for the
/// simplex-box form, per-coordinate LP maxima for the generic form.
std::vector<double> upper_bound_weights(const PolytopeSpec& spec);

/// Minimizes [1 - P'd]+ over the set (the adversary maximizes P'd) and
/// returns the primal minimizer together with an optimal dual certificate.
/// Throws std::invalid_argument on an empty set.
WorstCaseSolution worst_case_level(const PolytopeSpec& spec, const std::vector<double>& disruption);

enum class BoxSense { minimize, maximize };

/// Closed-form solve of opt c'P over a simplex-box set by greedy mass
/// allocation from the coordinate floors. Matches the LP solve to 1e-9.
std::vector<double> solve_simplex_box(const std::vector<double>& cost, const SimplexBoxSpec& spec,
                                      BoxSense sense);

}  // namespace cascade
