#pragma once

#include <iosfwd>
#include <vector>

#include "cascade/cuts.hpp"
#include "cascade/network.hpp"

namespace cascade {

/// Master relaxation state: minimize z over binary x with at most `budget`
/// ones, subject to z >= 0 and every accumulated cut.
struct MasterProblem {
    std::vector<Cut> cuts;
    int n_assets = 0;
    int budget = 0;
    int pool_size = 10;
};

struct MasterSolution {
    BinaryVector x_opt;
    double z_opt = 0.0;
    // Distinct integer-feasible solutions met during the search, best first;
    // the first entry is (x_opt, z_opt).
    std::vector<std::pair<BinaryVector, double>> pool;
    long node_count = 0;
};

struct MasterOptions {
    std::ostream* node_log = nullptr;  // CSV: node id, depth, bound, incumbent
};

/// Exact best-first branch and bound on the min-max-of-cuts form. Node
/// relaxations use the LP kernel with x in [0,1]; branching picks the most
/// fractional coordinate with lowest-index ties; nodes are pruned when the
/// relaxation reaches the incumbent minus 1e-9. Ties between optima resolve
/// to the lexicographically smallest attack vector.
MasterSolution solve_master(const MasterProblem& mp, const MasterOptions& options = {});

/// Master objective of a concrete binary decision: max(0, max over cuts).
double master_value(const std::vector<Cut>& cuts, const BinaryVector& x);

}  // namespace cascade
