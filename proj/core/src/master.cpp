#include "cascade/master.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <ostream>
#include <queue>
#include <stdexcept>

#include "cascade/simplex.hpp"

namespace cascade {

double master_value(const std::vector<Cut>& cuts, const BinaryVector& x) {
    double z = 0.0;
    for (const auto& cut : cuts) z = std::max(z, evaluate_cut(cut, x));
    return z;
}

namespace {

constexpr double kIntTol = 1e-7;
constexpr double kPruneTol = 1e-9;

struct Node {
    double bound = 0.0;  // parent relaxation value
    long id = 0;
    std::vector<std::int8_t> fix;  // -1 free, 0 or 1 fixed
};

struct NodeOrder {
    bool operator()(const Node& a, const Node& b) const {
        if (a.bound != b.bound) return a.bound > b.bound;
        return a.id > b.id;  // FIFO among equal bounds keeps 0-branches first
    }
};

bool lex_less(const BinaryVector& a, const BinaryVector& b) {
    return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

}  // namespace

MasterSolution solve_master(const MasterProblem& mp, const MasterOptions& options) {
    const int n = mp.n_assets;
    if (mp.budget < 0 || mp.budget > n) throw std::invalid_argument("budget outside [0, n]");
    if (mp.pool_size < 1) throw std::invalid_argument("pool_size must be >= 1");

    // Variables: z at index 0, then one column per asset.
    LinearProgram lp = LinearProgram::with_vars(static_cast<std::size_t>(n) + 1,
                                                LpSense::minimize);
    lp.objective[0] = 1.0;
    lp.lower[0] = 0.0;
    lp.upper[0] = kInfinity;
    for (int f = 0; f < n; ++f) {
        lp.lower[static_cast<std::size_t>(f) + 1] = 0.0;
        lp.upper[static_cast<std::size_t>(f) + 1] = 1.0;
    }
    {
        std::vector<double> budget_row(static_cast<std::size_t>(n) + 1, 1.0);
        budget_row[0] = 0.0;
        lp.add_row(std::move(budget_row), LpRelation::less_equal, mp.budget);
    }
    for (const auto& cut : mp.cuts) {
        std::vector<double> row(static_cast<std::size_t>(n) + 1, 0.0);
        row[0] = 1.0;
        double rhs = cut.base;
        for (const auto& [f, a] : cut.alpha_terms) row[static_cast<std::size_t>(f) + 1] += a;
        for (const auto& [f, b] : cut.beta_terms) {
            row[static_cast<std::size_t>(f) + 1] -= b;
            rhs -= b;
        }
        lp.add_row(std::move(row), LpRelation::greater_equal, rhs);
    }

    std::vector<std::pair<BinaryVector, double>> pool;
    auto pool_insert = [&](const BinaryVector& x, double z) {
        for (const auto& [px, pz] : pool) {
            if (px == x) return;
        }
        pool.emplace_back(x, z);
        std::sort(pool.begin(), pool.end(), [](const auto& a, const auto& b) {
            if (a.second != b.second) return a.second < b.second;
            return lex_less(a.first, b.first);
        });
        if (static_cast<int>(pool.size()) > mp.pool_size) pool.resize(static_cast<std::size_t>(mp.pool_size));
    };

    double inc_z = kInfinity;
    bool have_incumbent = false;

    std::priority_queue<Node, std::vector<Node>, NodeOrder> open;
    long next_id = 0;
    long node_count = 0;
    open.push(Node{0.0, next_id++, std::vector<std::int8_t>(static_cast<std::size_t>(n), -1)});

    SimplexOptions lp_opts;
    while (!open.empty()) {
        Node node = open.top();
        open.pop();
        if (have_incumbent && node.bound >= inc_z - kPruneTol) continue;
        ++node_count;

        int fixed_ones = 0;
        for (int f = 0; f < n; ++f) {
            auto fu = static_cast<std::size_t>(f);
            double lo = 0.0, hi = 1.0;
            if (node.fix[fu] == 0) hi = 0.0;
            if (node.fix[fu] == 1) { lo = 1.0; ++fixed_ones; }
            lp.lower[fu + 1] = lo;
            lp.upper[fu + 1] = hi;
        }
        if (fixed_ones > mp.budget) continue;
        if (fixed_ones == mp.budget) {
            // Budget exhausted: the free assets are forced off.
            for (int f = 0; f < n; ++f) {
                if (node.fix[static_cast<std::size_t>(f)] == -1) {
                    lp.upper[static_cast<std::size_t>(f) + 1] = 0.0;
                }
            }
        }

        LpSolution sol = solve_lp(lp, lp_opts);
        if (sol.status == LpStatus::infeasible) continue;
        if (sol.status != LpStatus::optimal) {
            throw std::runtime_error("master relaxation did not solve to optimality");
        }
        double bound = sol.objective;
        if (options.node_log) {
            int depth = 0;
            for (auto v : node.fix) depth += v != -1;
            *options.node_log << node.id << "," << depth << "," << bound << ","
                              << (have_incumbent ? inc_z : kInfinity) << "\n";
        }
        if (have_incumbent && bound >= inc_z - kPruneTol) continue;

        int branch_var = -1;
        double most_frac = kIntTol;
        for (int f = 0; f < n; ++f) {
            double v = sol.primal[static_cast<std::size_t>(f) + 1];
            double frac = std::min(v, 1.0 - v);
            if (frac > most_frac + 1e-12) {
                most_frac = frac;
                branch_var = f;
            }
        }

        if (branch_var == -1) {
            BinaryVector x(static_cast<std::size_t>(n), 0);
            for (int f = 0; f < n; ++f) {
                x[static_cast<std::size_t>(f)] =
                    sol.primal[static_cast<std::size_t>(f) + 1] > 0.5 ? 1 : 0;
            }
            double z = master_value(mp.cuts, x);
            pool_insert(x, z);
            inc_z = pool.front().second;
            have_incumbent = true;
            continue;
        }

        Node child0{bound, next_id++, node.fix};
        child0.fix[static_cast<std::size_t>(branch_var)] = 0;
        Node child1{bound, next_id++, node.fix};
        child1.fix[static_cast<std::size_t>(branch_var)] = 1;
        open.push(std::move(child0));
        open.push(std::move(child1));
    }

    if (!have_incumbent) throw std::runtime_error("master search ended without a solution");

    MasterSolution out;
    out.x_opt = pool.front().first;
    out.z_opt = pool.front().second;
    out.pool = std::move(pool);
    out.node_count = node_count;
    return out;
}

}  // namespace cascade
