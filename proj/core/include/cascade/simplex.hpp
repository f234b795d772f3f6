#pragma once

#include <cstddef>
#include <iosfwd>
#include <limits>
#include <vector>

namespace cascade {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

enum class LpSense { minimize, maximize };
enum class LpRelation { less_equal, equal, greater_equal };
enum class LpStatus { optimal, infeasible, unbounded, iteration_limit };

struct LpRow {
    std::vector<double> coeffs;
    LpRelation relation = LpRelation::less_equal;
    double rhs = 0.0;
};

/// Dense LP in the form  opt c'x  s.t. rows, lower <= x <= upper.
/// Bounds may be +-kInfinity; a variable with lower == upper is fixed.
struct LinearProgram {
    LpSense sense = LpSense::minimize;
    std::vector<double> objective;
    std::vector<LpRow> rows;
    std::vector<double> lower;
    std::vector<double> upper;

    static LinearProgram with_vars(std::size_t n, LpSense sense);
    std::size_t num_vars() const { return objective.size(); }
    void add_row(std::vector<double> coeffs, LpRelation relation, double rhs);
};

/// Solution with row duals and reduced costs.
///
/// Sign convention, both senses: objective[j] = sum_i duals[i]*A[i][j] + reduced_costs[j]
/// at optimality. For minimize, >= rows carry duals >= 0 and <= rows duals <= 0;
/// for maximize the signs flip. dual_objective = duals'rhs + reduced_costs'x.
struct LpSolution {
    LpStatus status = LpStatus::optimal;
    double objective = 0.0;
    std::vector<double> primal;
    std::vector<double> duals;
    std::vector<double> reduced_costs;
    double primal_residual = 0.0;   // max row/bound violation
    double duality_gap = 0.0;       // |primal obj - dual obj|
    double cs_residual = 0.0;       // max complementary-slackness violation
    double dual_objective = 0.0;
    int iterations = 0;
};

struct SimplexOptions {
    double feasibility_tol = 1e-9;
    double optimality_tol = 1e-9;
    int stall_limit = 64;    // degenerate pivots before switching to Bland's rule
    int max_iterations = 0;  // 0: picks a size-dependent default
    bool refine_with_lu = true;
    std::ostream* trace = nullptr;
};

/// Two-phase primal simplex on a dense tableau with general variable bounds.
/// Deterministic: largest-coefficient pricing with lowest-index tie breaks,
/// Bland's rule after a stall. Infeasible/unbounded are reported via status.
LpSolution solve_lp(const LinearProgram& lp, const SimplexOptions& options = {});

}  // namespace cascade
