#include "cascade/polytope.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "cascade/simplex.hpp"

namespace cascade {

const std::vector<int>& spec_upstream(const PolytopeSpec& spec) {
    return std::visit([](const auto& s) -> const std::vector<int>& { return s.upstream; }, spec);
}

GenericPolytope to_halfspace(const SimplexBoxSpec& spec) {
    const std::size_t n = spec.base.size();
    GenericPolytope g;
    g.upstream = spec.upstream;
    g.U.reserve(2 + 2 * n);
    g.u.reserve(2 + 2 * n);
    g.U.emplace_back(n, 1.0);
    g.u.push_back(1.0);
    g.U.emplace_back(n, -1.0);
    g.u.push_back(-1.0);
    for (std::size_t s = 0; s < n; ++s) {
        std::vector<double> lo_row(n, 0.0);
        lo_row[s] = 1.0;
        g.U.push_back(std::move(lo_row));
        g.u.push_back((1.0 - spec.delta) * spec.base[s]);
    }
    for (std::size_t s = 0; s < n; ++s) {
        std::vector<double> hi_row(n, 0.0);
        hi_row[s] = -1.0;
        g.U.push_back(std::move(hi_row));
        g.u.push_back(-(1.0 + spec.delta) * spec.base[s]);
    }
    return g;
}

GenericPolytope halfspace_form(const PolytopeSpec& spec) {
    if (const auto* box = std::get_if<SimplexBoxSpec>(&spec)) return to_halfspace(*box);
    return std::get<GenericPolytope>(spec);
}

PolytopeFamily base_weights(const Network& network, double threshold, double delta,
                            double min_distance) {
    if (!(threshold > 0.0)) throw std::invalid_argument("threshold must be positive");
    if (delta < 0.0 || delta >= 1.0) throw std::invalid_argument("delta must lie in [0, 1)");
    PolytopeFamily family;
    family.delta = delta;
    family.threshold = threshold;
    family.min_distance = min_distance;
    family.specs.assign(static_cast<std::size_t>(network.size()), std::nullopt);

    for (int f = 0; f < network.size(); ++f) {
        const auto& ups = network.upstream(f);
        if (ups.empty()) continue;
        std::vector<double> raw(ups.size(), 0.0);
        double total = 0.0;
        for (std::size_t k = 0; k < ups.size(); ++k) {
            double d = network.distance(ups[k], f);
            if (d < min_distance) {
                std::ostringstream msg;
                msg << "distance between assets " << ups[k] << " and " << f
                    << " clamped to " << min_distance;
                family.warnings.push_back(msg.str());
                d = min_distance;
            }
            if (d <= threshold) {
                raw[k] = 1.0 / (d * d);
                total += raw[k];
            }
        }
        if (total <= 0.0) continue;  // every upstream pruned: no uncertainty set
        for (double& w : raw) w /= total;
        family.specs[static_cast<std::size_t>(f)] =
            SimplexBoxSpec{ups, std::move(raw), delta};
    }
    return family;
}

PolytopeFamily family_for(const NetworkInstance& instance) {
    return base_weights(instance.network, instance.threshold, instance.delta,
                        instance.min_distance);
}

std::vector<double> upper_bound_weights(const PolytopeSpec& spec) {
    if (const auto* box = std::get_if<SimplexBoxSpec>(&spec)) {
        std::vector<double> ub(box->base.size());
        for (std::size_t s = 0; s < ub.size(); ++s) ub[s] = (1.0 + box->delta) * box->base[s];
        return ub;
    }
    const auto& g = std::get<GenericPolytope>(spec);
    const std::size_t n = g.upstream.size();
    std::vector<double> ub(n);
    for (std::size_t s = 0; s < n; ++s) {
        LinearProgram lp = LinearProgram::with_vars(n, LpSense::maximize);
        lp.objective[s] = 1.0;
        for (std::size_t l = 0; l < g.u.size(); ++l) {
            lp.add_row(g.U[l], LpRelation::greater_equal, g.u[l]);
        }
        LpSolution sol = solve_lp(lp);
        if (sol.status == LpStatus::infeasible) throw std::runtime_error("empty polytope");
        if (sol.status != LpStatus::optimal) throw std::runtime_error("polytope unbounded");
        ub[s] = sol.objective;
    }
    return ub;
}

WorstCaseSolution worst_case_level(const PolytopeSpec& spec,
                                   const std::vector<double>& disruption) {
    const GenericPolytope g = halfspace_form(spec);
    const std::size_t n = g.upstream.size();
    if (n == 0) throw std::invalid_argument("empty polytope: asset has no uncertainty set");
    if (disruption.size() != n) throw std::invalid_argument("disruption length mismatch");
    for (double d : disruption) {
        if (d < -1e-9 || d > 1.0 + 1e-9) throw std::invalid_argument("disruption outside [0,1]");
    }

    // The adversary maximizes P'd over the set; xi = [1 - opt]+. The duals
    // of the full min-xi problem follow from the binary structure of the
    // capacity multiplier: lambda = 1 exactly when the clip is inactive.
    LinearProgram lp = LinearProgram::with_vars(n, LpSense::maximize);
    for (std::size_t s = 0; s < n; ++s) lp.objective[s] = std::clamp(disruption[s], 0.0, 1.0);
    for (std::size_t l = 0; l < g.u.size(); ++l) {
        lp.add_row(g.U[l], LpRelation::greater_equal, g.u[l]);
    }
    LpSolution sol = solve_lp(lp);
    if (sol.status == LpStatus::infeasible) {
        throw std::invalid_argument("empty polytope: no feasible arc weights");
    }

    WorstCaseSolution wc;
    wc.weights = sol.primal;
    double opt = sol.status == LpStatus::unbounded ? kInfinity : sol.objective;
    wc.xi = std::max(1.0 - opt, 0.0);
    if (wc.xi > 0.0) {
        wc.lambda = 1.0;
        wc.pi = 0.0;
        wc.v.resize(g.u.size());
        // Max-sense duals of >= rows are <= 0; the capacity-row rewrite
        // needs the nonnegative mirror.
        for (std::size_t l = 0; l < g.u.size(); ++l) wc.v[l] = -sol.duals[l];
    } else {
        wc.lambda = 0.0;
        wc.pi = 1.0;
        wc.v.assign(g.u.size(), 0.0);
    }
    wc.dual_objective = wc.lambda;
    for (std::size_t l = 0; l < g.u.size(); ++l) wc.dual_objective += g.u[l] * wc.v[l];
    return wc;
}

std::vector<double> solve_simplex_box(const std::vector<double>& cost, const SimplexBoxSpec& spec,
                                      BoxSense sense) {
    const std::size_t n = spec.base.size();
    if (n == 0) throw std::invalid_argument("empty simplex-box spec");
    if (cost.size() != n) throw std::invalid_argument("cost length mismatch");

    std::vector<double> out(n);
    double remaining = 1.0;
    for (std::size_t s = 0; s < n; ++s) {
        out[s] = (1.0 - spec.delta) * spec.base[s];
        remaining -= out[s];
    }
    if (remaining < -1e-9) {
        throw std::runtime_error("infeasible simplex-box: floors exceed the simplex");
    }
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        if (cost[a] != cost[b]) {
            return sense == BoxSense::minimize ? cost[a] < cost[b] : cost[a] > cost[b];
        }
        return a < b;
    });
    for (std::size_t s : order) {
        if (remaining <= 0.0) break;
        double headroom = 2.0 * spec.delta * spec.base[s];
        double take = std::min(headroom, remaining);
        out[s] += take;
        remaining -= take;
    }
    if (remaining > 1e-9) {
        throw std::runtime_error("infeasible simplex-box: caps below the simplex");
    }
    return out;
}

}  // namespace cascade
