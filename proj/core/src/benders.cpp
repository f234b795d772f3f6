#include "cascade/benders.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <map>
#include <ostream>
#include <set>
#include <sstream>
#include <stdexcept>

#include "cascade/follower.hpp"
#include "cascade/simplex.hpp"
#include <json.hpp>

namespace cascade {

double gap_percent(double ub, double lb) {
    if (lb < 0.0) throw std::invalid_argument("lower bound must be nonnegative");
    if (lb == 0.0) return ub > 0.0 ? kInfinity : 0.0;
    return (ub - lb) / lb * 100.0;
}

const char* to_string(BendersStatus status) {
    switch (status) {
        case BendersStatus::optimal: return "optimal";
        case BendersStatus::gap_not_closed: return "gap_not_closed";
        case BendersStatus::iteration_limit: return "iteration_limit";
    }
    return "unknown";
}

const char* to_string(BendersVariant variant) {
    return variant == BendersVariant::plain ? "plain" : "strengthened";
}

BendersVariant variant_from_string(const std::string& name) {
    if (name == "plain") return BendersVariant::plain;
    if (name == "strengthened") return BendersVariant::strengthened;
    throw std::invalid_argument("unknown variant: " + name);
}

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point t0) {
    return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

}  // namespace

BendersReport run_benders(const Network& network, const PolytopeFamily& family,
                          const BendersConfig& config) {
    const int n = network.size();
    if (config.epsilon < 0.0) throw std::invalid_argument("epsilon must be >= 0");
    if (config.budget < 0 || config.budget > n) throw std::invalid_argument("budget outside [0, n]");
    if (config.n_stages < 1) throw std::invalid_argument("n_stages must be >= 1");
    if (config.pool_size < 1) throw std::invalid_argument("pool_size must be >= 1");

    const auto start = Clock::now();
    BendersReport report;

    const std::vector<double> alpha =
        compute_alpha(network, upper_bounds_by_source(network, family), config.n_stages);

    std::vector<Cut> cuts;
    std::map<BinaryVector, std::size_t> anchored;  // origin -> index in cuts
    std::map<BinaryVector, double> q_cache;
    std::set<BinaryVector> seen_incumbents;

    double z_lb = 0.0;
    double z_ub = kInfinity;
    BinaryVector best_x(static_cast<std::size_t>(n), 0);
    bool have_best = false;

    auto follower_value = [&](const BinaryVector& x) {
        auto it = q_cache.find(x);
        if (it != q_cache.end()) return it->second;
        CascadeResult res =
            solve_follower(network, family, AttackVector(x, config.budget), config.n_stages);
        ++report.follower_solves;
        q_cache.emplace(x, res.objective);
        if (res.objective < z_ub || !have_best) {
            z_ub = std::min(z_ub, res.objective);
            best_x = x;
            have_best = true;
        }
        return res.objective;
    };

    auto add_plain_cut = [&](const BinaryVector& origin, double q) {
        if (anchored.count(origin)) return;
        anchored.emplace(origin, cuts.size());
        cuts.push_back(build_cut(origin, q, alpha));
    };

    int k = 0;
    while (true) {
        if (config.max_iterations > 0 && k >= config.max_iterations) {
            report.status = BendersStatus::iteration_limit;
            break;
        }
        if (ms_since(start) / 1000.0 > config.time_limit_s) {
            report.status = BendersStatus::gap_not_closed;
            break;
        }
        if (!(z_ub >= (1.0 + config.epsilon) * z_lb)) {
            report.status = BendersStatus::optimal;
            break;
        }
        ++k;

        const auto t_master = Clock::now();
        MasterSolution master =
            solve_master(MasterProblem{cuts, n, config.budget, config.pool_size});
        const double master_ms = ms_since(t_master);
        report.master_nodes += master.node_count;
        const double z_k = master.z_opt;
        z_lb = std::max(z_lb, z_k);

        if (seen_incumbents.count(master.x_opt)) {
            // A repeated master optimum already carries a cut anchored at its
            // own follower value, so the bounds must have met.
            double q = follower_value(master.x_opt);
            z_ub = std::min(z_ub, q);
            if (std::abs(z_ub - z_lb) > 1e-9) {
                std::ostringstream msg;
                msg << "bound closure violated on repeat at iteration " << k << ": ub=" << z_ub
                    << " lb=" << z_lb;
                report.warnings.push_back(msg.str());
            }
            report.terminated_by_repeat = true;
            report.status = BendersStatus::optimal;
            break;
        }
        seen_incumbents.insert(master.x_opt);

        const auto t_sub = Clock::now();
        const double q_k = follower_value(master.x_opt);
        if (z_k > q_k + 1e-6) {
            std::ostringstream msg;
            msg << "cut overestimate at iteration " << k << ": master " << z_k << " > follower "
                << q_k;
            report.warnings.push_back(msg.str());
        }

        bool incumbent_has_ones = false;
        for (auto b : master.x_opt) incumbent_has_ones |= b != 0;
        if (config.variant == BendersVariant::strengthened && incumbent_has_ones) {
            StrengthenedCut sc = strengthen_cut(master.x_opt, q_k, alpha, follower_value);
            auto it = anchored.find(master.x_opt);
            if (it != anchored.end()) {
                cuts[it->second] = sc.cut;
            } else {
                anchored.emplace(master.x_opt, cuts.size());
                cuts.push_back(sc.cut);
            }
            for (std::size_t i = 0; i < sc.side_cuts.size(); ++i) {
                add_plain_cut(sc.side_cuts[i].origin, sc.side_cuts[i].base);
            }
        } else {
            add_plain_cut(master.x_opt, q_k);
        }
        for (const auto& [x_p, z_p] : master.pool) {
            if (x_p == master.x_opt) continue;
            double q_p = follower_value(x_p);
            add_plain_cut(x_p, q_p);
        }
        const double sub_ms = ms_since(t_sub);

        IterationRecord rec;
        rec.iter = k;
        rec.x = master.x_opt;
        rec.z_master = z_k;
        rec.q_x = q_k;
        rec.lower_bound = z_lb;
        rec.upper_bound = z_ub;
        rec.gap_pct = gap_percent(z_ub, z_lb);
        rec.master_ms = master_ms;
        rec.sub_ms = sub_ms;
        rec.cuts_total = static_cast<int>(cuts.size());
        report.iterations.push_back(std::move(rec));
    }

    report.lower_bound = z_lb;
    report.upper_bound = z_ub;
    report.gap_pct = gap_percent(z_ub, std::min(z_lb, z_ub));
    report.best_attack = best_x;
    report.best_objective = std::isfinite(z_ub) ? z_ub : 0.0;
    report.final_cuts = std::move(cuts);
    report.total_ms = ms_since(start);
    return report;
}

void write_report_csv(std::ostream& out, const BendersReport& report) {
    out << "iter,lb,ub,gap_pct,master_ms,sub_ms,cuts_total\n";
    for (const auto& rec : report.iterations) {
        out << rec.iter << "," << rec.lower_bound << ",";
        if (std::isfinite(rec.upper_bound)) out << rec.upper_bound;
        else out << "inf";
        out << ",";
        if (std::isfinite(rec.gap_pct)) out << rec.gap_pct;
        else out << "inf";
        out << "," << rec.master_ms << "," << rec.sub_ms << "," << rec.cuts_total << "\n";
    }
}

std::string report_to_json_string(const BendersReport& report) {
    nlohmann::json j;
    j["status"] = to_string(report.status);
    j["objective"] = report.best_objective;
    j["disabled_assets"] = nlohmann::json::array();
    for (std::size_t f = 0; f < report.best_attack.size(); ++f) {
        if (report.best_attack[f]) j["disabled_assets"].push_back(f);
    }
    j["iterations"] = report.iterations.size();
    if (std::isfinite(report.gap_pct)) j["gap_pct"] = report.gap_pct;
    else j["gap_pct"] = nullptr;
    return j.dump(2) + "\n";
}

}  // namespace cascade
