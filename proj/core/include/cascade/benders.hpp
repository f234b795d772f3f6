#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "cascade/cuts.hpp"
#include "cascade/master.hpp"
#include "cascade/network.hpp"
#include "cascade/polytope.hpp"

namespace cascade {

enum class BendersVariant { plain, strengthened };
enum class BendersStatus { optimal, gap_not_closed, iteration_limit };

struct BendersConfig {
    double epsilon = 0.01;  // relative target gap
    BendersVariant variant = BendersVariant::plain;
    int pool_size = 10;
    long max_iterations = 0;    // 0: unlimited
    double time_limit_s = 3600.0;
    int n_stages = 1;
    int budget = 0;
};

struct IterationRecord {
    int iter = 0;
    BinaryVector x;
    double z_master = 0.0;
    double q_x = 0.0;
    double lower_bound = 0.0;
    double upper_bound = 0.0;
    double gap_pct = 0.0;
    double master_ms = 0.0;
    double sub_ms = 0.0;
    int cuts_total = 0;
};

struct BendersReport {
    BendersStatus status = BendersStatus::optimal;
    std::vector<IterationRecord> iterations;
    BinaryVector best_attack;
    double best_objective = 0.0;
    double lower_bound = 0.0;
    double upper_bound = 0.0;
    double gap_pct = 0.0;
    bool terminated_by_repeat = false;
    long follower_solves = 0;
    long master_nodes = 0;
    double total_ms = 0.0;
    std::vector<Cut> final_cuts;
    std::vector<std::string> warnings;
};

/// Relative gap in percent. Returns +infinity when lb = 0 with ub > 0 and
/// 0 when both bounds are 0.
double gap_percent(double ub, double lb);

/// Cut-generation loop: alternates the exact master with follower solves,
/// keeping a valid bound sandwich. Every pool member is evaluated and
/// anchored with a plain cut; under the strengthened variant the incumbent
/// cut gains beta terms and one side cut per single-asset restore. A master
/// optimum seen before closes the bounds exactly and terminates.
BendersReport run_benders(const Network& network, const PolytopeFamily& family,
                          const BendersConfig& config);

const char* to_string(BendersStatus status);
const char* to_string(BendersVariant variant);
BendersVariant variant_from_string(const std::string& name);

void write_report_csv(std::ostream& out, const BendersReport& report);
std::string report_to_json_string(const BendersReport& report);

}  // namespace cascade
