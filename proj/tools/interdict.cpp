// interdict: generate interdependent infrastructure networks, find the
// most damaging attack sets via cut-based decomposition, and export the
// cascade diagnostics behind the reports.

#include <algorithm>
#include <exception>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "cascade/benders.hpp"
#include "cascade/follower.hpp"
#include "cascade/network.hpp"
#include "cascade/oracle.hpp"
#include "cascade/polytope.hpp"

namespace fs = std::filesystem;
using namespace cascade;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 2;
constexpr int kExitGap = 3;

struct NetworkArgs {
    std::string network_path;
    bool generate = false;
    std::string config_path;
    GenerationConfig gen;
};

void add_network_options(CLI::App* cmd, NetworkArgs& args) {
    auto* net = cmd->add_option("--network", args.network_path, "Network JSON file");
    auto* gen = cmd->add_flag("--generate", args.generate, "Generate a network instead");
    auto* cfg = cmd->add_option("--config", args.config_path, "Generation config JSON file");
    cmd->add_option("--seed", args.gen.seed, "Generation seed");
    cmd->add_option("--n", args.gen.n_assets, "Number of assets to generate");
    cmd->add_option("--area", args.gen.area, "Square side length")->capture_default_str();
    cmd->add_option("--threshold", args.gen.threshold, "Dependency distance threshold")
        ->capture_default_str();
    cmd->add_option("--delta", args.gen.delta, "Relative uncertainty radius")
        ->capture_default_str();
    cmd->add_option("--min-distance", args.gen.min_distance, "Distance clamp for coincident assets")
        ->capture_default_str();
    net->excludes(gen);
    net->excludes(cfg);
}

NetworkInstance resolve_instance(const NetworkArgs& args) {
    if (!args.network_path.empty()) return load_instance(args.network_path);
    GenerationConfig gen = args.gen;
    if (!args.config_path.empty()) {
        std::ifstream in(args.config_path, std::ios::binary);
        if (!in) throw std::runtime_error("cannot open config file: " + args.config_path);
        std::stringstream buf;
        buf << in.rdbuf();
        gen = generation_config_from_json(buf.str());
    } else if (!args.generate) {
        throw std::runtime_error("pass exactly one of --network or --generate/--config");
    }
    NetworkInstance instance;
    instance.network = generate_network(gen);
    instance.delta = gen.delta;
    instance.threshold = gen.threshold;
    instance.min_distance = gen.min_distance;
    return instance;
}

void write_text_file(const fs::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open for writing: " + path.string());
    out << text;
    if (!out) throw std::runtime_error("write failed: " + path.string());
}

void print_warnings(const std::vector<std::string>& warnings) {
    for (const auto& w : warnings) std::cerr << "warning: " << w << "\n";
}

int run_solve(const NetworkArgs& net_args, BendersConfig config, const std::string& out_dir,
              bool oracle_check, std::uint64_t oracle_guard) {
    NetworkInstance instance = resolve_instance(net_args);
    PolytopeFamily family = family_for(instance);
    print_warnings(family.warnings);

    fs::create_directories(out_dir);
    if (net_args.network_path.empty()) {
        save_instance(instance, (fs::path(out_dir) / "network.json").string());
    }

    BendersReport report = run_benders(instance.network, family, config);
    print_warnings(report.warnings);

    {
        std::ofstream csv(fs::path(out_dir) / "iterations.csv", std::ios::binary);
        write_report_csv(csv, report);
    }
    write_text_file(fs::path(out_dir) / "solution.json", report_to_json_string(report));
    write_text_file(fs::path(out_dir) / "cuts.json", cuts_to_json_string(report.final_cuts));

    std::cout << "status: " << to_string(report.status) << "\n"
              << "objective: " << report.best_objective << "\n"
              << "iterations: " << report.iterations.size() << "\n"
              << "gap_pct: " << report.gap_pct << "\n"
              << "disabled assets:";
    for (std::size_t f = 0; f < report.best_attack.size(); ++f) {
        if (report.best_attack[f]) std::cout << " " << f;
    }
    std::cout << "\n";

    if (oracle_check) {
        EnumerationResult truth = enumerate_optimal(instance.network, family, config.n_stages,
                                                    config.budget, oracle_guard);
        std::cout << "oracle objective: " << truth.objective << " over " << truth.n_evaluated
                  << " decisions\n";
        if (std::abs(truth.objective - report.best_objective) > 1e-6) {
            std::cerr << "oracle check FAILED: solver " << report.best_objective << " vs oracle "
                      << truth.objective << "\n";
            return 1;
        }
        std::cout << "oracle check passed\n";
    }
    return report.status == BendersStatus::optimal ? kExitOk : kExitGap;
}

int run_sweep(const NetworkArgs& net_args, BendersConfig base_config,
              std::vector<int> np_list, std::vector<int> nc_list, const std::string& out_dir) {
    NetworkInstance instance = resolve_instance(net_args);
    PolytopeFamily family = family_for(instance);
    print_warnings(family.warnings);
    fs::create_directories(out_dir);

    std::ofstream summary(fs::path(out_dir) / "summary.csv", std::ios::binary);
    summary << "np,nc,plain_time_s,plain_iters,plain_gap_pct,"
               "strengthened_time_s,strengthened_iters,strengthened_gap_pct\n";
    for (int np : np_list) {
        for (int nc : nc_list) {
            summary << np << "," << nc;
            for (BendersVariant variant : {BendersVariant::plain, BendersVariant::strengthened}) {
                BendersConfig config = base_config;
                config.n_stages = np;
                config.budget = std::min(nc, instance.network.size());
                config.variant = variant;
                BendersReport report = run_benders(instance.network, family, config);
                std::ostringstream dir;
                dir << "np" << np << "_nc" << nc << "_" << to_string(variant);
                fs::path sub = fs::path(out_dir) / dir.str();
                fs::create_directories(sub);
                {
                    std::ofstream csv(sub / "iterations.csv", std::ios::binary);
                    write_report_csv(csv, report);
                }
                write_text_file(sub / "solution.json", report_to_json_string(report));
                summary << "," << report.total_ms / 1000.0 << "," << report.iterations.size()
                        << ",";
                if (std::isfinite(report.gap_pct)) summary << report.gap_pct;
                else summary << "inf";
                std::cout << "np=" << np << " nc=" << nc << " " << to_string(variant) << ": "
                          << to_string(report.status) << " obj=" << report.best_objective
                          << " iters=" << report.iterations.size() << "\n";
            }
            summary << "\n";
        }
    }
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Worst-case contingency analysis for interdependent infrastructure networks"};
    app.require_subcommand(1);

    // generate
    auto* cmd_gen = app.add_subcommand("generate", "Generate a synthetic network");
    NetworkArgs gen_args;
    gen_args.generate = true;
    add_network_options(cmd_gen, gen_args);
    std::string gen_out = "network.json";
    cmd_gen->add_option("--out", gen_out, "Output network JSON path")->capture_default_str();

    // solve
    auto* cmd_solve = app.add_subcommand("solve", "Run the decomposition solver");
    NetworkArgs solve_args;
    add_network_options(cmd_solve, solve_args);
    BendersConfig solve_config;
    std::string solve_out = "out";
    std::string solve_variant = "plain";
    bool oracle_check = false;
    std::uint64_t oracle_guard = 200000;
    cmd_solve->add_option("--np", solve_config.n_stages, "Number of cascade stages")->required();
    cmd_solve->add_option("--nc", solve_config.budget, "Attack budget")->required();
    cmd_solve->add_option("--epsilon", solve_config.epsilon, "Relative target gap")
        ->capture_default_str();
    cmd_solve->add_option("--variant", solve_variant, "Cut variant: plain or strengthened")
        ->check(CLI::IsMember({"plain", "strengthened"}))
        ->capture_default_str();
    cmd_solve->add_option("--pool", solve_config.pool_size, "Master solution pool size")
        ->capture_default_str();
    cmd_solve->add_option("--time-limit", solve_config.time_limit_s, "Time limit in seconds")
        ->capture_default_str();
    cmd_solve->add_option("--max-iterations", solve_config.max_iterations,
                          "Iteration limit (0: unlimited)")
        ->capture_default_str();
    cmd_solve->add_option("--out", solve_out, "Output directory")->capture_default_str();
    cmd_solve->add_flag("--oracle-check", oracle_check,
                        "Cross-check the objective against full enumeration");
    cmd_solve->add_option("--oracle-guard", oracle_guard, "Enumeration size guard")
        ->capture_default_str();

    // follower
    auto* cmd_follower = app.add_subcommand("follower", "Evaluate one attack");
    NetworkArgs follower_args;
    add_network_options(cmd_follower, follower_args);
    int follower_np = 1;
    int follower_bins = 10;
    std::vector<int> follower_ids;
    std::string follower_out = "out";
    cmd_follower->add_option("--np", follower_np, "Number of cascade stages")->required();
    cmd_follower->add_option("--x", follower_ids, "Disabled asset ids")->delimiter(',');
    cmd_follower->add_option("--bins", follower_bins, "Histogram bins")->capture_default_str();
    cmd_follower->add_option("--out", follower_out, "Output directory")->capture_default_str();

    // enumerate
    auto* cmd_enum = app.add_subcommand("enumerate", "Exhaustive ground-truth search");
    NetworkArgs enum_args;
    add_network_options(cmd_enum, enum_args);
    int enum_np = 1, enum_nc = 1;
    std::uint64_t enum_guard = 200000;
    std::string enum_table;
    cmd_enum->add_option("--np", enum_np, "Number of cascade stages")->required();
    cmd_enum->add_option("--nc", enum_nc, "Attack budget")->required();
    cmd_enum->add_option("--guard", enum_guard, "Enumeration size guard")->capture_default_str();
    cmd_enum->add_option("--table", enum_table, "Write the full (x, Q) table to this CSV");

    // sweep
    auto* cmd_sweep = app.add_subcommand("sweep", "Grid of solves over stages and budgets");
    NetworkArgs sweep_args;
    add_network_options(cmd_sweep, sweep_args);
    BendersConfig sweep_config;
    std::vector<int> sweep_np{1, 2, 3, 4};
    std::vector<int> sweep_nc{2, 3, 4, 5, 6, 7, 8, 9, 10};
    std::string sweep_out = "sweep";
    cmd_sweep->add_option("--np-list", sweep_np, "Stage counts")->delimiter(',');
    cmd_sweep->add_option("--nc-list", sweep_nc, "Budgets")->delimiter(',');
    cmd_sweep->add_option("--epsilon", sweep_config.epsilon, "Relative target gap")
        ->capture_default_str();
    cmd_sweep->add_option("--pool", sweep_config.pool_size, "Master solution pool size")
        ->capture_default_str();
    cmd_sweep->add_option("--time-limit", sweep_config.time_limit_s, "Per-run time limit (s)")
        ->capture_default_str();
    cmd_sweep->add_option("--out", sweep_out, "Output directory")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (cmd_gen->parsed()) {
            NetworkInstance instance = resolve_instance(gen_args);
            save_instance(instance, gen_out);
            std::cout << "assets: " << instance.network.size() << "\n"
                      << "arcs: " << instance.network.arcs().size() << "\n"
                      << "written: " << gen_out << "\n";
            return kExitOk;
        }
        if (cmd_solve->parsed()) {
            solve_config.variant = variant_from_string(solve_variant);
            return run_solve(solve_args, solve_config, solve_out, oracle_check, oracle_guard);
        }
        if (cmd_follower->parsed()) {
            NetworkInstance instance = resolve_instance(follower_args);
            PolytopeFamily family = family_for(instance);
            print_warnings(family.warnings);
            AttackVector attack = AttackVector::from_ids(
                instance.network.size(), follower_ids, static_cast<int>(follower_ids.size()));
            CascadeResult result = solve_follower(instance.network, family, attack, follower_np);
            fs::create_directories(follower_out);
            write_text_file(fs::path(follower_out) / "cascade.json", to_json_string(result));
            {
                std::ofstream csv(fs::path(follower_out) / "trajectory.csv", std::ios::binary);
                write_trajectory_csv(csv, service_level_trajectory(result, instance.network));
            }
            {
                std::ofstream csv(fs::path(follower_out) / "histogram.csv", std::ios::binary);
                write_histogram_csv(csv, service_level_histogram(result, follower_bins),
                                    follower_bins);
            }
            {
                std::ofstream csv(fs::path(follower_out) / "weight_deltas.csv", std::ios::binary);
                write_weight_delta_csv(csv, result, family);
            }
            std::cout << "objective: " << result.objective << "\n";
            return kExitOk;
        }
        if (cmd_enum->parsed()) {
            NetworkInstance instance = resolve_instance(enum_args);
            PolytopeFamily family = family_for(instance);
            print_warnings(family.warnings);
            EnumerationResult result = enumerate_optimal(instance.network, family, enum_np,
                                                         enum_nc, enum_guard, !enum_table.empty());
            if (!enum_table.empty()) {
                std::ofstream csv(enum_table, std::ios::binary);
                write_enumeration_csv(csv, result);
            }
            std::cout << "objective: " << result.objective << "\n"
                      << "evaluated: " << result.n_evaluated << "\n"
                      << "disabled assets:";
            for (std::size_t f = 0; f < result.x_opt.size(); ++f) {
                if (result.x_opt[f]) std::cout << " " << f;
            }
            std::cout << "\n";
            return kExitOk;
        }
        if (cmd_sweep->parsed()) {
            return run_sweep(sweep_args, sweep_config, sweep_np, sweep_nc, sweep_out);
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    return kExitUsage;
}
