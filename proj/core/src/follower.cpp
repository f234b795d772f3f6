#include "cascade/follower.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>
#include <stdexcept>

#include "cascade/simplex.hpp"
#include <json.hpp>

namespace cascade {

AttackVector::AttackVector(BinaryVector x_, int budget_) : x(std::move(x_)), budget(budget_) {
    int ones = 0;
    for (auto b : x) {
        if (b != 0 && b != 1) throw std::invalid_argument("attack entries must be 0/1");
        ones += b;
    }
    if (ones > budget) throw std::invalid_argument("attack exceeds the budget");
}

AttackVector AttackVector::from_ids(int n_assets, const std::vector<int>& ids, int budget) {
    BinaryVector x(static_cast<std::size_t>(n_assets), 0);
    for (int id : ids) {
        if (id < 0 || id >= n_assets) throw std::invalid_argument("unknown asset id");
        x[static_cast<std::size_t>(id)] = 1;
    }
    return AttackVector(std::move(x), budget);
}

int AttackVector::count() const {
    int ones = 0;
    for (auto b : x) ones += b;
    return ones;
}

std::vector<int> AttackVector::ids() const {
    std::vector<int> out;
    for (std::size_t f = 0; f < x.size(); ++f) {
        if (x[f]) out.push_back(static_cast<int>(f));
    }
    return out;
}

double evaluate_phi(const std::vector<double>& weights, const std::vector<double>& disruption) {
    if (weights.size() != disruption.size()) throw std::invalid_argument("length mismatch");
    double loss = 0.0;
    for (std::size_t s = 0; s < weights.size(); ++s) loss += weights[s] * disruption[s];
    return std::max(1.0 - loss, 0.0);
}

CascadeResult solve_follower(const Network& network, const PolytopeFamily& family,
                             const AttackVector& attack, int n_stages) {
    const int n = network.size();
    if (n_stages < 1) throw std::invalid_argument("n_stages must be >= 1");
    if (static_cast<int>(attack.x.size()) != n) throw std::invalid_argument("attack size mismatch");

    CascadeResult res;
    res.n_stages = n_stages;
    res.levels.assign(static_cast<std::size_t>(n), std::vector<double>(static_cast<std::size_t>(n_stages), 0.0));
    res.lambdas.assign(static_cast<std::size_t>(n),
                       std::vector<double>(static_cast<std::size_t>(n_stages),
                                           std::numeric_limits<double>::quiet_NaN()));
    res.worst_weights.assign(static_cast<std::size_t>(n), {});
    for (int f = 0; f < n; ++f) {
        res.worst_weights[static_cast<std::size_t>(f)].assign(static_cast<std::size_t>(n_stages), {});
    }

    std::vector<double> disruption;
    for (int i = 0; i < n_stages; ++i) {
        for (int f = 0; f < n; ++f) {
            auto fu = static_cast<std::size_t>(f);
            auto iu = static_cast<std::size_t>(i);
            double cap = i == 0 ? 1.0 - attack.x[fu] : res.levels[fu][iu - 1];
            double level = cap;
            if (family.has_spec(f)) {
                const auto& spec = family.spec(f);
                const auto& ups = spec_upstream(spec);
                disruption.resize(ups.size());
                for (std::size_t k = 0; k < ups.size(); ++k) {
                    auto su = static_cast<std::size_t>(ups[k]);
                    disruption[k] = i == 0 ? static_cast<double>(attack.x[su])
                                           : 1.0 - res.levels[su][iu - 1];
                }
                WorstCaseSolution wc = worst_case_level(spec, disruption);
                level = std::min(cap, wc.xi);
                res.lambdas[fu][iu] = wc.lambda;
                res.worst_weights[fu][iu] = std::move(wc.weights);
            }
            res.levels[fu][iu] = level;
        }
    }

    double obj = 0.0;
    for (int f = 0; f < n; ++f) {
        double per_asset = 0.0;
        for (double y : res.levels[static_cast<std::size_t>(f)]) per_asset += y;
        obj += network.weight(f) * per_asset;
    }
    res.objective = obj;
    return res;
}

namespace {

// Variable bookkeeping for the per-assignment LP of the enumeration
// validator. Only assets with an uncertainty set carry multipliers, dual
// rows, and product variables.
struct McLayout {
    int n = 0, stages = 0;
    std::vector<int> spec_assets;          // assets with a set
    std::vector<int> spec_index;           // asset -> position in spec_assets, -1 otherwise
    std::vector<GenericPolytope> half;     // per spec asset
    std::vector<std::size_t> v_offset;     // per spec asset: first v var of stage 0
    std::vector<std::size_t> zeta_offset;  // per spec asset: first zeta var (stages >= 1)
    std::size_t total_vars = 0;

    std::size_t y_idx(int f, int i) const {
        return static_cast<std::size_t>(f) * static_cast<std::size_t>(stages) +
               static_cast<std::size_t>(i);
    }
    std::size_t v_idx(int k, int i, std::size_t l) const {
        return v_offset[static_cast<std::size_t>(k)] +
               static_cast<std::size_t>(i) * half[static_cast<std::size_t>(k)].u.size() + l;
    }
    std::size_t zeta_idx(int k, int i, std::size_t s) const {
        const auto& ups = half[static_cast<std::size_t>(k)].upstream;
        return zeta_offset[static_cast<std::size_t>(k)] +
               static_cast<std::size_t>(i - 1) * ups.size() + s;
    }
};

}  // namespace

double solve_follower_mccormick(const Network& network, const PolytopeFamily& family,
                                const AttackVector& attack, int n_stages,
                                const McCormickOptions& options) {
    const int n = network.size();
    if (n_stages < 1) throw std::invalid_argument("n_stages must be >= 1");
    if (n * n_stages > options.cap) {
        throw std::invalid_argument(
            "assets * stages exceeds the enumeration cap; use solve_follower instead");
    }

    McLayout lay;
    lay.n = n;
    lay.stages = n_stages;
    lay.spec_index.assign(static_cast<std::size_t>(n), -1);
    for (int f = 0; f < n; ++f) {
        if (family.has_spec(f)) {
            lay.spec_index[static_cast<std::size_t>(f)] = static_cast<int>(lay.spec_assets.size());
            lay.spec_assets.push_back(f);
            lay.half.push_back(halfspace_form(family.spec(f)));
        }
    }
    const int n_spec = static_cast<int>(lay.spec_assets.size());

    lay.total_vars = static_cast<std::size_t>(n) * static_cast<std::size_t>(n_stages);
    for (int k = 0; k < n_spec; ++k) {
        lay.v_offset.push_back(lay.total_vars);
        lay.total_vars += lay.half[static_cast<std::size_t>(k)].u.size() *
                          static_cast<std::size_t>(n_stages);
    }
    for (int k = 0; k < n_spec; ++k) {
        lay.zeta_offset.push_back(lay.total_vars);
        if (n_stages > 1) {
            lay.total_vars += lay.half[static_cast<std::size_t>(k)].upstream.size() *
                              static_cast<std::size_t>(n_stages - 1);
        }
    }

    const int bits = n_spec * n_stages;
    const std::uint64_t assignments = bits >= 63 ? 0 : (std::uint64_t{1} << bits);
    if (assignments == 0) throw std::invalid_argument("enumeration too large");

    double best = -kInfinity;
    std::vector<double> lambda(static_cast<std::size_t>(n_spec) *
                               static_cast<std::size_t>(n_stages));
    for (std::uint64_t mask = 0; mask < assignments; ++mask) {
        for (int b = 0; b < bits; ++b) lambda[static_cast<std::size_t>(b)] = (mask >> b) & 1u;
        auto lam = [&](int k, int i) {
            return lambda[static_cast<std::size_t>(k) * static_cast<std::size_t>(n_stages) +
                          static_cast<std::size_t>(i)];
        };

        LinearProgram lp = LinearProgram::with_vars(lay.total_vars, LpSense::maximize);
        for (int f = 0; f < n; ++f) {
            for (int i = 0; i < n_stages; ++i) {
                std::size_t yj = lay.y_idx(f, i);
                lp.objective[yj] = network.weight(f);
                lp.upper[yj] = i == 0 ? 1.0 - attack.x[static_cast<std::size_t>(f)] : 1.0;
            }
        }
        for (int k = 0; k < n_spec; ++k) {
            const auto& g = lay.half[static_cast<std::size_t>(k)];
            for (int i = 1; i < n_stages; ++i) {
                for (std::size_t s = 0; s < g.upstream.size(); ++s) {
                    lp.upper[lay.zeta_idx(k, i, s)] = lam(k, i);
                }
            }
        }

        auto add_sparse_row = [&](const std::vector<std::pair<std::size_t, double>>& terms,
                                  LpRelation rel, double rhs) {
            std::vector<double> coeffs(lay.total_vars, 0.0);
            for (const auto& [j, c] : terms) coeffs[j] += c;
            lp.add_row(std::move(coeffs), rel, rhs);
        };

        for (int f = 0; f < n; ++f) {
            for (int i = 1; i < n_stages; ++i) {
                add_sparse_row({{lay.y_idx(f, i), 1.0}, {lay.y_idx(f, i - 1), -1.0}},
                               LpRelation::less_equal, 0.0);
            }
        }
        for (int k = 0; k < n_spec; ++k) {
            const int f = lay.spec_assets[static_cast<std::size_t>(k)];
            const auto& g = lay.half[static_cast<std::size_t>(k)];
            const std::size_t L = g.u.size();
            for (int i = 0; i < n_stages; ++i) {
                std::vector<std::pair<std::size_t, double>> terms{{lay.y_idx(f, i), 1.0}};
                for (std::size_t l = 0; l < L; ++l) terms.emplace_back(lay.v_idx(k, i, l), -g.u[l]);
                add_sparse_row(terms, LpRelation::less_equal, lam(k, i));
            }
            for (std::size_t s = 0; s < g.upstream.size(); ++s) {
                const auto su = static_cast<std::size_t>(g.upstream[s]);
                {
                    std::vector<std::pair<std::size_t, double>> terms;
                    for (std::size_t l = 0; l < L; ++l) {
                        terms.emplace_back(lay.v_idx(k, 0, l), g.U[l][s]);
                    }
                    add_sparse_row(terms, LpRelation::less_equal,
                                   -lam(k, 0) * static_cast<double>(attack.x[su]));
                }
                for (int i = 1; i < n_stages; ++i) {
                    std::vector<std::pair<std::size_t, double>> terms;
                    for (std::size_t l = 0; l < L; ++l) {
                        terms.emplace_back(lay.v_idx(k, i, l), g.U[l][s]);
                    }
                    terms.emplace_back(lay.zeta_idx(k, i, s), -1.0);
                    add_sparse_row(terms, LpRelation::less_equal, -lam(k, i));
                    add_sparse_row({{lay.y_idx(g.upstream[s], i - 1), 1.0},
                                    {lay.zeta_idx(k, i, s), -1.0}},
                                   LpRelation::less_equal, 1.0 - lam(k, i));
                    add_sparse_row({{lay.zeta_idx(k, i, s), 1.0},
                                    {lay.y_idx(g.upstream[s], i - 1), -1.0}},
                                   LpRelation::less_equal, 0.0);
                }
            }
        }

        LpSolution sol = solve_lp(lp);
        if (sol.status == LpStatus::optimal) best = std::max(best, sol.objective);
    }
    if (!std::isfinite(best)) throw std::runtime_error("no feasible multiplier assignment");
    return best;
}

std::vector<double> service_level_trajectory(const CascadeResult& result, const Network& network) {
    std::vector<double> traj(static_cast<std::size_t>(result.n_stages), 0.0);
    for (int i = 0; i < result.n_stages; ++i) {
        double acc = 0.0;
        for (int f = 0; f < network.size(); ++f) {
            acc += network.weight(f) *
                   result.levels[static_cast<std::size_t>(f)][static_cast<std::size_t>(i)];
        }
        traj[static_cast<std::size_t>(i)] = acc / network.total_weight();
    }
    return traj;
}

std::vector<std::vector<int>> service_level_histogram(const CascadeResult& result, int bins) {
    if (bins < 1) throw std::invalid_argument("bins must be >= 1");
    std::vector<std::vector<int>> hist(static_cast<std::size_t>(result.n_stages),
                                       std::vector<int>(static_cast<std::size_t>(bins), 0));
    for (const auto& asset_levels : result.levels) {
        for (int i = 0; i < result.n_stages; ++i) {
            double y = asset_levels[static_cast<std::size_t>(i)];
            int bin = std::min(static_cast<int>(std::floor(y * bins)), bins - 1);
            bin = std::max(bin, 0);
            ++hist[static_cast<std::size_t>(i)][static_cast<std::size_t>(bin)];
        }
    }
    return hist;
}

std::string to_json_string(const CascadeResult& result) {
    nlohmann::json j;
    j["objective"] = result.objective;
    j["n_stages"] = result.n_stages;
    j["assets"] = nlohmann::json::array();
    for (std::size_t f = 0; f < result.levels.size(); ++f) {
        nlohmann::json a;
        a["id"] = f;
        a["levels"] = result.levels[f];
        nlohmann::json lam = nlohmann::json::array();
        for (double v : result.lambdas[f]) {
            if (std::isnan(v)) lam.push_back(nullptr);
            else lam.push_back(v);
        }
        a["lambda"] = std::move(lam);
        a["worst_weights"] = result.worst_weights[f];
        j["assets"].push_back(std::move(a));
    }
    return j.dump(2) + "\n";
}

void write_trajectory_csv(std::ostream& out, const std::vector<double>& trajectory) {
    out << "stage,service_level\n";
    for (std::size_t i = 0; i < trajectory.size(); ++i) {
        out << (i + 1) << "," << trajectory[i] << "\n";
    }
}

void write_histogram_csv(std::ostream& out, const std::vector<std::vector<int>>& histogram,
                         int bins) {
    out << "stage,bin_lo,bin_hi,count\n";
    for (std::size_t i = 0; i < histogram.size(); ++i) {
        for (int b = 0; b < bins; ++b) {
            out << (i + 1) << "," << static_cast<double>(b) / bins << ","
                << static_cast<double>(b + 1) / bins << ","
                << histogram[i][static_cast<std::size_t>(b)] << "\n";
        }
    }
}

void write_weight_delta_csv(std::ostream& out, const CascadeResult& result,
                            const PolytopeFamily& family) {
    out << "asset,upstream,stage_pair,delta\n";
    for (std::size_t f = 0; f < result.worst_weights.size(); ++f) {
        if (!family.has_spec(static_cast<int>(f))) continue;
        const auto& ups = spec_upstream(family.spec(static_cast<int>(f)));
        for (int i = 1; i < result.n_stages; ++i) {
            const auto& cur = result.worst_weights[f][static_cast<std::size_t>(i)];
            const auto& prev = result.worst_weights[f][static_cast<std::size_t>(i - 1)];
            for (std::size_t s = 0; s < ups.size(); ++s) {
                out << f << "," << ups[s] << "," << i << "_" << (i + 1) << ","
                    << (cur[s] - prev[s]) << "\n";
            }
        }
    }
}

}  // namespace cascade
