#include "cascade/cuts.hpp"

#include <stdexcept>

#include <json.hpp>

namespace cascade {

ArcUpperBounds upper_bounds_by_source(const Network& network, const PolytopeFamily& family) {
    ArcUpperBounds by_source(static_cast<std::size_t>(network.size()));
    for (int f = 0; f < network.size(); ++f) {
        if (!family.has_spec(f)) continue;
        const auto& spec = family.spec(f);
        const auto& ups = spec_upstream(spec);
        std::vector<double> ub = upper_bound_weights(spec);
        for (std::size_t k = 0; k < ups.size(); ++k) {
            by_source[static_cast<std::size_t>(ups[k])].emplace_back(f, ub[k]);
        }
    }
    return by_source;
}

std::vector<double> compute_alpha(const Network& network, const ArcUpperBounds& upper,
                                  int n_stages) {
    const int n = network.size();
    if (n_stages < 1) throw std::invalid_argument("n_stages must be >= 1");
    if (static_cast<int>(upper.size()) != n) throw std::invalid_argument("upper bounds size mismatch");

    std::vector<double> prev_stage(static_cast<std::size_t>(n), 0.0);
    std::vector<double> stage(static_cast<std::size_t>(n), 0.0);
    std::vector<double> alpha(static_cast<std::size_t>(n), 0.0);
    for (int i = 0; i < n_stages; ++i) {
        for (int f = 0; f < n; ++f) {
            double acc = network.weight(f);
            for (const auto& [g, ub] : upper[static_cast<std::size_t>(f)]) {
                acc += (i == 0 ? network.weight(g) : prev_stage[static_cast<std::size_t>(g)]) * ub;
            }
            stage[static_cast<std::size_t>(f)] = acc;
        }
        for (int f = 0; f < n; ++f) alpha[static_cast<std::size_t>(f)] += stage[static_cast<std::size_t>(f)];
        std::swap(prev_stage, stage);
    }
    return alpha;
}

Cut build_cut(const BinaryVector& x_k, double q_k, const std::vector<double>& alpha) {
    if (x_k.size() != alpha.size()) throw std::invalid_argument("alpha size mismatch");
    Cut cut;
    cut.base = q_k;
    cut.origin = x_k;
    for (std::size_t f = 0; f < x_k.size(); ++f) {
        if (x_k[f] == 0) cut.alpha_terms.emplace_back(static_cast<int>(f), alpha[f]);
    }
    return cut;
}

StrengthenedCut strengthen_cut(const BinaryVector& x_k, double q_k,
                               const std::vector<double>& alpha,
                               const std::function<double(const BinaryVector&)>& follower_value) {
    bool any_ones = false;
    for (auto b : x_k) any_ones |= b != 0;
    if (!any_ones) throw std::invalid_argument("strengthen_cut needs at least one disabled asset");

    StrengthenedCut out;
    out.cut = build_cut(x_k, q_k, alpha);
    for (std::size_t f = 0; f < x_k.size(); ++f) {
        if (x_k[f] != 1) continue;
        BinaryVector restored = x_k;
        restored[f] = 0;
        double q_restored = follower_value(restored);
        out.cut.beta_terms.emplace_back(static_cast<int>(f), q_restored - q_k);
        out.side_cuts.push_back(build_cut(restored, q_restored, alpha));
    }
    return out;
}

double evaluate_cut(const Cut& cut, const BinaryVector& x) {
    double value = cut.base;
    for (const auto& [f, a] : cut.alpha_terms) value -= a * x[static_cast<std::size_t>(f)];
    for (const auto& [f, b] : cut.beta_terms) {
        value += b * (static_cast<double>(x[static_cast<std::size_t>(f)]) - 1.0);
    }
    return value;
}

std::string cuts_to_json_string(const std::vector<Cut>& cuts) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& cut : cuts) {
        nlohmann::json j;
        j["base"] = cut.base;
        j["origin"] = cut.origin;
        nlohmann::json alpha = nlohmann::json::array();
        for (const auto& [f, a] : cut.alpha_terms) alpha.push_back({{"asset", f}, {"coef", a}});
        nlohmann::json beta = nlohmann::json::array();
        for (const auto& [f, b] : cut.beta_terms) beta.push_back({{"asset", f}, {"coef", b}});
        j["alpha"] = std::move(alpha);
        j["beta"] = std::move(beta);
        arr.push_back(std::move(j));
    }
    return arr.dump(2) + "\n";
}

std::vector<Cut> cuts_from_json_string(const std::string& text) {
    nlohmann::json arr;
    try {
        arr = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw std::runtime_error(std::string("cuts JSON parse error: ") + e.what());
    }
    std::vector<Cut> cuts;
    for (const auto& j : arr) {
        Cut cut;
        cut.base = j.at("base").get<double>();
        cut.origin = j.at("origin").get<BinaryVector>();
        for (const auto& t : j.at("alpha")) {
            cut.alpha_terms.emplace_back(t.at("asset").get<int>(), t.at("coef").get<double>());
        }
        for (const auto& t : j.at("beta")) {
            cut.beta_terms.emplace_back(t.at("asset").get<int>(), t.at("coef").get<double>());
        }
        cuts.push_back(std::move(cut));
    }
    return cuts;
}

}  // namespace cascade
