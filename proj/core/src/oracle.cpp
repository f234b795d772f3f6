#include "cascade/oracle.hpp"

#include <algorithm>
#include <limits>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "cascade/follower.hpp"

namespace cascade {

std::uint64_t count_feasible(int n, int budget) {
    if (n < 0 || budget < 0) throw std::invalid_argument("negative arguments");
    budget = std::min(budget, n);
    const std::uint64_t cap = std::numeric_limits<std::uint64_t>::max();
    std::uint64_t total = 0;
    std::uint64_t binom = 1;  // C(n, 0)
    for (int k = 0; k <= budget; ++k) {
        if (cap - total < binom) return cap;
        total += binom;
        if (k == budget) break;
        // C(n, k+1) = C(n, k) * (n - k) / (k + 1)
        if (binom > cap / static_cast<std::uint64_t>(n - k)) return cap;
        binom = binom * static_cast<std::uint64_t>(n - k) / static_cast<std::uint64_t>(k + 1);
    }
    return total;
}

namespace {

bool lex_less(const BinaryVector& a, const BinaryVector& b) {
    return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

}  // namespace

EnumerationResult enumerate_optimal(const Network& network, const PolytopeFamily& family,
                                    int n_stages, int budget, std::uint64_t guard,
                                    bool keep_table) {
    const int n = network.size();
    if (budget < 0 || budget > n) throw std::invalid_argument("budget outside [0, n]");
    const std::uint64_t total = count_feasible(n, budget);
    if (total > guard) {
        std::ostringstream msg;
        msg << "enumeration of " << total << " decisions exceeds the guard of " << guard;
        throw std::invalid_argument(msg.str());
    }

    EnumerationResult result;
    BinaryVector x(static_cast<std::size_t>(n), 0);
    std::vector<int> chosen;

    auto evaluate = [&](const BinaryVector& vec) {
        CascadeResult res = solve_follower(network, family, AttackVector(vec, budget), n_stages);
        ++result.n_evaluated;
        if (keep_table) result.table.emplace_back(vec, res.objective);
        if (result.n_evaluated == 1 || res.objective < result.objective ||
            (res.objective == result.objective && lex_less(vec, result.x_opt))) {
            result.objective = res.objective;
            result.x_opt = vec;
        }
    };

    evaluate(x);  // the empty attack
    // Combinations by cardinality; the minimizer is tracked with an explicit
    // (objective, lexicographic) comparison so visit order does not matter.
    for (int size = 1; size <= budget; ++size) {
        chosen.assign(static_cast<std::size_t>(size), 0);
        for (int i = 0; i < size; ++i) chosen[static_cast<std::size_t>(i)] = i;
        if (size > n) break;
        while (true) {
            std::fill(x.begin(), x.end(), 0);
            for (int id : chosen) x[static_cast<std::size_t>(id)] = 1;
            evaluate(x);
            int pos = size - 1;
            while (pos >= 0 && chosen[static_cast<std::size_t>(pos)] == n - size + pos) --pos;
            if (pos < 0) break;
            ++chosen[static_cast<std::size_t>(pos)];
            for (int i = pos + 1; i < size; ++i) {
                chosen[static_cast<std::size_t>(i)] = chosen[static_cast<std::size_t>(i - 1)] + 1;
            }
        }
    }
    return result;
}

void write_enumeration_csv(std::ostream& out, const EnumerationResult& result) {
    out << "x,objective\n";
    for (const auto& [x, q] : result.table) {
        for (auto b : x) out << static_cast<int>(b);
        out << "," << q << "\n";
    }
}

}  // namespace cascade
