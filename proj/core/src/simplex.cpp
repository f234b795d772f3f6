#include "cascade/simplex.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <stdexcept>
#include <vector>

namespace cascade {

LinearProgram LinearProgram::with_vars(std::size_t n, LpSense sense) {
    LinearProgram lp;
    lp.sense = sense;
    lp.objective.assign(n, 0.0);
    lp.lower.assign(n, 0.0);
    lp.upper.assign(n, kInfinity);
    return lp;
}

void LinearProgram::add_row(std::vector<double> coeffs, LpRelation relation, double rhs) {
    if (coeffs.size() != num_vars()) throw std::invalid_argument("row length != variable count");
    rows.push_back(LpRow{std::move(coeffs), relation, rhs});
}

namespace {

enum class VarState : std::uint8_t { Basic, AtLower, AtUpper, FreeZero };

constexpr double kPivotTol = 1e-11;
constexpr double kRatioTieTol = 1e-12;

// Columns are laid out as [structural | slack | artificial]. The tableau
// holds B^{-1}A for all columns; basic variable values are kept separately
// in beta so no right-hand-side column is carried.
class Simplex {
  public:
    Simplex(const LinearProgram& lp, const SimplexOptions& opts) : lp_(lp), opts_(opts) {
        m_ = lp.rows.size();
        n_ = lp.num_vars();
        n_slack_ = m_;
        validate_input();
    }

    LpSolution solve();

  private:
    void validate_input() const {
        if (lp_.lower.size() != n_ || lp_.upper.size() != n_) {
            throw std::invalid_argument("bounds length != variable count");
        }
        for (std::size_t j = 0; j < n_; ++j) {
            if (lp_.lower[j] > lp_.upper[j]) throw std::invalid_argument("lower > upper bound");
            if (!std::isfinite(lp_.objective[j])) throw std::invalid_argument("non-finite objective");
        }
        for (const auto& row : lp_.rows) {
            if (row.coeffs.size() != n_) throw std::invalid_argument("row length != variable count");
            if (!std::isfinite(row.rhs)) throw std::invalid_argument("non-finite rhs");
        }
    }

    double lo(std::size_t j) const { return lo_[j]; }
    double hi(std::size_t j) const { return hi_[j]; }

    double nonbasic_value(std::size_t j) const {
        switch (state_[j]) {
            case VarState::AtLower: return lo_[j];
            case VarState::AtUpper: return hi_[j];
            default: return 0.0;
        }
    }

    void setup();
    bool phase_loop(bool phase_one);
    void drive_out_artificials();
    void refresh_reduced_costs();
    LpSolution extract(LpStatus status);
    void lu_refine(LpSolution& sol) const;

    const LinearProgram& lp_;
    const SimplexOptions& opts_;
    std::size_t m_ = 0, n_ = 0, n_slack_ = 0, n_art_ = 0;
    std::size_t ncols_ = 0;       // structural + slack + artificial
    std::size_t real_cols_ = 0;   // structural + slack

    std::vector<double> tab_;     // m x ncols, row-major
    std::vector<double> beta_;    // basic variable values
    std::vector<std::size_t> basis_;
    std::vector<VarState> state_;
    std::vector<double> lo_, hi_;
    std::vector<double> cost_;    // current phase costs
    std::vector<double> d_;       // reduced costs
    std::vector<double> art_sign_;
    int iterations_ = 0;
    int max_iterations_ = 0;
    bool unbounded_ = false;

    double* row(std::size_t r) { return tab_.data() + r * ncols_; }
    const double* row(std::size_t r) const { return tab_.data() + r * ncols_; }
};

void Simplex::setup() {
    // Internal sense is minimize.
    const double sense_sign = lp_.sense == LpSense::minimize ? 1.0 : -1.0;

    real_cols_ = n_ + n_slack_;
    lo_.assign(real_cols_, 0.0);
    hi_.assign(real_cols_, 0.0);
    state_.assign(real_cols_, VarState::AtLower);
    for (std::size_t j = 0; j < n_; ++j) {
        lo_[j] = lp_.lower[j];
        hi_[j] = lp_.upper[j];
        if (std::isfinite(lo_[j])) {
            state_[j] = VarState::AtLower;
        } else if (std::isfinite(hi_[j])) {
            state_[j] = VarState::AtUpper;
        } else {
            state_[j] = VarState::FreeZero;
        }
    }
    for (std::size_t i = 0; i < m_; ++i) {
        std::size_t j = n_ + i;
        switch (lp_.rows[i].relation) {
            case LpRelation::less_equal: lo_[j] = 0.0; hi_[j] = kInfinity; break;
            case LpRelation::greater_equal: lo_[j] = -kInfinity; hi_[j] = 0.0; break;
            case LpRelation::equal: lo_[j] = 0.0; hi_[j] = 0.0; break;
        }
        state_[j] = lp_.rows[i].relation == LpRelation::greater_equal ? VarState::AtUpper
                                                                      : VarState::AtLower;
    }

    // Residuals at the initial nonbasic point decide which rows need an
    // artificial basic variable and which can start on their own slack.
    std::vector<double> residual(m_);
    for (std::size_t i = 0; i < m_; ++i) {
        double ax = 0.0;
        for (std::size_t j = 0; j < n_; ++j) ax += lp_.rows[i].coeffs[j] * nonbasic_value(j);
        residual[i] = lp_.rows[i].rhs - ax;
    }

    basis_.assign(m_, 0);
    art_sign_.assign(m_, 0.0);
    std::vector<bool> needs_art(m_, false);
    n_art_ = 0;
    const double ftol = opts_.feasibility_tol;
    for (std::size_t i = 0; i < m_; ++i) {
        double r = residual[i];
        bool slack_ok = false;
        switch (lp_.rows[i].relation) {
            case LpRelation::less_equal: slack_ok = r >= -ftol; break;
            case LpRelation::greater_equal: slack_ok = r <= ftol; break;
            case LpRelation::equal: slack_ok = std::abs(r) <= ftol; break;
        }
        if (slack_ok) {
            basis_[i] = n_ + i;
            state_[n_ + i] = VarState::Basic;
        } else {
            needs_art[i] = true;
            ++n_art_;
        }
    }

    ncols_ = real_cols_ + n_art_;
    tab_.assign(m_ * ncols_, 0.0);
    beta_.assign(m_, 0.0);
    lo_.resize(ncols_, 0.0);
    hi_.resize(ncols_, kInfinity);
    state_.resize(ncols_, VarState::AtLower);

    std::size_t art = real_cols_;
    for (std::size_t i = 0; i < m_; ++i) {
        double sigma = 1.0;
        if (needs_art[i]) {
            sigma = residual[i] >= 0.0 ? 1.0 : -1.0;
            art_sign_[i] = sigma;
            basis_[i] = art;
            state_[art] = VarState::Basic;
            beta_[i] = std::abs(residual[i]);
            ++art;
        } else {
            beta_[i] = residual[i];
        }
        double* tr = row(i);
        for (std::size_t j = 0; j < n_; ++j) tr[j] = sigma * lp_.rows[i].coeffs[j];
        tr[n_ + i] = sigma;  // slack column
        if (needs_art[i]) tr[basis_[i]] = 1.0;
    }

    cost_.assign(ncols_, 0.0);
    for (std::size_t j = 0; j < n_; ++j) cost_[j] = sense_sign * lp_.objective[j];

    max_iterations_ = opts_.max_iterations > 0
                          ? opts_.max_iterations
                          : static_cast<int>(200 * (m_ + ncols_) + 2000);
}

void Simplex::refresh_reduced_costs() {
    d_ = cost_;
    for (std::size_t i = 0; i < m_; ++i) {
        double cb = cost_[basis_[i]];
        if (cb == 0.0) continue;
        const double* tr = row(i);
        for (std::size_t j = 0; j < ncols_; ++j) d_[j] -= cb * tr[j];
    }
}

// Returns false when the iteration limit was hit.
bool Simplex::phase_loop(bool phase_one) {
    refresh_reduced_costs();
    const double dtol = opts_.optimality_tol;
    int stall = 0;
    int since_refresh = 0;
    bool bland = false;

    while (true) {
        if (iterations_ >= max_iterations_) return false;
        if (++since_refresh >= 128) {
            refresh_reduced_costs();
            since_refresh = 0;
        }

        // Pricing. Artificial columns never re-enter once out of the basis.
        std::size_t q = ncols_;
        double best = dtol;
        for (std::size_t j = 0; j < real_cols_; ++j) {
            if (state_[j] == VarState::Basic) continue;
            if (lo_[j] == hi_[j]) continue;  // fixed
            double viol = 0.0;
            switch (state_[j]) {
                case VarState::AtLower: viol = -d_[j]; break;
                case VarState::AtUpper: viol = d_[j]; break;
                case VarState::FreeZero: viol = std::abs(d_[j]); break;
                default: break;
            }
            if (viol > best) {
                q = j;
                best = viol;
                if (bland) break;  // lowest eligible index
            }
        }
        if (q == ncols_) return true;  // phase optimal

        const double dq = d_[q];
        const double sigma =
            (state_[q] == VarState::AtLower || (state_[q] == VarState::FreeZero && dq < 0.0))
                ? 1.0
                : -1.0;

        // Ratio test: entering moves by t >= 0 in direction sigma.
        double t_best = kInfinity;
        bool self_block = false;
        if (std::isfinite(lo_[q]) && std::isfinite(hi_[q])) {
            t_best = hi_[q] - lo_[q];
            self_block = true;
        }
        std::size_t leave_row = m_;
        double leave_pivot = 0.0;
        for (std::size_t i = 0; i < m_; ++i) {
            double w = row(i)[q];
            if (std::abs(w) < kPivotTol) continue;
            double rate = -sigma * w;
            double t;
            if (rate < 0.0) {
                double bound = lo_[basis_[i]];
                if (!std::isfinite(bound)) continue;
                t = (beta_[i] - bound) / (-rate);
            } else {
                double bound = hi_[basis_[i]];
                if (!std::isfinite(bound)) continue;
                t = (bound - beta_[i]) / rate;
            }
            if (t < 0.0) t = 0.0;
            bool take = false;
            if (t < t_best - kRatioTieTol) {
                take = true;
            } else if (t <= t_best + kRatioTieTol && leave_row != m_) {
                if (bland) {
                    take = basis_[i] < basis_[leave_row];
                } else {
                    take = std::abs(w) > std::abs(leave_pivot);
                }
            }
            // A tie against the entering variable's own range keeps the
            // cheap bound flip.
            if (take) {
                t_best = std::min(t_best, t);
                leave_row = i;
                leave_pivot = w;
                self_block = false;
            }
        }

        if (!std::isfinite(t_best)) {
            unbounded_ = true;
            return true;
        }

        ++iterations_;
        bool degenerate = std::abs(dq) * t_best <= 1e-12;
        if (degenerate) {
            if (++stall >= opts_.stall_limit) bland = true;
        } else {
            stall = 0;
            bland = false;
        }

        if (leave_row == m_) {
            // Bound flip: basis unchanged, reduced costs unchanged.
            for (std::size_t i = 0; i < m_; ++i) beta_[i] += t_best * (-sigma * row(i)[q]);
            state_[q] = state_[q] == VarState::AtLower ? VarState::AtUpper : VarState::AtLower;
            continue;
        }

        // Pivot on (leave_row, q).
        double entering_val = nonbasic_value(q) + sigma * t_best;
        for (std::size_t i = 0; i < m_; ++i) {
            if (i == leave_row) continue;
            beta_[i] += t_best * (-sigma * row(i)[q]);
        }
        std::size_t lv = basis_[leave_row];
        double rate_leave = -sigma * row(leave_row)[q];
        state_[lv] = rate_leave < 0.0 ? VarState::AtLower : VarState::AtUpper;
        if (!std::isfinite(lo_[lv]) && !std::isfinite(hi_[lv])) state_[lv] = VarState::FreeZero;

        double piv = row(leave_row)[q];
        double* pr = row(leave_row);
        double inv = 1.0 / piv;
        for (std::size_t j = 0; j < ncols_; ++j) pr[j] *= inv;
        pr[q] = 1.0;
        for (std::size_t i = 0; i < m_; ++i) {
            if (i == leave_row) continue;
            double f = row(i)[q];
            if (f == 0.0) continue;
            double* ri = row(i);
            for (std::size_t j = 0; j < ncols_; ++j) ri[j] -= f * pr[j];
            ri[q] = 0.0;
        }
        for (std::size_t j = 0; j < ncols_; ++j) d_[j] -= dq * pr[j];
        d_[q] = 0.0;

        basis_[leave_row] = q;
        state_[q] = VarState::Basic;
        beta_[leave_row] = entering_val;

        if (opts_.trace) {
            *opts_.trace << (phase_one ? "p1" : "p2") << " it=" << iterations_ << " in=" << q
                         << " out=" << lv << " t=" << t_best << "\n";
        }
    }
}

void Simplex::drive_out_artificials() {
    for (std::size_t i = 0; i < m_; ++i) {
        if (basis_[i] < real_cols_) continue;
        double* tr = row(i);
        std::size_t q = ncols_;
        double best = 1e-9;
        for (std::size_t j = 0; j < real_cols_; ++j) {
            if (state_[j] == VarState::Basic) continue;
            if (std::abs(tr[j]) > best) {
                best = std::abs(tr[j]);
                q = j;
            }
        }
        if (q == ncols_) {
            beta_[i] = 0.0;  // redundant row, artificial stays basic at zero
            continue;
        }
        std::size_t lv = basis_[i];
        double entering_val = nonbasic_value(q);
        double piv = tr[q];
        double inv = 1.0 / piv;
        for (std::size_t j = 0; j < ncols_; ++j) tr[j] *= inv;
        tr[q] = 1.0;
        for (std::size_t r2 = 0; r2 < m_; ++r2) {
            if (r2 == i) continue;
            double f = row(r2)[q];
            if (f == 0.0) continue;
            double* rr = row(r2);
            for (std::size_t j = 0; j < ncols_; ++j) rr[j] -= f * tr[j];
            rr[q] = 0.0;
        }
        basis_[i] = q;
        state_[q] = VarState::Basic;
        state_[lv] = VarState::AtLower;
        beta_[i] = entering_val;
    }
}

LpSolution Simplex::solve() {
    setup();

    if (n_art_ > 0) {
        std::vector<double> saved_cost = cost_;
        std::fill(cost_.begin(), cost_.end(), 0.0);
        for (std::size_t j = real_cols_; j < ncols_; ++j) cost_[j] = 1.0;
        if (!phase_loop(true)) return extract(LpStatus::iteration_limit);
        double art_total = 0.0;
        for (std::size_t i = 0; i < m_; ++i) {
            if (basis_[i] >= real_cols_) art_total += std::abs(beta_[i]);
        }
        double bmax = 0.0;
        for (const auto& r : lp_.rows) bmax = std::max(bmax, std::abs(r.rhs));
        if (art_total > 10.0 * opts_.feasibility_tol * (1.0 + bmax)) {
            return extract(LpStatus::infeasible);
        }
        drive_out_artificials();
        cost_ = saved_cost;
    }

    unbounded_ = false;
    if (!phase_loop(false)) return extract(LpStatus::iteration_limit);
    if (unbounded_) return extract(LpStatus::unbounded);
    return extract(LpStatus::optimal);
}

// Recompute the final point and duals from a fresh LU factorization of the
// basis so reported certificates do not carry tableau drift.
void Simplex::lu_refine(LpSolution& sol) const {
    const std::size_t m = m_;
    if (m == 0) return;
    std::vector<double> B(m * m, 0.0);
    auto b_at = [&](std::size_t r, std::size_t c) -> double& { return B[r * m + c]; };
    for (std::size_t k = 0; k < m; ++k) {
        std::size_t j = basis_[k];
        if (j < n_) {
            for (std::size_t i = 0; i < m; ++i) b_at(i, k) = lp_.rows[i].coeffs[j];
        } else if (j < real_cols_) {
            b_at(j - n_, k) = 1.0;
        } else {
            // An artificial stays in the row it was created for.
            b_at(k, k) = art_sign_[k];
        }
    }
    // LU with partial pivoting.
    std::vector<std::size_t> perm(m);
    for (std::size_t i = 0; i < m; ++i) perm[i] = i;
    for (std::size_t k = 0; k < m; ++k) {
        std::size_t p = k;
        double best = std::abs(b_at(k, k));
        for (std::size_t i = k + 1; i < m; ++i) {
            if (std::abs(b_at(i, k)) > best) {
                best = std::abs(b_at(i, k));
                p = i;
            }
        }
        if (best < 1e-14) return;  // singular basis, keep tableau values
        if (p != k) {
            for (std::size_t j = 0; j < m; ++j) std::swap(b_at(p, j), b_at(k, j));
            std::swap(perm[p], perm[k]);
        }
        for (std::size_t i = k + 1; i < m; ++i) {
            double f = b_at(i, k) / b_at(k, k);
            b_at(i, k) = f;
            for (std::size_t j = k + 1; j < m; ++j) b_at(i, j) -= f * b_at(k, j);
        }
    }
    auto solve_B = [&](std::vector<double> rhs) {
        std::vector<double> x(m);
        for (std::size_t i = 0; i < m; ++i) x[i] = rhs[perm[i]];
        for (std::size_t i = 0; i < m; ++i) {
            for (std::size_t j = 0; j < i; ++j) x[i] -= b_at(i, j) * x[j];
        }
        for (std::size_t i = m; i-- > 0;) {
            for (std::size_t j = i + 1; j < m; ++j) x[i] -= b_at(i, j) * x[j];
            x[i] /= b_at(i, i);
        }
        return x;
    };
    auto solve_Bt = [&](const std::vector<double>& rhs) {
        // Solve B'y = rhs using the same factors: B = P'LU, so B' = U'L'P.
        std::vector<double> x = rhs;
        for (std::size_t i = 0; i < m; ++i) {  // U'w = rhs (forward)
            for (std::size_t j = 0; j < i; ++j) x[i] -= b_at(j, i) * x[j];
            x[i] /= b_at(i, i);
        }
        for (std::size_t i = m; i-- > 0;) {  // L'v = w (backward)
            for (std::size_t j = i + 1; j < m; ++j) x[i] -= b_at(j, i) * x[j];
        }
        std::vector<double> y(m);
        for (std::size_t i = 0; i < m; ++i) y[perm[i]] = x[i];
        return y;
    };

    // x_B = B^{-1} (b - A_N x_N)
    std::vector<double> rhs(m);
    for (std::size_t i = 0; i < m; ++i) {
        double acc = lp_.rows[i].rhs;
        for (std::size_t j = 0; j < n_; ++j) {
            if (state_[j] != VarState::Basic) acc -= lp_.rows[i].coeffs[j] * nonbasic_value(j);
        }
        // Nonbasic slack values are always zero.
        rhs[i] = acc;
    }
    std::vector<double> xb = solve_B(std::move(rhs));
    std::vector<double> cb(m);
    for (std::size_t k = 0; k < m; ++k) cb[k] = cost_[basis_[k]];
    std::vector<double> y = solve_Bt(cb);

    for (std::size_t k = 0; k < m; ++k) {
        std::size_t j = basis_[k];
        if (j < n_) sol.primal[j] = xb[k];
    }
    const double sense_sign = lp_.sense == LpSense::minimize ? 1.0 : -1.0;
    for (std::size_t i = 0; i < m; ++i) sol.duals[i] = sense_sign * y[i];
    for (std::size_t j = 0; j < n_; ++j) {
        double aj = 0.0;
        for (std::size_t i = 0; i < m; ++i) aj += y[i] * lp_.rows[i].coeffs[j];
        sol.reduced_costs[j] = lp_.objective[j] - sense_sign * aj;
    }
}

LpSolution Simplex::extract(LpStatus status) {
    LpSolution sol;
    sol.status = status;
    sol.iterations = iterations_;
    sol.primal.assign(n_, 0.0);
    sol.duals.assign(m_, 0.0);
    sol.reduced_costs.assign(n_, 0.0);
    if (status == LpStatus::infeasible || status == LpStatus::iteration_limit) return sol;

    for (std::size_t j = 0; j < n_; ++j) {
        sol.primal[j] = state_[j] == VarState::Basic ? 0.0 : nonbasic_value(j);
    }
    for (std::size_t i = 0; i < m_; ++i) {
        if (basis_[i] < n_) sol.primal[basis_[i]] = beta_[i];
    }
    if (status == LpStatus::unbounded) return sol;

    if (opts_.refine_with_lu) lu_refine(sol);
    else {
        const double sense_sign = lp_.sense == LpSense::minimize ? 1.0 : -1.0;
        // Duals from the tableau reduced costs of the slack columns: d_slack = -y.
        refresh_reduced_costs();
        for (std::size_t i = 0; i < m_; ++i) sol.duals[i] = sense_sign * -d_[n_ + i];
        for (std::size_t j = 0; j < n_; ++j) sol.reduced_costs[j] = sense_sign * d_[j];
    }

    double obj = 0.0;
    for (std::size_t j = 0; j < n_; ++j) obj += lp_.objective[j] * sol.primal[j];
    sol.objective = obj;

    // Residual bookkeeping for the solution certificates.
    double feas = 0.0;
    double cs = 0.0;
    double dual_obj = 0.0;
    for (std::size_t i = 0; i < m_; ++i) {
        double ax = 0.0;
        for (std::size_t j = 0; j < n_; ++j) ax += lp_.rows[i].coeffs[j] * sol.primal[j];
        double slack = lp_.rows[i].rhs - ax;
        switch (lp_.rows[i].relation) {
            case LpRelation::less_equal: feas = std::max(feas, -slack); break;
            case LpRelation::greater_equal: feas = std::max(feas, slack); break;
            case LpRelation::equal: feas = std::max(feas, std::abs(slack)); break;
        }
        cs = std::max(cs, std::abs(sol.duals[i] * slack));
        dual_obj += sol.duals[i] * lp_.rows[i].rhs;
    }
    for (std::size_t j = 0; j < n_; ++j) {
        double v = sol.primal[j];
        if (std::isfinite(lp_.lower[j])) feas = std::max(feas, lp_.lower[j] - v);
        if (std::isfinite(lp_.upper[j])) feas = std::max(feas, v - lp_.upper[j]);
        dual_obj += sol.reduced_costs[j] * v;
        double dist = kInfinity;
        if (std::isfinite(lp_.lower[j])) dist = std::min(dist, std::abs(v - lp_.lower[j]));
        if (std::isfinite(lp_.upper[j])) dist = std::min(dist, std::abs(v - lp_.upper[j]));
        if (!std::isfinite(dist)) dist = 1.0;  // free variable: reduced cost must vanish
        cs = std::max(cs, std::abs(sol.reduced_costs[j]) * std::min(dist, 1.0));
    }
    sol.primal_residual = feas;
    sol.cs_residual = cs;
    sol.dual_objective = dual_obj;
    sol.duality_gap = std::abs(obj - dual_obj);
    return sol;
}

}  // namespace

LpSolution solve_lp(const LinearProgram& lp, const SimplexOptions& options) {
    Simplex solver(lp, options);
    return solver.solve();
}

}  // namespace cascade
