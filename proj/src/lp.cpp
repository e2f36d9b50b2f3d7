#include "bnclab/lp.hpp"

#include <algorithm>
#include <cstdio>
#include <numeric>
#include <stdexcept>

namespace bnclab {

namespace {

constexpr long kPivotGuard = 200000;  // per component solve; Bland terminates well below

enum class ColState : char { Basic, AtLower, AtUpper };

struct ComponentRow {
    std::vector<Rational> coeffs;  // dense over component variables
    Sense sense;
    Rational rhs;
    int global_row;  // instance rows first, cuts after
};

struct Component {
    std::vector<int> vars;  // global variable ids, ascending
    std::vector<ComponentRow> rows;
};

struct ComponentResult {
    LpStatus status = LpStatus::Infeasible;
    Rational value;
    std::vector<Rational> x;          // per component variable
    std::vector<Rational> row_duals;  // per component row
    std::vector<Rational> red_costs;  // per component variable
    long pivots = 0;
};

// Bounded-variable primal simplex over a dense tableau. Columns are the
// component structurals followed by one logical per row and any phase-1
// artificials; Bland's rule uses that order, which matches the smallest
// global index order of the whole LP restricted to this component.
class DenseSimplex {
  public:
    DenseSimplex(const Component& comp, const std::vector<Rational>& objective,
                 std::vector<Rational> lb, std::vector<Rational> ub, bool trace)
        : comp_(comp), ns_(static_cast<int>(comp.vars.size())),
          m_(static_cast<int>(comp.rows.size())), lb_(std::move(lb)), ub_(std::move(ub)),
          trace_(trace) {
        obj_.assign(ns_, Rational(0));
        for (int j = 0; j < ns_; ++j) obj_[j] = objective[comp_.vars[j]];
    }

    ComponentResult run() {
        build();
        if (!feasible_start_ && !phase_one()) {
            ComponentResult r;
            r.status = LpStatus::Infeasible;
            r.pivots = pivots_;
            return r;
        }
        return phase_two();
    }

  private:
    int total_cols() const { return static_cast<int>(col_lb_.size()); }

    void build() {
        const int ncols0 = ns_ + m_;
        col_lb_.assign(ncols0, Rational(0));
        col_ub_.assign(ncols0, Rational(0));
        ub_finite_.assign(ncols0, true);
        state_.assign(ncols0, ColState::AtLower);
        for (int j = 0; j < ns_; ++j) {
            col_lb_[j] = lb_[j];
            col_ub_[j] = ub_[j];
        }
        for (int i = 0; i < m_; ++i) {
            const int sj = ns_ + i;
            if (comp_.rows[i].sense == Sense::LessEq) {
                ub_finite_[sj] = false;  // slack in [0, inf)
            }  // Equal rows get a logical pinned to [0, 0]
        }

        T_.assign(m_, std::vector<Rational>(ncols0, Rational(0)));
        basis_.assign(m_, -1);
        xB_.assign(m_, Rational(0));
        feasible_start_ = true;

        for (int i = 0; i < m_; ++i) {
            Rational activity(0);
            for (int j = 0; j < ns_; ++j) {
                T_[i][j] = comp_.rows[i].coeffs[j];
                if (T_[i][j] != 0) activity += T_[i][j] * col_lb_[j];
            }
            T_[i][ns_ + i] = 1;
            const Rational slack = comp_.rows[i].rhs - activity;
            const bool in_bounds =
                slack >= 0 && (comp_.rows[i].sense == Sense::LessEq || slack == 0);
            if (in_bounds) {
                basis_[i] = ns_ + i;
                state_[ns_ + i] = ColState::Basic;
                xB_[i] = slack;
            } else {
                needs_artificial_.push_back(i);
                feasible_start_ = false;
                pending_slack_.push_back(slack);
            }
        }
    }

    bool phase_one() {
        // One artificial per violated row, entering the basis at |slack|.
        for (std::size_t k = 0; k < needs_artificial_.size(); ++k) {
            const int i = needs_artificial_[k];
            const int aj = total_cols();
            col_lb_.push_back(Rational(0));
            col_ub_.push_back(Rational(0));
            ub_finite_.push_back(false);
            state_.push_back(ColState::Basic);
            const int sigma = pending_slack_[k] < 0 ? -1 : 1;
            for (int r = 0; r < m_; ++r) T_[r].push_back(Rational(0));
            T_[i][aj] = sigma;
            if (sigma < 0)
                for (auto& v : T_[i]) v = -v;
            basis_[i] = aj;
            xB_[i] = sigma < 0 ? Rational(-pending_slack_[k]) : pending_slack_[k];
        }
        first_artificial_ = ns_ + m_;

        std::vector<Rational> phase_obj(total_cols(), Rational(0));
        for (int j = first_artificial_; j < total_cols(); ++j) phase_obj[j] = -1;
        init_reduced_costs(phase_obj);
        iterate(/*phase1=*/true);

        Rational infeas(0);
        for (int i = 0; i < m_; ++i)
            if (basis_[i] >= first_artificial_) infeas += xB_[i];
        if (infeas != 0) return false;
        // Pin artificials; ones still basic sit at zero and leave on the
        // first degenerate ratio that touches their row.
        for (int j = first_artificial_; j < total_cols(); ++j) ub_finite_[j] = true;
        return true;
    }

    ComponentResult phase_two() {
        std::vector<Rational> phase_obj(total_cols(), Rational(0));
        for (int j = 0; j < ns_; ++j) phase_obj[j] = obj_[j];
        init_reduced_costs(phase_obj);
        const bool bounded = iterate(/*phase1=*/false);

        ComponentResult res;
        res.pivots = pivots_;
        if (!bounded) {
            res.status = LpStatus::Unbounded;
            return res;
        }
        res.status = LpStatus::Optimal;
        res.x.assign(ns_, Rational(0));
        for (int j = 0; j < ns_; ++j) res.x[j] = column_value(j);
        res.value = std::inner_product(res.x.begin(), res.x.end(), obj_.begin(), Rational(0));
        res.row_duals.assign(m_, Rational(0));
        for (int i = 0; i < m_; ++i) res.row_duals[i] = -d_[ns_ + i];
        res.red_costs.assign(d_.begin(), d_.begin() + ns_);
        return res;
    }

    Rational column_value(int j) const {
        switch (state_[j]) {
            case ColState::AtLower: return col_lb_[j];
            case ColState::AtUpper: return col_ub_[j];
            default:
                for (int i = 0; i < m_; ++i)
                    if (basis_[i] == j) return xB_[i];
                throw std::logic_error("basic column not in basis");
        }
    }

    void init_reduced_costs(const std::vector<Rational>& c) {
        d_ = c;
        for (int i = 0; i < m_; ++i) {
            const Rational& cb = c[basis_[i]];
            if (cb == 0) continue;
            for (int k = 0; k < total_cols(); ++k)
                if (T_[i][k] != 0) d_[k] -= cb * T_[i][k];
        }
    }

    bool fixed_range(int j) const { return ub_finite_[j] && col_lb_[j] == col_ub_[j]; }

    // Returns false only on phase-2 unboundedness.
    bool iterate(bool phase1) {
        for (;;) {
            if (++pivots_ > kPivotGuard) throw std::runtime_error("simplex pivot guard tripped");
            int enter = -1, dir = 0;
            for (int j = 0; j < total_cols(); ++j) {
                if (state_[j] == ColState::Basic || fixed_range(j)) continue;
                if (state_[j] == ColState::AtLower && d_[j] > 0) {
                    enter = j;
                    dir = 1;
                    break;
                }
                if (state_[j] == ColState::AtUpper && d_[j] < 0) {
                    enter = j;
                    dir = -1;
                    break;
                }
            }
            if (enter < 0) return true;

            // Ratio test. rate_i is the change of the row's basic value per
            // unit step of the entering variable.
            bool have_t = false;
            Rational t;
            int leave_row = -1;
            bool leave_at_upper = false;
            if (ub_finite_[enter]) {
                t = col_ub_[enter] - col_lb_[enter];
                have_t = true;
            }
            for (int i = 0; i < m_; ++i) {
                const Rational& coef = T_[i][enter];
                if (coef == 0) continue;
                const int rate_sign = dir > 0 ? -coef.sign() : coef.sign();
                Rational ti;
                bool hits_upper;
                if (rate_sign < 0) {
                    ti = (xB_[i] - col_lb_[basis_[i]]) / (dir > 0 ? coef : -coef);
                    hits_upper = false;
                } else {
                    if (!ub_finite_[basis_[i]]) continue;
                    ti = (col_ub_[basis_[i]] - xB_[i]) / (dir > 0 ? -coef : coef);
                    hits_upper = true;
                }
                if (!have_t || ti < t ||
                    (ti == t && (leave_row < 0 || basis_[i] < basis_[leave_row]))) {
                    // Strict improvement, or Bland tie-break on the leaving
                    // variable; the entering variable's own bound wins ties.
                    if (have_t && ti == t && leave_row < 0) continue;
                    t = ti;
                    have_t = true;
                    leave_row = i;
                    leave_at_upper = hits_upper;
                }
            }
            if (!have_t) {
                if (phase1) throw std::logic_error("phase-1 objective unbounded");
                return false;
            }

            // Apply the step to all basic values.
            if (t != 0) {
                for (int i = 0; i < m_; ++i) {
                    const Rational& coef = T_[i][enter];
                    if (coef == 0) continue;
                    xB_[i] -= (dir > 0 ? coef : -coef) * t;
                }
            }
            if (leave_row < 0) {
                // Bound flip.
                state_[enter] = dir > 0 ? ColState::AtUpper : ColState::AtLower;
                if (trace_) std::fprintf(stderr, "flip col %d dir %d\n", enter, dir);
                continue;
            }

            const int leave = basis_[leave_row];
            const Rational enter_value =
                dir > 0 ? Rational(col_lb_[enter] + t) : Rational(col_ub_[enter] - t);
            state_[leave] = leave_at_upper ? ColState::AtUpper : ColState::AtLower;
            state_[enter] = ColState::Basic;
            basis_[leave_row] = enter;
            xB_[leave_row] = enter_value;
            if (trace_)
                std::fprintf(stderr, "pivot col %d dir %d row %d out %d\n", enter, dir,
                             leave_row, leave);

            // Eliminate the entering column.
            std::vector<Rational>& prow = T_[leave_row];
            const Rational piv = prow[enter];
            if (piv != 1)
                for (auto& v : prow)
                    if (v != 0) v /= piv;
            for (int i = 0; i < m_; ++i) {
                if (i == leave_row) continue;
                const Rational f = T_[i][enter];
                if (f == 0) continue;
                std::vector<Rational>& row = T_[i];
                for (int k = 0; k < total_cols(); ++k)
                    if (prow[k] != 0) row[k] -= f * prow[k];
            }
            const Rational fd = d_[enter];
            if (fd != 0)
                for (int k = 0; k < total_cols(); ++k)
                    if (prow[k] != 0) d_[k] -= fd * prow[k];
        }
    }

    const Component& comp_;
    int ns_;
    int m_;
    std::vector<Rational> lb_, ub_;
    bool trace_;
    std::vector<Rational> obj_;

    std::vector<std::vector<Rational>> T_;
    std::vector<Rational> d_;
    std::vector<Rational> xB_;
    std::vector<int> basis_;
    std::vector<ColState> state_;
    std::vector<Rational> col_lb_, col_ub_;
    std::vector<char> ub_finite_;
    std::vector<int> needs_artificial_;
    std::vector<Rational> pending_slack_;
    int first_artificial_ = -1;
    bool feasible_start_ = true;
    long pivots_ = 0;
};

struct UnionFind {
    std::vector<int> parent;
    explicit UnionFind(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
    int find(int a) {
        while (parent[a] != a) a = parent[a] = parent[parent[a]];
        return a;
    }
    void unite(int a, int b) { parent[find(a)] = find(b); }
};

}  // namespace

struct SubproblemSolver::Impl {
    std::vector<Component> components;
    std::vector<int> var_component;       // global var -> component index
    std::vector<int> var_slot;            // global var -> position within component
    mutable std::vector<std::unordered_map<std::string, ComponentResult>> memo;
    bool memoize = true;
    bool trace = false;
    int num_rows_total = 0;
};

SubproblemSolver::SubproblemSolver(const Instance& instance, std::vector<Cut> cuts,
                                   bool memoize, bool force_single_component)
    : instance_(instance), cuts_(std::move(cuts)), impl_(std::make_unique<Impl>()) {
    instance.validate();
    const int n = instance.num_vars();
    UnionFind uf(n);
    auto unite_support = [&](const SparseVec& coeffs) {
        if (coeffs.empty()) throw std::invalid_argument("constraint with empty support");
        for (std::size_t k = 1; k < coeffs.size(); ++k)
            uf.unite(coeffs[0].first, coeffs[k].first);
    };
    for (const auto& row : instance.rows) unite_support(row.coeffs);
    for (const auto& cut : cuts_) unite_support(cut.coeffs);
    if (force_single_component && n > 1)
        for (int j = 1; j < n; ++j) uf.unite(0, j);

    std::vector<int> root_to_comp(n, -1);
    impl_->var_component.assign(n, -1);
    impl_->var_slot.assign(n, -1);
    for (int j = 0; j < n; ++j) {
        const int r = uf.find(j);
        if (root_to_comp[r] < 0) {
            root_to_comp[r] = static_cast<int>(impl_->components.size());
            impl_->components.emplace_back();
        }
        Component& comp = impl_->components[root_to_comp[r]];
        impl_->var_component[j] = root_to_comp[r];
        impl_->var_slot[j] = static_cast<int>(comp.vars.size());
        comp.vars.push_back(j);
    }

    auto add_row = [&](const SparseVec& coeffs, Sense sense, const Rational& rhs,
                       int global_row) {
        const int ci = impl_->var_component[coeffs[0].first];
        Component& comp = impl_->components[ci];
        ComponentRow row;
        row.coeffs.assign(comp.vars.size(), Rational(0));
        for (const auto& [var, c] : coeffs) row.coeffs[impl_->var_slot[var]] = c;
        row.sense = sense;
        row.rhs = rhs;
        row.global_row = global_row;
        comp.rows.push_back(std::move(row));
    };
    int grow = 0;
    for (const auto& row : instance.rows) add_row(row.coeffs, row.sense, row.rhs, grow++);
    for (const auto& cut : cuts_) add_row(cut.coeffs, Sense::LessEq, cut.rhs, grow++);
    impl_->num_rows_total = grow;
    impl_->memo.resize(impl_->components.size());
    impl_->memoize = memoize;
}

SubproblemSolver::~SubproblemSolver() = default;

void SubproblemSolver::set_trace(bool on) { impl_->trace = on; }

LpOutcome SubproblemSolver::solve(const Fixings& fixings) const {
    const int n = instance_.num_vars();
    for (const auto& [var, val] : fixings.entries()) {
        if (var < 0 || var >= n) throw std::invalid_argument("fixing on unknown variable");
        const VarInfo& info = instance_.vars[var];
        if (!info.integer) throw std::invalid_argument("fixing on continuous variable");
        if (val != 0 && val != 1) throw std::invalid_argument("fixing value must be 0 or 1");
        if (Rational(val) < info.lb || Rational(val) > info.ub)
            throw std::invalid_argument("fixing value outside bounds");
    }

    LpOutcome out;
    out.status = LpStatus::Optimal;
    out.value = ExtendedRational(Rational(0));
    out.vertex.assign(n, Rational(0));
    out.row_duals.assign(impl_->num_rows_total, Rational(0));
    out.reduced_costs.assign(n, Rational(0));
    Rational total(0);

    for (std::size_t ci = 0; ci < impl_->components.size(); ++ci) {
        const Component& comp = impl_->components[ci];
        std::string key;
        key.reserve(comp.vars.size());
        for (int var : comp.vars)
            key.push_back(fixings.has(var) ? static_cast<char>('0' + fixings.value_of(var))
                                           : '.');
        const ComponentResult* cached = nullptr;
        auto& memo = impl_->memo[ci];
        if (impl_->memoize) {
            auto it = memo.find(key);
            if (it != memo.end()) cached = &it->second;
        }
        ComponentResult fresh;
        if (!cached) {
            std::vector<Rational> lb(comp.vars.size()), ub(comp.vars.size());
            for (std::size_t k = 0; k < comp.vars.size(); ++k) {
                const int var = comp.vars[k];
                if (fixings.has(var)) {
                    lb[k] = ub[k] = Rational(fixings.value_of(var));
                } else {
                    lb[k] = instance_.vars[var].lb;
                    ub[k] = instance_.vars[var].ub;
                }
            }
            DenseSimplex simplex(comp, instance_.objective, std::move(lb), std::move(ub),
                                 impl_->trace);
            fresh = simplex.run();
            if (impl_->memoize) {
                auto [it, ok] = memo.emplace(std::move(key), std::move(fresh));
                cached = &it->second;
            } else {
                cached = &fresh;
            }
        }
        out.pivot_count += cached->pivots;
        if (cached->status == LpStatus::Infeasible) {
            out.status = LpStatus::Infeasible;
            out.value = ExtendedRational::neg_inf();
            out.vertex.clear();
            out.row_duals.clear();
            out.reduced_costs.clear();
            return out;
        }
        if (cached->status == LpStatus::Unbounded) {
            out.status = LpStatus::Unbounded;
            out.value = ExtendedRational::pos_inf();
            out.vertex.clear();
            out.row_duals.clear();
            out.reduced_costs.clear();
            return out;
        }
        total += cached->value;
        for (std::size_t k = 0; k < comp.vars.size(); ++k) {
            out.vertex[comp.vars[k]] = cached->x[k];
            out.reduced_costs[comp.vars[k]] = cached->red_costs[k];
        }
        for (std::size_t k = 0; k < comp.rows.size(); ++k)
            out.row_duals[comp.rows[k].global_row] = cached->row_duals[k];
    }
    out.value = ExtendedRational(total);
    return out;
}

LpOutcome solve_lp(const Instance& instance, const std::vector<Cut>& cuts,
                   const Fixings& fixings) {
    SubproblemSolver solver(instance, cuts, /*memoize=*/false);
    return solver.solve(fixings);
}

namespace {

bool verify_against_certificate(const Instance& instance, const std::vector<Cut>& cuts,
                                const Fixings& fixings, const LpOutcome& outcome,
                                const LpOutcome& cert);

}  // namespace

bool verify_optimality(const Instance& instance, const std::vector<Cut>& cuts,
                       const Fixings& fixings, const LpOutcome& outcome) {
    if (outcome.status != LpStatus::Optimal) return false;
    return verify_against_certificate(instance, cuts, fixings, outcome,
                                      solve_lp(instance, cuts, fixings));
}

bool verify_optimality(const SubproblemSolver& solver, const Fixings& fixings,
                       const LpOutcome& outcome) {
    if (outcome.status != LpStatus::Optimal) return false;
    return verify_against_certificate(solver.instance(), solver.cuts(), fixings, outcome,
                                      solver.solve(fixings));
}

namespace {

bool verify_against_certificate(const Instance& instance, const std::vector<Cut>& cuts,
                                const Fixings& fixings, const LpOutcome& outcome,
                                const LpOutcome& cert) {
    if (outcome.status != LpStatus::Optimal || !outcome.value.is_finite()) return false;
    const int n = instance.num_vars();
    if (static_cast<int>(outcome.vertex.size()) != n) return false;

    // Primal feasibility, exactly.
    for (int j = 0; j < n; ++j) {
        Rational lb = instance.vars[j].lb, ub = instance.vars[j].ub;
        if (fixings.has(j)) lb = ub = Rational(fixings.value_of(j));
        if (outcome.vertex[j] < lb || outcome.vertex[j] > ub) return false;
    }
    for (const auto& row : instance.rows) {
        const Rational lhs = dot(row.coeffs, outcome.vertex);
        if (row.sense == Sense::LessEq ? lhs > row.rhs : lhs != row.rhs) return false;
    }
    for (const auto& cut : cuts)
        if (dot(cut.coeffs, outcome.vertex) > cut.rhs) return false;

    Rational obj(0);
    for (int j = 0; j < n; ++j)
        if (instance.objective[j] != 0) obj += instance.objective[j] * outcome.vertex[j];
    if (obj != outcome.value.value()) return false;

    // Re-check every dual condition of the exhibited certificate from
    // scratch; weak duality then proves optimality of the vertex.
    if (cert.status != LpStatus::Optimal) return false;

    std::vector<Rational> atx(n, Rational(0));  // sum_i y_i A_ij
    Rational dual_obj(0);
    int row_index = 0;
    auto accumulate = [&](const SparseVec& coeffs, Sense sense, const Rational& rhs) {
        const Rational& y = cert.row_duals[row_index++];
        if (sense == Sense::LessEq && y < 0) return false;
        if (y == 0) return true;
        for (const auto& [var, c] : coeffs) atx[var] += y * c;
        dual_obj += y * rhs;
        return true;
    };
    for (const auto& row : instance.rows)
        if (!accumulate(row.coeffs, row.sense, row.rhs)) return false;
    for (const auto& cut : cuts)
        if (!accumulate(cut.coeffs, Sense::LessEq, cut.rhs)) return false;

    for (int j = 0; j < n; ++j) {
        const Rational dj = instance.objective[j] - atx[j];
        Rational lb = instance.vars[j].lb, ub = instance.vars[j].ub;
        if (fixings.has(j)) lb = ub = Rational(fixings.value_of(j));
        if (dj > 0)
            dual_obj += dj * ub;  // upper-bound multiplier
        else if (dj < 0)
            dual_obj += dj * lb;  // lower-bound multiplier, sign folded in
    }
    return dual_obj == outcome.value.value();
}

}  // namespace

}  // namespace bnclab
