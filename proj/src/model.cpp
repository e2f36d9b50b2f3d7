#include "bnclab/model.hpp"

#include "bnclab/lp.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>

namespace bnclab {

Rational dot(const SparseVec& coeffs, const std::vector<Rational>& point) {
    Rational acc(0);
    for (const auto& [var, c] : coeffs) {
        if (var < 0 || var >= static_cast<int>(point.size()))
            throw std::out_of_range("sparse index outside point dimension");
        acc += c * point[var];
    }
    return acc;
}

std::string family_of_label(const std::string& label) {
    const auto underscore = label.find('_');
    if (underscore == std::string::npos) return label;
    const std::string head = label.substr(0, underscore);
    const auto comma = label.find(',', underscore);
    if (comma == std::string::npos) return head;
    return head + label.substr(comma + 1);
}

std::vector<int> Instance::integer_vars() const {
    std::vector<int> out;
    for (int j = 0; j < num_vars(); ++j)
        if (vars[j].integer) out.push_back(j);
    return out;
}

void Instance::validate() const {
    if (vars.empty()) throw std::invalid_argument("instance has no variables");
    if (objective.size() != vars.size())
        throw std::invalid_argument("objective dimension mismatch");
    std::set<std::string> labels;
    for (const auto& v : vars) {
        if (v.label.empty()) throw std::invalid_argument("empty variable label");
        if (!labels.insert(v.label).second)
            throw std::invalid_argument("duplicate variable label " + v.label);
        if (v.lb > v.ub) throw std::invalid_argument("crossed bounds on " + v.label);
    }
    for (const auto& row : rows) {
        if (row.coeffs.empty()) throw std::invalid_argument("row with empty support");
        int prev = -1;
        for (const auto& [var, c] : row.coeffs) {
            if (var < 0 || var >= num_vars()) throw std::invalid_argument("row index out of range");
            if (var <= prev) throw std::invalid_argument("row indices must be ascending");
            if (c == 0) throw std::invalid_argument("explicit zero coefficient in row");
            prev = var;
        }
    }
}

bool Instance::binary_branchable() const {
    for (const auto& v : vars)
        if (v.integer && (v.lb != 0 || v.ub != 1)) return false;
    return true;
}

void Fixings::assign(int var, int value) {
    if (value != 0 && value != 1) throw std::invalid_argument("fixing value must be 0 or 1");
    auto [it, inserted] = values_.emplace(var, value);
    if (!inserted) throw std::invalid_argument("duplicate fixing of variable");
}

Fixings Fixings::with(int var, int value) const {
    Fixings copy = *this;
    copy.assign(var, value);
    return copy;
}

std::string Fixings::key() const {
    std::ostringstream os;
    bool first = true;
    for (const auto& [var, val] : values_) {
        if (!first) os << ',';
        os << var << '=' << val;
        first = false;
    }
    return os.str();
}

namespace {

struct ComponentView {
    std::vector<int> vars;  // global ids ascending
    Instance sub;           // renumbered standalone instance
};

// Splits the constraint graph (rows plus cuts) into connected components and
// builds a standalone sub-instance per component.
std::vector<ComponentView> split_components(const Instance& instance,
                                            const std::vector<Cut>& cuts) {
    const int n = instance.num_vars();
    std::vector<int> parent(n);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int a) {
        while (parent[a] != a) a = parent[a] = parent[parent[a]];
        return a;
    };
    auto unite = [&](const SparseVec& coeffs) {
        for (std::size_t k = 1; k < coeffs.size(); ++k)
            parent[find(coeffs[0].first)] = find(coeffs[k].first);
    };
    for (const auto& row : instance.rows) unite(row.coeffs);
    for (const auto& cut : cuts) unite(cut.coeffs);

    std::vector<int> comp_of(n, -1), slot_of(n, -1);
    std::vector<ComponentView> views;
    for (int j = 0; j < n; ++j) {
        const int r = find(j);
        if (comp_of[r] < 0) {
            comp_of[r] = static_cast<int>(views.size());
            views.emplace_back();
        }
        comp_of[j] = comp_of[r];
        ComponentView& view = views[comp_of[j]];
        slot_of[j] = static_cast<int>(view.vars.size());
        view.vars.push_back(j);
        view.sub.vars.push_back(instance.vars[j]);
        view.sub.objective.push_back(instance.objective[j]);
    }
    auto remap = [&](const SparseVec& coeffs) {
        SparseVec out;
        out.reserve(coeffs.size());
        for (const auto& [var, c] : coeffs) out.emplace_back(slot_of[var], c);
        std::sort(out.begin(), out.end());
        return out;
    };
    for (const auto& row : instance.rows) {
        ComponentView& view = views[comp_of[row.coeffs[0].first]];
        view.sub.rows.push_back({remap(row.coeffs), row.sense, row.rhs});
    }
    for (const auto& cut : cuts) {
        ComponentView& view = views[comp_of[cut.coeffs[0].first]];
        view.sub.rows.push_back({remap(cut.coeffs), Sense::LessEq, cut.rhs});
    }
    for (auto& view : views) view.sub.name = instance.name + "#comp";
    return views;
}

struct ComponentOpt {
    Rational value;
    std::vector<std::vector<Rational>> points;  // full component vectors
    long count = 0;
    bool truncated = false;
};

// Exact optimum of `objective` over the mixed-integer points of one
// component, by enumeration of the integer ranges with an LP completion for
// continuous variables.
ComponentOpt optimize_component(const ComponentView& view,
                                const std::vector<Rational>& objective) {
    const Instance& sub = view.sub;
    std::vector<int> ints;
    std::vector<long> range;
    double combos = 1;
    for (int j = 0; j < sub.num_vars(); ++j) {
        if (!sub.vars[j].integer) continue;
        if (!is_integral(sub.vars[j].lb) || !is_integral(sub.vars[j].ub))
            throw std::invalid_argument("integer variable with fractional bounds");
        const long width =
            (numerator(sub.vars[j].ub) - numerator(sub.vars[j].lb)).convert_to<long>() + 1;
        if (width <= 0) throw std::invalid_argument("empty integer range");
        ints.push_back(j);
        range.push_back(width);
        combos *= static_cast<double>(width);
    }
    if (static_cast<int>(ints.size()) > kEnumerationGuard ||
        combos > static_cast<double>(1L << kEnumerationGuard))
        throw std::invalid_argument("enumeration guard exceeded on component");

    const bool pure_integer =
        static_cast<std::size_t>(sub.num_vars()) == ints.size();

    ComponentOpt best;
    bool have = false;
    std::vector<long> idx(ints.size(), 0);
    std::vector<Rational> point(sub.num_vars(), Rational(0));
    for (;;) {
        for (std::size_t k = 0; k < ints.size(); ++k)
            point[ints[k]] = sub.vars[ints[k]].lb + Rational(idx[k]);

        bool feasible = true;
        Rational value(0);
        if (pure_integer) {
            for (const auto& row : sub.rows) {
                const Rational lhs = dot(row.coeffs, point);
                if (row.sense == Sense::LessEq ? lhs > row.rhs : lhs != row.rhs) {
                    feasible = false;
                    break;
                }
            }
            if (feasible)
                for (int j = 0; j < sub.num_vars(); ++j)
                    if (objective[j] != 0) value += objective[j] * point[j];
        } else {
            // Optimize the continuous completion under this assignment.
            Instance restricted = sub;
            restricted.objective = objective;
            for (std::size_t k = 0; k < ints.size(); ++k)
                restricted.vars[ints[k]].lb = restricted.vars[ints[k]].ub = point[ints[k]];
            const LpOutcome lp = solve_lp(restricted, {}, Fixings{});
            if (lp.status == LpStatus::Unbounded)
                throw std::runtime_error("unbounded continuous completion");
            feasible = lp.status == LpStatus::Optimal;
            if (feasible) {
                value = lp.value.value();
                point = lp.vertex;
            }
        }

        if (feasible) {
            if (best.count < std::numeric_limits<long>::max()) best.count += 1;
            if (!have || value > best.value) {
                best.value = value;
                best.points.clear();
                best.points.push_back(point);
                best.truncated = false;
                have = true;
            } else if (value == best.value) {
                if (best.points.size() < static_cast<std::size_t>(kOptPointCap))
                    best.points.push_back(point);
                else
                    best.truncated = true;
            }
        }

        std::size_t k = 0;
        while (k < idx.size() && ++idx[k] == range[k]) idx[k++] = 0;
        if (k == idx.size()) break;
    }
    if (!have) best.count = 0;
    return best;
}

}  // namespace

EnumerationResult enumerate_binary(const Instance& instance, const std::vector<Cut>& cuts) {
    instance.validate();
    const auto views = split_components(instance, cuts);

    EnumerationResult result;
    result.opt_value = 0;
    result.opt_points.assign(1, std::vector<Rational>(instance.num_vars(), Rational(0)));
    result.feasible_count = 1;
    for (const auto& view : views) {
        const ComponentOpt comp = optimize_component(view, view.sub.objective);
        if (comp.count == 0) throw std::runtime_error("no mixed-integer feasible point");
        result.opt_value += comp.value;
        if (result.feasible_count > std::numeric_limits<long>::max() / comp.count)
            result.feasible_count = std::numeric_limits<long>::max();
        else
            result.feasible_count *= comp.count;
        result.opt_points_truncated |= comp.truncated;

        // Cross product of per-component optima, capped.
        std::vector<std::vector<Rational>> merged;
        bool capped = false;
        for (const auto& base : result.opt_points) {
            for (const auto& cpoint : comp.points) {
                if (merged.size() >= static_cast<std::size_t>(kOptPointCap)) {
                    capped = true;
                    break;
                }
                std::vector<Rational> full = base;
                for (std::size_t k = 0; k < view.vars.size(); ++k)
                    full[view.vars[k]] = cpoint[k];
                merged.push_back(std::move(full));
            }
            if (capped) break;
        }
        result.opt_points_truncated |= capped;
        result.opt_points = std::move(merged);
    }
    return result;
}

bool check_cut_validity(const Instance& instance, const Cut& cut) {
    instance.validate();
    // Valid iff max of the cut expression over the mixed-integer set stays
    // at or below the right-hand side; the max splits over components. An
    // integer-infeasible instance makes every cut vacuously valid.
    const auto views = split_components(instance, {});
    Rational total(0);
    for (const auto& view : views) {
        std::vector<Rational> objective(view.sub.num_vars(), Rational(0));
        for (const auto& [var, c] : cut.coeffs)
            for (std::size_t k = 0; k < view.vars.size(); ++k)
                if (view.vars[k] == var) objective[k] = c;
        const ComponentOpt comp = optimize_component(view, objective);
        if (comp.count == 0) return true;
        total += comp.value;
    }
    return total <= cut.rhs;
}

bool is_violated_at(const Cut& cut, const std::vector<Rational>& point) {
    return dot(cut.coeffs, point) > cut.rhs;
}

}  // namespace bnclab
