#ifndef BNCLAB_MODEL_HPP
#define BNCLAB_MODEL_HPP

#include "bnclab/rational.hpp"

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace bnclab {

enum class Sense { LessEq, Equal };

// Sparse exact row: sorted (variable index, coefficient) pairs.
using SparseVec = std::vector<std::pair<int, Rational>>;

Rational dot(const SparseVec& coeffs, const std::vector<Rational>& point);

struct RowConstraint {
    SparseVec coeffs;
    Sense sense = Sense::LessEq;
    Rational rhs;
};

struct VarInfo {
    std::string label;
    bool integer = false;
    Rational lb;
    Rational ub;
    std::optional<int> block;  // 1-based block index from the family generator

    // Derived from the label: "b_2" -> "b", "y_3,1" -> "y1", "x_1" -> "x".
    // Plain "y_4" (no comma) stays family "y"; the triangles padding uses it.
    std::string family;
};

std::string family_of_label(const std::string& label);

// Immutable MILP in maximization form: max c.x s.t. rows, bounds l <= x <= u.
// Cuts are kept outside and applied as derived views so one instance serves
// many cut-set and policy experiments.
struct Instance {
    std::string name;
    std::vector<VarInfo> vars;
    std::vector<Rational> objective;
    std::vector<RowConstraint> rows;

    int num_vars() const { return static_cast<int>(vars.size()); }
    std::vector<int> integer_vars() const;

    // Structural sanity: dimensions agree, labels unique, bounds ordered,
    // row indices in range and sorted.
    void validate() const;

    // True when every integer variable has bounds exactly [0, 1]; the
    // engine branches only on such instances.
    bool binary_branchable() const;
};

struct Cut {
    std::string id;
    SparseVec coeffs;
    Rational rhs;
    std::optional<std::string> paired_with;
};

// Cumulative 0/1 fixings along a branch-and-bound path.
class Fixings {
  public:
    Fixings() = default;

    void assign(int var, int value);
    bool has(int var) const { return values_.count(var) != 0; }
    int value_of(int var) const { return values_.at(var); }
    int size() const { return static_cast<int>(values_.size()); }
    bool empty() const { return values_.empty(); }
    const std::map<int, int>& entries() const { return values_; }

    Fixings with(int var, int value) const;

    // Canonical "i=v,j=w" listing, ascending variable index.
    std::string key() const;

  private:
    std::map<int, int> values_;
};

struct EnumerationResult {
    Rational opt_value;
    std::vector<std::vector<Rational>> opt_points;  // integer assignments, capped
    long feasible_count = 0;
    bool opt_points_truncated = false;
};

inline constexpr int kEnumerationGuard = 24;       // max integer vars per component
inline constexpr int kOptPointCap = 64;

// Ground-truth mixed-integer optimum by exhaustive enumeration of integer
// assignments (component-wise, so separable families stay cheap). Continuous
// variables are optimized by the LP solver under each assignment.
EnumerationResult enumerate_binary(const Instance& instance, const std::vector<Cut>& cuts);

// Valid iff every mixed-integer feasible point satisfies coeffs.x <= rhs;
// checked by enumeration, with an LP per assignment when the cut touches
// continuous variables.
bool check_cut_validity(const Instance& instance, const Cut& cut);

// Strict violation: coeffs.point > rhs exactly. Boundary is not violation.
bool is_violated_at(const Cut& cut, const std::vector<Rational>& point);

}  // namespace bnclab

#endif
