#ifndef BNCLAB_ENGINE_HPP
#define BNCLAB_ENGINE_HPP

#include "bnclab/branching.hpp"
#include "bnclab/lp.hpp"
#include "bnclab/model.hpp"

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace bnclab {

enum class NodeStatus { Branched, PrunedInfeasible, PrunedByBound, PrunedIntegral, Open };

std::string node_status_name(NodeStatus s);

struct NodeRecord {
    int id = 0;            // creation order, root = 0
    int parent = -1;
    int branch_var = -1;   // edge literal from the parent, -1 at the root
    int branch_value = -1;
    int depth = 0;
    Fixings fixings;       // cumulative
    LpOutcome lp;
    NodeStatus status = NodeStatus::Open;
    int branched_on = -1;  // variable this node branched on, -1 otherwise
    std::vector<int> children;
};

// Full record of one branch-and-bound run: every created node counts toward
// tree_size, the root included.
struct TreeRecord {
    std::map<std::string, std::string> meta;  // instance, policy, cuts, params
    std::vector<std::string> var_labels;      // for rendering branch literals
    std::vector<NodeRecord> nodes;
    std::vector<int> processing_order;
    std::vector<std::pair<int, Rational>> incumbent_trace;
    std::optional<Rational> opt_value;

    long tree_size() const { return static_cast<long>(nodes.size()); }
};

// "b_2=1" for a child node, "root" for the root.
std::string branch_literal(const TreeRecord& tree, const NodeRecord& node);

// Branching choice given a solved open node; policies wrap Brancher::choose,
// the minimum-tree chain construction scripts its own order.
using BranchChooser = std::function<int(const NodeView&)>;

// Best-bound search (max LP value, ties to the smallest node id). Node LPs
// are solved at creation; pruning happens at processing time in the order
// infeasible, bound (non-strict against the incumbent), integral. Children
// are created down-branch first.
TreeRecord run_bnb_with_chooser(const SubproblemSolver& solver, const BranchChooser& chooser,
                                std::optional<Rational> warm_start_incumbent,
                                std::map<std::string, std::string> meta = {});

TreeRecord run_bnb(const Instance& instance, const std::vector<Cut>& cuts,
                   const PolicySpec& policy, std::optional<Rational> warm_start_incumbent);

// Same search on an existing solver, so sweeps over policies can share the
// component memo.
TreeRecord run_bnb_on(const SubproblemSolver& solver, const PolicySpec& policy,
                      std::optional<Rational> warm_start_incumbent);

enum class DeviationMode { AlongExpertRun, AlongCandidateRun };

// Number of internal nodes of the base policy's run where the other policy
// would branch differently. The run is warm started at the enumeration
// optimum, matching the standing convention of the lower-bound statements.
long count_deviations(const Instance& instance, const std::vector<Cut>& cuts,
                      const PolicySpec& expert, const PolicySpec& candidate,
                      DeviationMode mode);

// Deterministic DOT rendering: edges carry branch literals, nodes carry id,
// LP value, and prune status.
std::string export_dot(const TreeRecord& tree);

std::string tree_to_json(const TreeRecord& tree);

// DOT from a stored TreeRecord JSON file; byte-identical to export_dot on
// the record that produced the file.
std::string export_dot_from_json(const std::string& tree_json);

// Engine self-checks used by the test suites: parent/child bookkeeping,
// monotone values along edges, and the best-bound processing order replayed
// from the record.
void check_tree_well_formed(const TreeRecord& tree);

}  // namespace bnclab

#endif
