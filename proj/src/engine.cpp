#include "bnclab/engine.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <set>
#include <sstream>
#include <stdexcept>

namespace bnclab {

std::string node_status_name(NodeStatus s) {
    switch (s) {
        case NodeStatus::Branched: return "Branched";
        case NodeStatus::PrunedInfeasible: return "PrunedInfeasible";
        case NodeStatus::PrunedByBound: return "PrunedByBound";
        case NodeStatus::PrunedIntegral: return "PrunedIntegral";
        case NodeStatus::Open: return "Open";
    }
    throw std::logic_error("unknown node status");
}

namespace {

// Best-bound order: larger LP value first, then smaller id.
struct OpenOrder {
    ExtendedRational value;
    int id;
    bool operator<(const OpenOrder& o) const {
        const int c = value.compare(o.value);
        if (c != 0) return c > 0;
        return id < o.id;
    }
};

bool vertex_integral(const Instance& inst, const LpOutcome& lp) {
    for (int j = 0; j < inst.num_vars(); ++j)
        if (inst.vars[j].integer && !is_integral(lp.vertex[j])) return false;
    return true;
}

}  // namespace

TreeRecord run_bnb_with_chooser(const SubproblemSolver& solver, const BranchChooser& chooser,
                                std::optional<Rational> warm_start_incumbent,
                                std::map<std::string, std::string> meta) {
    const Instance& inst = solver.instance();
    if (!inst.binary_branchable())
        throw std::invalid_argument("engine requires binary integer variables");

    TreeRecord rec;
    rec.meta = std::move(meta);
    rec.meta["instance"] = inst.name;
    for (const auto& v : inst.vars) rec.var_labels.push_back(v.label);
    rec.meta["incumbent"] =
        warm_start_incumbent ? to_string(*warm_start_incumbent) : std::string("none");

    std::optional<Rational> incumbent = warm_start_incumbent;
    std::set<OpenOrder> open;

    auto create = [&](const Fixings& fixings, int parent, int var, int value) {
        NodeRecord node;
        node.id = static_cast<int>(rec.nodes.size());
        node.parent = parent;
        node.branch_var = var;
        node.branch_value = value;
        node.depth = fixings.size();
        node.fixings = fixings;
        node.lp = solver.solve(fixings);
        if (node.lp.status == LpStatus::Unbounded)
            throw std::runtime_error("unbounded node LP; instance is not a box");
        open.insert(OpenOrder{node.lp.value, node.id});
        if (parent >= 0) rec.nodes[parent].children.push_back(node.id);
        rec.nodes.push_back(std::move(node));
    };

    create(Fixings{}, -1, -1, -1);
    while (!open.empty()) {
        const OpenOrder top = *open.begin();
        open.erase(open.begin());
        NodeRecord& node = rec.nodes[top.id];
        rec.processing_order.push_back(node.id);

        if (node.lp.status == LpStatus::Infeasible) {
            node.status = NodeStatus::PrunedInfeasible;
            continue;
        }
        if (incumbent && node.lp.value <= ExtendedRational(*incumbent)) {
            node.status = NodeStatus::PrunedByBound;
            continue;
        }
        if (vertex_integral(inst, node.lp)) {
            node.status = NodeStatus::PrunedIntegral;
            incumbent = node.lp.value.value();
            rec.incumbent_trace.emplace_back(node.id, *incumbent);
            continue;
        }

        const int j = chooser(NodeView{node.fixings, node.lp});
        if (j < 0 || j >= inst.num_vars() || !inst.vars[j].integer)
            throw std::logic_error("chooser returned a non-branchable variable");
        if (node.fixings.has(j)) throw std::logic_error("chooser returned a fixed variable");
        if (is_integral(node.lp.vertex[j]))
            throw std::logic_error("chooser returned a variable integral at the node vertex");
        node.status = NodeStatus::Branched;
        node.branched_on = j;
        const Fixings base = node.fixings;  // node reference invalidated by create()
        const int id = node.id;
        create(base.with(j, 0), id, j, 0);
        create(base.with(j, 1), id, j, 1);
    }

    rec.opt_value = incumbent;
    return rec;
}

TreeRecord run_bnb_on(const SubproblemSolver& solver, const PolicySpec& policy,
                      std::optional<Rational> warm_start_incumbent) {
    policy.validate();
    Brancher brancher(solver);
    std::map<std::string, std::string> meta;
    meta["policy"] = policy.name();
    meta["eta"] = to_string(policy.eta);
    if (policy.epsilon) meta["epsilon"] = to_string(*policy.epsilon);
    if (policy.kappa) meta["kappa"] = to_string(*policy.kappa);
    if (policy.k) meta["k"] = std::to_string(*policy.k);
    return run_bnb_with_chooser(
        solver, [&](const NodeView& node) { return brancher.choose(policy, node); },
        std::move(warm_start_incumbent), std::move(meta));
}

TreeRecord run_bnb(const Instance& instance, const std::vector<Cut>& cuts,
                   const PolicySpec& policy, std::optional<Rational> warm_start_incumbent) {
    SubproblemSolver solver(instance, cuts);
    return run_bnb_on(solver, policy, std::move(warm_start_incumbent));
}

long count_deviations(const Instance& instance, const std::vector<Cut>& cuts,
                      const PolicySpec& expert, const PolicySpec& candidate,
                      DeviationMode mode) {
    const PolicySpec& base = mode == DeviationMode::AlongExpertRun ? expert : candidate;
    const PolicySpec& probe = mode == DeviationMode::AlongExpertRun ? candidate : expert;
    const Rational opt = enumerate_binary(instance, cuts).opt_value;
    const TreeRecord run = run_bnb(instance, cuts, base, opt);

    SubproblemSolver solver(instance, cuts);
    Brancher brancher(solver);
    long deviations = 0;
    for (const auto& node : run.nodes) {
        if (node.status != NodeStatus::Branched) continue;
        const int other = brancher.choose(probe, NodeView{node.fixings, node.lp});
        if (other != node.branched_on) ++deviations;
    }
    return deviations;
}

std::string branch_literal(const TreeRecord& tree, const NodeRecord& node) {
    if (node.parent < 0) return "root";
    return tree.var_labels[node.branch_var] + "=" + std::to_string(node.branch_value);
}

namespace {

struct DotNode {
    int id;
    int parent;
    std::string literal;
    std::string value;
    std::string status;
};

std::string render_dot(const std::vector<DotNode>& nodes) {
    std::ostringstream os;
    os << "digraph bnb {\n  node [shape=box];\n";
    for (const auto& n : nodes)
        os << "  n" << n.id << " [label=\"#" << n.id << " " << n.literal << "\\nz=" << n.value
           << "\\n" << n.status << "\"];\n";
    for (const auto& n : nodes) {
        if (n.parent < 0) continue;
        os << "  n" << n.parent << " -> n" << n.id << " [label=\"" << n.literal << "\"];\n";
    }
    os << "}\n";
    return os.str();
}

}  // namespace

std::string export_dot(const TreeRecord& tree) {
    std::vector<DotNode> nodes;
    nodes.reserve(tree.nodes.size());
    for (const auto& node : tree.nodes)
        nodes.push_back(DotNode{node.id, node.parent, branch_literal(tree, node),
                                node.lp.value.str(), node_status_name(node.status)});
    return render_dot(nodes);
}

std::string export_dot_from_json(const std::string& tree_json) {
    const nlohmann::json j = nlohmann::json::parse(tree_json);
    std::vector<DotNode> nodes;
    for (const auto& nj : j.at("nodes"))
        nodes.push_back(DotNode{nj.at("id").get<int>(), nj.at("parent").get<int>(),
                                nj.at("literal").get<std::string>(),
                                nj.at("value").get<std::string>(),
                                nj.at("status").get<std::string>()});
    return render_dot(nodes);
}

std::string tree_to_json(const TreeRecord& tree) {
    nlohmann::ordered_json j;
    j["meta"] = tree.meta;
    j["treeSize"] = tree.tree_size();
    j["optValue"] = tree.opt_value ? to_string(*tree.opt_value) : "none";
    auto& nodes = j["nodes"];
    nodes = nlohmann::ordered_json::array();
    for (const auto& node : tree.nodes) {
        nlohmann::ordered_json nj;
        nj["id"] = node.id;
        nj["parent"] = node.parent;
        if (node.parent >= 0) {
            nj["branchVar"] = node.branch_var;
            nj["branchValue"] = node.branch_value;
        }
        nj["depth"] = node.depth;
        nj["literal"] = branch_literal(tree, node);
        nlohmann::ordered_json fx = nlohmann::ordered_json::object();
        for (const auto& [var, val] : node.fixings.entries())
            fx[std::to_string(var)] = val;
        nj["fixings"] = std::move(fx);
        nj["status"] = node_status_name(node.status);
        nj["value"] = node.lp.value.str();
        if (node.lp.status == LpStatus::Optimal) {
            auto& vx = nj["vertex"];
            vx = nlohmann::ordered_json::array();
            for (const auto& v : node.lp.vertex) vx.push_back(to_string(v));
        }
        if (node.branched_on >= 0) nj["branchedOn"] = node.branched_on;
        nj["children"] = node.children;
        nodes.push_back(std::move(nj));
    }
    j["processingOrder"] = tree.processing_order;
    auto& trace = j["incumbentTrace"];
    trace = nlohmann::ordered_json::array();
    for (const auto& [id, v] : tree.incumbent_trace)
        trace.push_back(nlohmann::ordered_json::array({id, to_string(v)}));
    return j.dump(2) + "\n";
}

void check_tree_well_formed(const TreeRecord& tree) {
    if (tree.nodes.empty()) throw std::logic_error("empty tree");
    std::optional<Rational> incumbent;
    if (tree.meta.count("incumbent") && tree.meta.at("incumbent") != "none")
        incumbent = parse_rational(tree.meta.at("incumbent"));

    for (const auto& node : tree.nodes) {
        if (node.depth != node.fixings.size())
            throw std::logic_error("depth must equal the fixing count");
        if (node.status == NodeStatus::Branched) {
            if (node.children.size() != 2)
                throw std::logic_error("branched node needs exactly two children");
            const NodeRecord& down = tree.nodes[node.children[0]];
            const NodeRecord& up = tree.nodes[node.children[1]];
            if (down.branch_value != 0 || up.branch_value != 1 ||
                down.branch_var != node.branched_on || up.branch_var != node.branched_on)
                throw std::logic_error("children must fix the branched variable, down first");
        } else if (!node.children.empty()) {
            throw std::logic_error("pruned node with children");
        } else if (node.status == NodeStatus::Open) {
            throw std::logic_error("open node left in finished record");
        }
        if (node.parent >= 0) {
            const NodeRecord& parent = tree.nodes[node.parent];
            if (node.lp.value > parent.lp.value)
                throw std::logic_error("child LP value exceeds parent");
        }
    }

    // Replay best-bound selection: each processed node must carry the
    // maximal LP value (ties to the smallest id) among the then-open ones,
    // and prune decisions must match the incumbent at that moment.
    std::set<OpenOrder> open;
    open.insert(OpenOrder{tree.nodes[0].lp.value, 0});
    std::size_t step = 0;
    std::optional<Rational> inc = incumbent;
    for (const int id : tree.processing_order) {
        if (open.empty()) throw std::logic_error("processing order longer than open set");
        if (open.begin()->id != id) throw std::logic_error("best-bound order violated");
        open.erase(open.begin());
        const NodeRecord& node = tree.nodes[id];
        for (const int child : node.children)
            open.insert(OpenOrder{tree.nodes[child].lp.value, child});
        if (node.status == NodeStatus::PrunedByBound) {
            if (!inc || node.lp.value > ExtendedRational(*inc))
                throw std::logic_error("bound prune without dominating incumbent");
        }
        if (node.status == NodeStatus::PrunedIntegral) {
            if (inc && node.lp.value <= ExtendedRational(*inc))
                throw std::logic_error("integral prune should have been a bound prune");
            inc = node.lp.value.value();
        }
        ++step;
    }
    if (!open.empty() || step != tree.nodes.size())
        throw std::logic_error("processing order must cover every node exactly once");
}

}  // namespace bnclab
