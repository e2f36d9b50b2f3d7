#include "bnclab/io.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <stdexcept>

namespace bnclab {

namespace {

nlohmann::ordered_json sparse_to_json(const SparseVec& coeffs) {
    nlohmann::ordered_json j = nlohmann::ordered_json::object();
    for (const auto& [var, c] : coeffs) j[std::to_string(var)] = to_string(c);
    return j;
}

SparseVec sparse_from_json(const nlohmann::json& j) {
    SparseVec out;
    for (const auto& [key, value] : j.items())
        out.emplace_back(std::stoi(key), parse_rational(value.get<std::string>()));
    std::sort(out.begin(), out.end());
    return out;
}

nlohmann::ordered_json cut_to_json(const Cut& cut) {
    nlohmann::ordered_json j;
    j["id"] = cut.id;
    j["coeffs"] = sparse_to_json(cut.coeffs);
    j["rhs"] = to_string(cut.rhs);
    if (cut.paired_with) j["pairedWith"] = *cut.paired_with;
    return j;
}

Cut cut_from_json(const nlohmann::json& j) {
    Cut cut;
    cut.id = j.at("id").get<std::string>();
    cut.coeffs = sparse_from_json(j.at("coeffs"));
    cut.rhs = parse_rational(j.at("rhs").get<std::string>());
    if (j.contains("pairedWith")) cut.paired_with = j.at("pairedWith").get<std::string>();
    return cut;
}

}  // namespace

std::string instance_to_json(const Instance& instance,
                             const std::map<std::string, std::vector<Cut>>& pools) {
    nlohmann::ordered_json j;
    j["name"] = instance.name;
    auto& vars = j["vars"];
    vars = nlohmann::ordered_json::array();
    for (const auto& v : instance.vars) {
        nlohmann::ordered_json vj;
        vj["label"] = v.label;
        vj["integer"] = v.integer;
        vj["lb"] = to_string(v.lb);
        vj["ub"] = to_string(v.ub);
        if (v.block) vj["block"] = *v.block;
        vars.push_back(std::move(vj));
    }
    auto& obj = j["objective"];
    obj = nlohmann::ordered_json::array();
    for (const auto& c : instance.objective) obj.push_back(to_string(c));
    auto& rows = j["rows"];
    rows = nlohmann::ordered_json::array();
    for (const auto& row : instance.rows) {
        nlohmann::ordered_json rj;
        rj["coeffs"] = sparse_to_json(row.coeffs);
        rj["sense"] = row.sense == Sense::LessEq ? "<=" : "=";
        rj["rhs"] = to_string(row.rhs);
        rows.push_back(std::move(rj));
    }
    if (!pools.empty()) {
        auto& cuts = j["cuts"];
        cuts = nlohmann::ordered_json::object();
        for (const auto& [pool, list] : pools) {
            auto arr = nlohmann::ordered_json::array();
            for (const auto& cut : list) arr.push_back(cut_to_json(cut));
            cuts[pool] = std::move(arr);
        }
    }
    return j.dump(2) + "\n";
}

LoadedInstance instance_from_json(const std::string& text) {
    const nlohmann::json j = nlohmann::json::parse(text);
    LoadedInstance loaded;
    Instance& inst = loaded.instance;
    inst.name = j.at("name").get<std::string>();
    for (const auto& vj : j.at("vars")) {
        VarInfo v;
        v.label = vj.at("label").get<std::string>();
        v.integer = vj.at("integer").get<bool>();
        v.lb = parse_rational(vj.at("lb").get<std::string>());
        v.ub = parse_rational(vj.at("ub").get<std::string>());
        if (vj.contains("block")) v.block = vj.at("block").get<int>();
        v.family = family_of_label(v.label);
        inst.vars.push_back(std::move(v));
    }
    for (const auto& c : j.at("objective"))
        inst.objective.push_back(parse_rational(c.get<std::string>()));
    for (const auto& rj : j.at("rows")) {
        RowConstraint row;
        row.coeffs = sparse_from_json(rj.at("coeffs"));
        const std::string sense = rj.at("sense").get<std::string>();
        if (sense == "<=")
            row.sense = Sense::LessEq;
        else if (sense == "=")
            row.sense = Sense::Equal;
        else
            throw std::invalid_argument("unknown row sense: " + sense);
        row.rhs = parse_rational(rj.at("rhs").get<std::string>());
        inst.rows.push_back(std::move(row));
    }
    if (j.contains("cuts"))
        for (const auto& [pool, arr] : j.at("cuts").items()) {
            std::vector<Cut> list;
            for (const auto& cj : arr) list.push_back(cut_from_json(cj));
            loaded.pools[pool] = std::move(list);
        }
    loaded.instance.validate();
    return loaded;
}

}  // namespace bnclab
