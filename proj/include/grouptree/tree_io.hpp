#pragma once

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "grouptree/induction.hpp"

namespace grouptree {

namespace detail {

inline constexpr const char* tree_format_tag = "grouptree.tree/1";

inline nlohmann::ordered_json node_to_json(const TreeNode& node,
                                           const std::vector<std::string>& labels) {
    nlohmann::ordered_json j;
    if (node.is_leaf()) {
        const LeafNode& leaf = node.leaf();
        j["leaf"] = true;
        j["label"] = leaf.label;
        nlohmann::ordered_json support;
        for (std::size_t i = 0; i < labels.size(); ++i)
            support[labels[i]] = i < leaf.support.counts.size() ? leaf.support.counts[i] : 0;
        j["support"] = std::move(support);
        return j;
    }
    const InternalNode& in = node.internal();
    j["leaf"] = false;
    j["attribute"] = in.attribute_index;
    if (const auto* grouped = std::get_if<GroupedSplit>(&in.split)) {
        j["split"] = {{"type", "grouped"},
                      {"min", grouped->spec.min},
                      {"max", grouped->spec.max},
                      {"groups", grouped->spec.group_count}};
    } else {
        j["split"] = {{"type", "categorical"},
                      {"values", std::get<CategoricalSplit>(in.split).values}};
    }
    j["fallback"] = in.fallback_label;
    nlohmann::ordered_json children = nlohmann::ordered_json::array();
    for (const TreeNode& child : in.children) children.push_back(node_to_json(child, labels));
    j["children"] = std::move(children);
    return j;
}

inline TreeNode node_from_json(const nlohmann::json& j, const DecisionTree& t) {
    if (!j.is_object() || !j.contains("leaf"))
        throw std::runtime_error("tree json: malformed node");
    if (j.at("leaf").get<bool>()) {
        LeafNode leaf;
        leaf.label = j.at("label").get<std::string>();
        const auto& support = j.at("support");
        leaf.support.counts.assign(t.class_labels.size(), 0);
        leaf.support.total = 0;
        for (std::size_t i = 0; i < t.class_labels.size(); ++i) {
            const auto it = support.find(t.class_labels[i]);
            if (it != support.end()) leaf.support.counts[i] = it->get<std::size_t>();
            leaf.support.total += leaf.support.counts[i];
        }
        return TreeNode{std::move(leaf)};
    }

    InternalNode in;
    in.attribute_index = j.at("attribute").get<std::size_t>();
    if (in.attribute_index >= t.schema.size())
        throw std::runtime_error("tree json: attribute index out of range");
    in.fallback_label = j.at("fallback").get<std::string>();
    const auto& split = j.at("split");
    const std::string type = split.at("type").get<std::string>();
    std::size_t expected_children = 0;
    if (type == "grouped") {
        if (t.schema[in.attribute_index].kind != AttrKind::numeric)
            throw std::runtime_error("tree json: grouped split on a categorical attribute");
        GroupSpec spec;
        spec.attribute_index = in.attribute_index;
        spec.min = split.at("min").get<double>();
        spec.max = split.at("max").get<double>();
        spec.group_count = split.at("groups").get<std::size_t>();
        if (spec.group_count == 0 || spec.max < spec.min)
            throw std::runtime_error("tree json: invalid group spec");
        expected_children = spec.group_count;
        in.split = GroupedSplit{spec};
    } else if (type == "categorical") {
        if (t.schema[in.attribute_index].kind != AttrKind::categorical)
            throw std::runtime_error("tree json: categorical split on a numeric attribute");
        CategoricalSplit cat;
        cat.values = split.at("values").get<std::vector<std::string>>();
        expected_children = cat.values.size();
        in.split = std::move(cat);
    } else {
        throw std::runtime_error("tree json: unknown split type: " + type);
    }

    const auto& children = j.at("children");
    if (!children.is_array() || children.size() != expected_children)
        throw std::runtime_error("tree json: children count does not match the split");
    for (const auto& child : children) in.children.push_back(node_from_json(child, t));
    return TreeNode{std::move(in)};
}

inline std::string dot_escape(const std::string& s) {
    std::string out;
    for (const char c : s) {
        if (c == '"' || c == '\\') out += '\\';
        out += c;
    }
    return out;
}

}  // namespace detail

inline nlohmann::ordered_json tree_to_json(const DecisionTree& t) {
    nlohmann::ordered_json j;
    j["format"] = detail::tree_format_tag;
    j["algorithm"] = algorithm_name(t.algorithm);
    j["params"] = {{"max_groups", t.params.max_groups},
                   {"purity_threshold", t.params.purity_threshold},
                   {"id3_fixed_bins", t.params.id3_fixed_bins}};
    nlohmann::ordered_json attrs = nlohmann::ordered_json::array();
    for (const auto& s : t.schema)
        attrs.push_back({{"name", s.name},
                         {"kind", s.kind == AttrKind::numeric ? "numeric" : "categorical"}});
    j["attributes"] = std::move(attrs);
    j["class_labels"] = t.class_labels;
    j["root"] = detail::node_to_json(t.root, t.class_labels);
    return j;
}

/// Deterministic serialization: stable key order and round-trip-exact
/// numbers, so identical trees always produce identical bytes.
inline std::string tree_to_json_text(const DecisionTree& t) {
    return tree_to_json(t).dump(2) + "\n";
}

inline DecisionTree tree_from_json(const nlohmann::json& j) {
    if (!j.is_object() || !j.contains("format") ||
        j.at("format").get<std::string>() != detail::tree_format_tag)
        throw std::runtime_error("tree json: missing or unknown format tag");

    DecisionTree t;
    t.algorithm = algorithm_from_name(j.at("algorithm").get<std::string>());
    const auto& params = j.at("params");
    t.params.max_groups = params.at("max_groups").get<std::size_t>();
    t.params.purity_threshold = params.at("purity_threshold").get<double>();
    t.params.id3_fixed_bins = params.at("id3_fixed_bins").get<std::size_t>();
    t.params.validate();
    for (const auto& a : j.at("attributes")) {
        const std::string kind = a.at("kind").get<std::string>();
        if (kind != "numeric" && kind != "categorical")
            throw std::runtime_error("tree json: unknown attribute kind: " + kind);
        t.schema.push_back({a.at("name").get<std::string>(),
                            kind == "numeric" ? AttrKind::numeric : AttrKind::categorical});
    }
    t.class_labels = j.at("class_labels").get<std::vector<std::string>>();
    if (t.class_labels.empty()) throw std::runtime_error("tree json: no class labels");
    t.root = detail::node_from_json(j.at("root"), t);
    return t;
}

inline DecisionTree tree_from_json_text(std::string_view text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw std::runtime_error(std::string("tree json: parse error: ") + e.what());
    }
    return tree_from_json(j);
}

namespace detail {

inline void node_to_dot(const TreeNode& node, const DecisionTree& t, std::size_t& counter,
                        std::string& out) {
    const std::size_t id = counter++;
    if (node.is_leaf()) {
        const LeafNode& leaf = node.leaf();
        std::string support;
        for (std::size_t i = 0; i < t.class_labels.size(); ++i) {
            if (i >= leaf.support.counts.size() || leaf.support.counts[i] == 0) continue;
            if (!support.empty()) support += ", ";
            support += t.class_labels[i] + ": " + std::to_string(leaf.support.counts[i]);
        }
        out += "  n" + std::to_string(id) + " [shape=box, label=\"" +
               dot_escape(leaf.label) + "\\n{" + dot_escape(support) + "}\"];\n";
        return;
    }
    const InternalNode& in = node.internal();
    out += "  n" + std::to_string(id) + " [shape=ellipse, label=\"" +
           dot_escape(t.schema[in.attribute_index].name) + "\"];\n";
    for (std::size_t i = 0; i < in.children.size(); ++i) {
        std::string edge;
        if (const auto* grouped = std::get_if<GroupedSplit>(&in.split)) {
            const GroupSpec& spec = grouped->spec;
            edge = "[" + format_number(spec.lower(i)) + ", " + format_number(spec.upper(i)) +
                   (i + 1 == spec.group_count ? "]" : ")");
        } else {
            edge = "= " + std::get<CategoricalSplit>(in.split).values[i];
        }
        const std::size_t child_id = counter;
        node_to_dot(in.children[i], t, counter, out);
        out += "  n" + std::to_string(id) + " -> n" + std::to_string(child_id) +
               " [label=\"" + dot_escape(edge) + "\"];\n";
    }
}

}  // namespace detail

/// Graphviz rendering: internal nodes carry the attribute name, edges the
/// interval or category of each branch, leaves the class and its support.
inline std::string tree_to_dot(const DecisionTree& t) {
    std::string out = "digraph decision_tree {\n";
    std::size_t counter = 0;
    detail::node_to_dot(t.root, t, counter, out);
    out += "}\n";
    return out;
}

}  // namespace grouptree
