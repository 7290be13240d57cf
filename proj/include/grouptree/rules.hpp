#pragma once

#include <span>
#include <string>
#include <variant>
#include <vector>

#include "grouptree/induction.hpp"

namespace grouptree {

struct CategoryCondition {
    std::string value;  // attribute value must equal this
};

struct IntervalCondition {
    double lo = 0.0;
    double hi = 0.0;
    bool closed_hi = false;  // last group of a spec includes its upper bound
};

struct RuleCondition {
    std::size_t attribute_index = 0;
    std::variant<CategoryCondition, IntervalCondition> test;
};

/// One IF-THEN classification rule: all conditions must hold. Conditions
/// reference distinct attributes and interval bounds come verbatim from the
/// GroupSpec on the tree path.
struct Rule {
    std::vector<RuleCondition> conditions;
    std::string label;
    ClassCounts support;
};

namespace detail {

inline void collect_rules(const TreeNode& node, std::vector<RuleCondition>& path,
                          std::vector<Rule>& out) {
    if (node.is_leaf()) {
        out.push_back(Rule{path, node.leaf().label, node.leaf().support});
        return;
    }
    const InternalNode& in = node.internal();
    for (std::size_t i = 0; i < in.children.size(); ++i) {
        RuleCondition cond;
        cond.attribute_index = in.attribute_index;
        if (const auto* grouped = std::get_if<GroupedSplit>(&in.split)) {
            const GroupSpec& spec = grouped->spec;
            cond.test = IntervalCondition{spec.lower(i), spec.upper(i),
                                          i + 1 == spec.group_count};
        } else {
            cond.test = CategoryCondition{std::get<CategoricalSplit>(in.split).values[i]};
        }
        path.push_back(std::move(cond));
        collect_rules(in.children[i], path, out);
        path.pop_back();
    }
}

}  // namespace detail

/// One rule per leaf, conditions in root-to-leaf order, rules in
/// left-to-right leaf order.
inline std::vector<Rule> extract_rules(const DecisionTree& t) {
    std::vector<Rule> rules;
    std::vector<RuleCondition> path;
    detail::collect_rules(t.root, path, rules);
    return rules;
}

inline bool rule_matches(const Rule& rule, std::span<const Value> row) {
    for (const RuleCondition& cond : rule.conditions) {
        if (const auto* interval = std::get_if<IntervalCondition>(&cond.test)) {
            const double v = std::get<double>(row[cond.attribute_index]);
            if (v < interval->lo) return false;
            if (interval->closed_hi ? v > interval->hi : v >= interval->hi) return false;
        } else {
            const auto& category = std::get<CategoryCondition>(cond.test);
            if (std::get<std::string>(row[cond.attribute_index]) != category.value)
                return false;
        }
    }
    return true;
}

/// Label of the first rule whose conditions all hold, else `fallback`.
inline std::string rules_classify(const std::vector<Rule>& rules, const std::string& fallback,
                                  std::span<const Value> row) {
    for (const Rule& rule : rules)
        if (rule_matches(rule, row)) return rule.label;
    return fallback;
}

/// The tree root's majority class: the natural fallback for rules_classify.
inline const std::string& tree_fallback_label(const DecisionTree& t) {
    return t.root.is_leaf() ? t.root.leaf().label : t.root.internal().fallback_label;
}

inline std::string rule_to_text(const Rule& rule, std::span<const AttributeSchema> schema) {
    std::string out = "IF ";
    if (rule.conditions.empty()) out += "true";
    for (std::size_t i = 0; i < rule.conditions.size(); ++i) {
        if (i > 0) out += " AND ";
        const RuleCondition& cond = rule.conditions[i];
        out += schema[cond.attribute_index].name;
        if (const auto* interval = std::get_if<IntervalCondition>(&cond.test)) {
            out += " in [" + format_number(interval->lo) + ", " + format_number(interval->hi) +
                   (interval->closed_hi ? "]" : ")");
        } else {
            out += " = " + std::get<CategoryCondition>(cond.test).value;
        }
    }
    out += " THEN " + rule.label + " (support: " + std::to_string(rule.support.total) + ")";
    return out;
}

/// One rule per line.
inline std::string rules_to_text(const std::vector<Rule>& rules,
                                 std::span<const AttributeSchema> schema) {
    std::string out;
    for (const Rule& rule : rules) {
        out += rule_to_text(rule, schema);
        out += '\n';
    }
    return out;
}

}  // namespace grouptree
