#pragma once

#include <algorithm>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "grouptree/dataset.hpp"
#include "grouptree/discretize.hpp"
#include "grouptree/measures.hpp"

namespace grouptree {

struct InductionParams {
    /// Cap on the escalating group count (also capped per node at the
    /// attribute's number of distinct values there).
    std::size_t max_groups = 10;
    /// Majority-class fraction at which a node becomes a leaf; 1.0 demands
    /// exact purity, lower values stop at "nearly pure".
    double purity_threshold = 1.0;
    /// Global equal-width pre-binning applied to numeric attributes by the
    /// baseline ID3 builder.
    std::size_t id3_fixed_bins = 3;

    void validate() const {
        if (max_groups < 2) throw std::invalid_argument("max_groups must be at least 2");
        if (!(purity_threshold > 0.5) || !(purity_threshold <= 1.0))
            throw std::invalid_argument("purity_threshold must be in (0.5, 1.0]");
        if (id3_fixed_bins < 2) throw std::invalid_argument("id3_fixed_bins must be at least 2");
    }

    bool operator==(const InductionParams&) const = default;
};

enum class Algorithm { id3, grouped };

inline const char* algorithm_name(Algorithm a) {
    return a == Algorithm::id3 ? "id3" : "grouped";
}

inline Algorithm algorithm_from_name(const std::string& name) {
    if (name == "id3") return Algorithm::id3;
    if (name == "grouped") return Algorithm::grouped;
    throw std::runtime_error("unknown algorithm: " + name);
}

struct CategoricalSplit {
    std::vector<std::string> values;  // child i takes rows whose value == values[i]
    bool operator==(const CategoricalSplit&) const = default;
};

struct GroupedSplit {
    GroupSpec spec;  // child i takes rows assign_group() routes to group i
    bool operator==(const GroupedSplit&) const = default;
};

struct TreeNode;

struct LeafNode {
    std::string label;
    ClassCounts support;
};

struct InternalNode {
    std::size_t attribute_index = 0;
    std::variant<CategoricalSplit, GroupedSplit> split;
    /// Majority class of this node's training subset; answers categorical
    /// values unseen in training.
    std::string fallback_label;
    std::vector<TreeNode> children;
};

struct TreeNode {
    std::variant<LeafNode, InternalNode> data;

    bool is_leaf() const { return std::holds_alternative<LeafNode>(data); }
    const LeafNode& leaf() const { return std::get<LeafNode>(data); }
    const InternalNode& internal() const { return std::get<InternalNode>(data); }
};

struct DecisionTree {
    TreeNode root;
    std::vector<AttributeSchema> schema;
    std::vector<std::string> class_labels;
    InductionParams params;
    Algorithm algorithm = Algorithm::grouped;
};

struct TreeStats {
    std::size_t depth = 0;
    std::size_t node_count = 0;
    std::size_t leaf_count = 0;

    bool operator==(const TreeStats&) const = default;
};

namespace detail {

struct SplitCandidate {
    std::size_t attribute_index = 0;
    /// Child count: the group count k for grouped splits, the category
    /// count for categorical ones. Tie-break key after gain.
    std::size_t arity = 0;
    double gain_bits = 0.0;
    std::variant<CategoricalSplit, GroupedSplit> split;
    std::vector<std::vector<std::size_t>> child_rows;
    std::vector<ClassCounts> child_counts;
};

/// Strict "a beats b" under (gain desc within tolerance, then arity asc if
/// requested, then attribute index asc). Selection folds candidates in a
/// fixed order, so ties keep the earliest.
inline bool candidate_beats(const SplitCandidate& a, const SplitCandidate& b, bool use_arity) {
    if (a.gain_bits > b.gain_bits + selection_tolerance) return true;
    if (b.gain_bits > a.gain_bits + selection_tolerance) return false;
    if (use_arity && a.arity != b.arity) return a.arity < b.arity;
    return a.attribute_index < b.attribute_index;
}

inline SplitCandidate finish_candidate(const Dataset& d, const ClassCounts& parent,
                                       SplitCandidate cand) {
    Partition p;
    p.blocks.reserve(cand.child_rows.size());
    for (const auto& rows : cand.child_rows) {
        cand.child_counts.push_back(class_distribution(d, rows));
        p.blocks.push_back(cand.child_counts.back());
    }
    cand.gain_bits = gain(parent, p);
    return cand;
}

inline SplitCandidate category_candidate(const Dataset& d, std::span<const std::size_t> rows,
                                         std::size_t attr, const ClassCounts& parent) {
    auto part = partition_by_category(d, rows, attr);
    SplitCandidate cand;
    cand.attribute_index = attr;
    cand.arity = part.values.size();
    cand.split = CategoricalSplit{std::move(part.values)};
    cand.child_rows = std::move(part.groups);
    return finish_candidate(d, parent, std::move(cand));
}

inline SplitCandidate grouped_candidate(const Dataset& d, std::span<const std::size_t> rows,
                                        const GroupSpec& spec, const ClassCounts& parent) {
    SplitCandidate cand;
    cand.attribute_index = spec.attribute_index;
    cand.arity = spec.group_count;
    cand.child_rows = partition_by_groups(d, rows, spec);
    cand.split = GroupedSplit{spec};
    return finish_candidate(d, parent, std::move(cand));
}

inline std::size_t distinct_numeric_count(const Dataset& d, std::span<const std::size_t> rows,
                                          std::size_t attr) {
    std::vector<double> vals;
    vals.reserve(rows.size());
    for (const std::size_t r : rows) vals.push_back(d.numeric_at(r, attr));
    std::sort(vals.begin(), vals.end());
    return static_cast<std::size_t>(std::unique(vals.begin(), vals.end()) - vals.begin());
}

inline TreeNode make_leaf(const Dataset& d, const ClassCounts& support) {
    return TreeNode{LeafNode{d.class_labels()[support.majority_index()], support}};
}

inline TreeNode make_leaf_labeled(std::size_t label_index, const Dataset& d,
                                  const ClassCounts& support) {
    return TreeNode{LeafNode{d.class_labels()[label_index], support}};
}

template <typename Recurse>
TreeNode make_internal(const Dataset& d, SplitCandidate cand,
                       const std::vector<std::size_t>& remaining, std::size_t parent_majority,
                       Recurse&& recurse) {
    std::vector<std::size_t> child_remaining;
    child_remaining.reserve(remaining.size() - 1);
    for (const std::size_t a : remaining)
        if (a != cand.attribute_index) child_remaining.push_back(a);

    InternalNode node;
    node.attribute_index = cand.attribute_index;
    node.split = std::move(cand.split);
    node.fallback_label = d.class_labels()[parent_majority];
    node.children.reserve(cand.child_rows.size());
    for (std::size_t i = 0; i < cand.child_rows.size(); ++i) {
        if (cand.child_rows[i].empty()) {
            // empty outcome: leaf carrying the majority class of this node
            node.children.push_back(
                make_leaf_labeled(parent_majority, d, cand.child_counts[i]));
        } else {
            node.children.push_back(recurse(cand.child_rows[i], child_remaining));
        }
    }
    return TreeNode{std::move(node)};
}

inline TreeNode build_id3_node(const Dataset& d, const std::vector<std::size_t>& rows,
                               const std::vector<std::size_t>& remaining,
                               const std::vector<GroupSpec>& global_specs) {
    const ClassCounts counts = class_distribution(d, rows);
    const std::size_t majority = counts.majority_index();
    if (counts.pure() || remaining.empty()) return make_leaf_labeled(majority, d, counts);

    std::optional<SplitCandidate> best;
    for (const std::size_t a : remaining) {
        SplitCandidate cand = d.schema(a).kind == AttrKind::categorical
                                  ? category_candidate(d, rows, a, counts)
                                  : grouped_candidate(d, rows, global_specs[a], counts);
        if (!best || candidate_beats(cand, *best, /*use_arity=*/false)) best = std::move(cand);
    }
    if (!best || best->gain_bits <= selection_tolerance)
        return make_leaf_labeled(majority, d, counts);

    return make_internal(d, std::move(*best), remaining, majority,
                         [&](const std::vector<std::size_t>& child_rows,
                             const std::vector<std::size_t>& child_remaining) {
                             return build_id3_node(d, child_rows, child_remaining, global_specs);
                         });
}

inline TreeNode build_grouped_node(const Dataset& d, const std::vector<std::size_t>& rows,
                                   const std::vector<std::size_t>& remaining,
                                   const InductionParams& params) {
    const ClassCounts counts = class_distribution(d, rows);
    const std::size_t majority = counts.majority_index();
    if (counts.majority_fraction() + selection_tolerance >= params.purity_threshold ||
        remaining.empty())
        return make_leaf_labeled(majority, d, counts);

    // More groups than distinct values is vacuous, so each numeric
    // attribute only escalates up to its distinct count at this node.
    std::vector<std::size_t> distinct(d.n_attributes(), 0);
    for (const std::size_t a : remaining)
        if (d.schema(a).kind == AttrKind::numeric)
            distinct[a] = distinct_numeric_count(d, rows, a);

    const auto child_pure_or_empty = [&](const ClassCounts& c) {
        return c.total == 0 ||
               c.majority_fraction() + selection_tolerance >= params.purity_threshold;
    };

    std::optional<SplitCandidate> best_overall;
    std::optional<SplitCandidate> accepted;
    for (std::size_t k = 2; k <= params.max_groups && !accepted; ++k) {
        bool any_numeric_at_k = false;
        for (const std::size_t a : remaining)
            if (d.schema(a).kind == AttrKind::numeric && distinct[a] >= k)
                any_numeric_at_k = true;
        // once no numeric attribute can be grouped finer, the candidate set
        // stops changing and escalation is over
        if (k > 2 && !any_numeric_at_k) break;

        std::optional<SplitCandidate> best_at_k;
        for (const std::size_t a : remaining) {
            std::optional<SplitCandidate> cand;
            if (d.schema(a).kind == AttrKind::categorical) {
                cand = category_candidate(d, rows, a, counts);
            } else if (distinct[a] >= k) {
                cand = grouped_candidate(d, rows, make_group_spec(d, rows, a, k), counts);
            }
            if (cand && (!best_at_k || candidate_beats(*cand, *best_at_k, /*use_arity=*/true)))
                best_at_k = std::move(cand);
        }
        if (!best_at_k) break;

        if (!best_overall || candidate_beats(*best_at_k, *best_overall, /*use_arity=*/true))
            best_overall = *best_at_k;

        bool all_children_ok = true;
        for (const auto& cc : best_at_k->child_counts) {
            if (!child_pure_or_empty(cc)) {
                all_children_ok = false;
                break;
            }
        }
        if (all_children_ok) accepted = std::move(best_at_k);
        // otherwise escalate the group count and try again
    }

    std::optional<SplitCandidate>& chosen = accepted ? accepted : best_overall;
    if (!chosen || chosen->gain_bits <= selection_tolerance)
        return make_leaf_labeled(majority, d, counts);

    return make_internal(d, std::move(*chosen), remaining, majority,
                         [&](const std::vector<std::size_t>& child_rows,
                             const std::vector<std::size_t>& child_remaining) {
                             return build_grouped_node(d, child_rows, child_remaining, params);
                         });
}

}  // namespace detail

/// Classic top-down induction with multi-way categorical splits. Numeric
/// attributes are pre-binned once into `id3_fixed_bins` equal-width groups
/// over their global ranges, so every split is discrete. Deterministic: gain
/// ties break toward the lowest attribute index, majority ties toward the
/// earliest class label.
inline DecisionTree build_id3(const Dataset& d, const InductionParams& params = {}) {
    params.validate();
    if (d.empty()) throw std::invalid_argument("build_id3: empty dataset");

    std::vector<GroupSpec> global_specs(d.n_attributes());
    const auto rows = all_row_indices(d);
    std::vector<std::size_t> remaining;
    for (std::size_t a = 0; a < d.n_attributes(); ++a) {
        remaining.push_back(a);
        if (d.schema(a).kind == AttrKind::numeric) {
            const auto [lo, hi] = compute_range(d, rows, a);
            global_specs[a] = GroupSpec{a, lo, hi, params.id3_fixed_bins};
        }
    }
    return DecisionTree{detail::build_id3_node(d, rows, remaining, global_specs), d.schemas(),
                        d.class_labels(), params, Algorithm::id3};
}

/// Group-escalation induction over mixed data. At each node the group count
/// k runs from 2 upward: every remaining numeric attribute is regrouped into
/// k equal-width groups over the node's local range (categorical attributes
/// contribute their category partition unchanged), the best candidate by
/// gain is checked, and if every child is pure enough (majority fraction >=
/// purity_threshold) or empty the split is accepted. Otherwise k escalates;
/// at the cap the best split seen is accepted anyway and recursion continues
/// with the remaining attributes. Ties break toward lower k, then lower
/// attribute index.
inline DecisionTree build_grouped(const Dataset& d, const InductionParams& params = {}) {
    params.validate();
    if (d.empty()) throw std::invalid_argument("build_grouped: empty dataset");
    if (d.n_attributes() == 0) throw std::invalid_argument("build_grouped: no attributes");

    const auto rows = all_row_indices(d);
    std::vector<std::size_t> remaining;
    for (std::size_t a = 0; a < d.n_attributes(); ++a) remaining.push_back(a);
    return DecisionTree{detail::build_grouped_node(d, rows, remaining, params), d.schemas(),
                        d.class_labels(), params, Algorithm::grouped};
}

/// Routes a row to a leaf and returns its label. Total over conforming rows:
/// out-of-range numerics clamp into the nearest end group and a categorical
/// value matching no branch answers with the deepest node's fallback label.
inline std::string classify(const DecisionTree& t, std::span<const Value> row) {
    if (row.size() != t.schema.size())
        throw std::invalid_argument("classify: row has " + std::to_string(row.size()) +
                                    " values, expected " + std::to_string(t.schema.size()));
    for (std::size_t i = 0; i < row.size(); ++i) {
        const bool is_numeric = std::holds_alternative<double>(row[i]);
        if (is_numeric != (t.schema[i].kind == AttrKind::numeric))
            throw std::invalid_argument("classify: value kind mismatch in column " +
                                        t.schema[i].name);
    }

    const TreeNode* node = &t.root;
    while (!node->is_leaf()) {
        const InternalNode& in = node->internal();
        if (const auto* grouped = std::get_if<GroupedSplit>(&in.split)) {
            const double v = std::get<double>(row[in.attribute_index]);
            node = &in.children[assign_group(grouped->spec, v)];
        } else {
            const auto& values = std::get<CategoricalSplit>(in.split).values;
            const std::string& v = std::get<std::string>(row[in.attribute_index]);
            std::size_t child = values.size();
            for (std::size_t i = 0; i < values.size(); ++i) {
                if (values[i] == v) {
                    child = i;
                    break;
                }
            }
            if (child == values.size()) return in.fallback_label;
            node = &in.children[child];
        }
    }
    return node->leaf().label;
}

namespace detail {

inline TreeStats node_stats(const TreeNode& n) {
    if (n.is_leaf()) return TreeStats{0, 1, 1};
    TreeStats s{0, 1, 0};
    for (const TreeNode& child : n.internal().children) {
        const TreeStats cs = node_stats(child);
        s.depth = std::max(s.depth, cs.depth + 1);
        s.node_count += cs.node_count;
        s.leaf_count += cs.leaf_count;
    }
    return s;
}

}  // namespace detail

/// Depth (single leaf = 0), total node count, and leaf count.
inline TreeStats tree_stats(const DecisionTree& t) { return detail::node_stats(t.root); }

}  // namespace grouptree
