#pragma once

#include <cmath>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "grouptree/dataset.hpp"

namespace grouptree {

/// Equal-width binning of one numeric attribute's observed range into
/// `group_count` groups. Group i covers [lower(i), upper(i)); the last group
/// is closed at `max` so coverage is total and gap-free.
struct GroupSpec {
    std::size_t attribute_index = 0;
    double min = 0.0;
    double max = 0.0;
    std::size_t group_count = 1;

    double width() const { return (max - min) / static_cast<double>(group_count); }
    double lower(std::size_t i) const { return min + static_cast<double>(i) * width(); }
    double upper(std::size_t i) const { return i + 1 == group_count ? max : lower(i + 1); }

    bool operator==(const GroupSpec&) const = default;
};

/// Min/max of a numeric attribute over the given rows (the current
/// partition, not the global dataset).
inline std::pair<double, double> compute_range(const Dataset& d,
                                               std::span<const std::size_t> rows,
                                               std::size_t attribute_index) {
    if (d.schema(attribute_index).kind != AttrKind::numeric)
        throw std::invalid_argument("compute_range: attribute " +
                                    d.schema(attribute_index).name + " is categorical");
    if (rows.empty()) throw std::invalid_argument("compute_range: empty dataset");
    double lo = d.numeric_at(rows[0], attribute_index);
    double hi = lo;
    for (const std::size_t r : rows) {
        const double v = d.numeric_at(r, attribute_index);
        if (v < lo) lo = v;
        if (v > hi) hi = v;
    }
    return {lo, hi};
}

inline std::pair<double, double> compute_range(const Dataset& d, std::size_t attribute_index) {
    return compute_range(d, all_row_indices(d), attribute_index);
}

inline GroupSpec make_group_spec(const Dataset& d, std::span<const std::size_t> rows,
                                 std::size_t attribute_index, std::size_t group_count) {
    const auto [lo, hi] = compute_range(d, rows, attribute_index);
    return GroupSpec{attribute_index, lo, hi, group_count};
}

/// Group index of `value` under `spec`, clamped into [0, group_count - 1].
/// Total: values outside [min, max] (possible at classification time) clamp
/// to the nearest end group; a zero-width range maps everything to group 0.
inline std::size_t assign_group(const GroupSpec& spec, double value) {
    if (spec.group_count <= 1) return 0;
    const double w = spec.width();
    if (!(w > 0.0)) return 0;
    if (value <= spec.min) return 0;
    if (value >= spec.max) return spec.group_count - 1;
    auto g = static_cast<std::size_t>(std::floor((value - spec.min) / w));
    if (g >= spec.group_count) g = spec.group_count - 1;
    // settle onto the same boundaries lower()/upper() report, so interval
    // tests derived from this spec route identically
    while (g + 1 < spec.group_count && value >= spec.lower(g + 1)) ++g;
    while (g > 0 && value < spec.lower(g)) --g;
    return g;
}

/// Routes every row into exactly one of `group_count` subsets by
/// assign_group; subset order is group order, row order is preserved.
inline std::vector<std::vector<std::size_t>> partition_by_groups(
    const Dataset& d, std::span<const std::size_t> rows, const GroupSpec& spec) {
    if (d.schema(spec.attribute_index).kind != AttrKind::numeric)
        throw std::invalid_argument("partition_by_groups: attribute " +
                                    d.schema(spec.attribute_index).name + " is categorical");
    std::vector<std::vector<std::size_t>> groups(spec.group_count);
    for (const std::size_t r : rows)
        groups[assign_group(spec, d.numeric_at(r, spec.attribute_index))].push_back(r);
    return groups;
}

inline std::vector<std::vector<std::size_t>> partition_by_groups(const Dataset& d,
                                                                 const GroupSpec& spec) {
    return partition_by_groups(d, all_row_indices(d), spec);
}

/// Labeled subsets of a categorical attribute, one per distinct value in
/// first-occurrence order.
struct CategoryPartition {
    std::vector<std::string> values;
    std::vector<std::vector<std::size_t>> groups;
};

inline CategoryPartition partition_by_category(const Dataset& d,
                                               std::span<const std::size_t> rows,
                                               std::size_t attribute_index) {
    if (d.schema(attribute_index).kind != AttrKind::categorical)
        throw std::invalid_argument("partition_by_category: attribute " +
                                    d.schema(attribute_index).name + " is numeric");
    CategoryPartition out;
    for (const std::size_t r : rows) {
        const std::string& v = d.category_at(r, attribute_index);
        std::size_t gi = out.values.size();
        for (std::size_t i = 0; i < out.values.size(); ++i) {
            if (out.values[i] == v) {
                gi = i;
                break;
            }
        }
        if (gi == out.values.size()) {
            out.values.push_back(v);
            out.groups.emplace_back();
        }
        out.groups[gi].push_back(r);
    }
    return out;
}

inline CategoryPartition partition_by_category(const Dataset& d, std::size_t attribute_index) {
    return partition_by_category(d, all_row_indices(d), attribute_index);
}

}  // namespace grouptree
