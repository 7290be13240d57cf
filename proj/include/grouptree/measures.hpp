#pragma once

#include <cmath>
#include <stdexcept>
#include <vector>

#include "grouptree/dataset.hpp"

namespace grouptree {

/// Gains closer than this are treated as ties (and splits below it as
/// worthless), which keeps attribute selection deterministic across
/// platforms despite floating-point rounding.
inline constexpr double selection_tolerance = 1e-12;

/// Class counts per split outcome, in child order.
struct Partition {
    std::vector<ClassCounts> blocks;
};

/// Entropy in bits: -sum p_i log2(p_i) with the convention 0 log2 0 = 0.
/// An empty set has entropy 0.
inline double info(const ClassCounts& c) {
    if (c.total == 0) return 0.0;
    const double total = static_cast<double>(c.total);
    double bits = 0.0;
    for (const std::size_t n : c.counts) {
        if (n == 0) continue;
        const double p = static_cast<double>(n) / total;
        bits -= p * std::log2(p);
    }
    return bits;
}

/// Weighted average entropy of the blocks: sum |Dj|/|D| * info(Dj).
/// Empty blocks contribute nothing.
inline double expected_info(const Partition& p) {
    if (p.blocks.empty()) throw std::invalid_argument("expected_info: no blocks");
    std::size_t parent_total = 0;
    for (const auto& b : p.blocks) parent_total += b.total;
    if (parent_total == 0) throw std::invalid_argument("expected_info: all blocks empty");
    double bits = 0.0;
    for (const auto& b : p.blocks) {
        if (b.total == 0) continue;
        bits += static_cast<double>(b.total) / static_cast<double>(parent_total) * info(b);
    }
    return bits;
}

/// Information gain of splitting `parent` into `p`:
/// info(parent) - expected_info(p). The blocks must add up to the parent,
/// class by class.
inline double gain(const ClassCounts& parent, const Partition& p) {
    std::vector<std::size_t> sums(parent.counts.size(), 0);
    std::size_t total = 0;
    for (const auto& b : p.blocks) {
        if (b.counts.size() != parent.counts.size())
            throw std::logic_error("gain: block label space differs from parent");
        for (std::size_t i = 0; i < b.counts.size(); ++i) sums[i] += b.counts[i];
        total += b.total;
    }
    if (sums != parent.counts || total != parent.total)
        throw std::logic_error("gain: partition does not sum to parent");
    return info(parent) - expected_info(p);
}

}  // namespace grouptree
