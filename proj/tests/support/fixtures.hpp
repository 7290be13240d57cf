#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "grouptree/grouptree.hpp"

namespace fixtures {

inline std::string iris_path() { return std::string(GROUPTREE_DATA_DIR) + "/iris.csv"; }

inline grouptree::Dataset iris() { return grouptree::parse_csv_file(iris_path()); }

// The classic 14-row weather/play toy set: four categorical attributes, two
// classes (9 yes / 5 no), textbook root split on outlook.
inline constexpr const char* play_tennis_csv =
    "outlook,temperature,humidity,wind,play\n"
    "sunny,hot,high,weak,no\n"
    "sunny,hot,high,strong,no\n"
    "overcast,hot,high,weak,yes\n"
    "rain,mild,high,weak,yes\n"
    "rain,cool,normal,weak,yes\n"
    "rain,cool,normal,strong,no\n"
    "overcast,cool,normal,strong,yes\n"
    "sunny,mild,high,weak,no\n"
    "sunny,cool,normal,weak,yes\n"
    "rain,mild,normal,weak,yes\n"
    "sunny,mild,normal,strong,yes\n"
    "overcast,mild,high,strong,yes\n"
    "overcast,hot,normal,weak,yes\n"
    "rain,mild,high,strong,no\n";

inline grouptree::Dataset play_tennis() { return grouptree::parse_csv(play_tennis_csv); }

// Three classes occupying the three thirds of a single numeric attribute's
// range: two groups mix neighbours, three groups separate perfectly.
inline grouptree::Dataset three_thirds() {
    grouptree::Dataset d({{"x", grouptree::AttrKind::numeric}}, "class");
    const double values[] = {0.0, 0.1, 0.2, 0.4, 0.5, 0.6, 0.8, 0.9, 1.0};
    const char* labels[] = {"A", "A", "A", "B", "B", "B", "C", "C", "C"};
    for (int i = 0; i < 9; ++i) d.add_row({grouptree::Value{values[i]}}, labels[i]);
    return d;
}

// Two classes separable by one threshold at the midpoint of the range.
inline grouptree::Dataset midpoint_separable() {
    grouptree::Dataset d({{"x", grouptree::AttrKind::numeric}}, "class");
    for (const double v : {1.0, 2.0, 3.0, 4.0}) d.add_row({grouptree::Value{v}}, "low");
    for (const double v : {6.0, 7.0, 8.0, 9.0}) d.add_row({grouptree::Value{v}}, "high");
    return d;
}

// Separable two-attribute set where three fixed global bins on attr0 cut
// through the class boundary (forcing the fixed-binning baseline one level
// deeper) while a local two-group split on attr0 separates at once.
inline grouptree::Dataset depth_contrast() {
    grouptree::Dataset d(
        {{"a0", grouptree::AttrKind::numeric}, {"a1", grouptree::AttrKind::numeric}}, "class");
    const double a0[] = {0.1, 0.2, 0.3, 0.4, 0.6, 0.7, 0.8, 0.9};
    const double a1[] = {0.50, 0.55, 0.90, 0.05, 0.95, 0.45, 0.85, 0.40};
    for (int i = 0; i < 8; ++i)
        d.add_row({grouptree::Value{a0[i]}, grouptree::Value{a1[i]}}, i < 4 ? "c0" : "c1");
    return d;
}

// Small mixed dataset, deterministic per seed, for property-style tests.
inline grouptree::Dataset random_dataset(std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    const auto pick = [&](std::size_t lo, std::size_t hi) {
        return lo + static_cast<std::size_t>(rng() % (hi - lo + 1));
    };
    const std::size_t n_attrs = pick(1, 4);
    const std::size_t n_rows = pick(5, 20);
    const std::size_t n_classes = pick(2, 3);

    std::vector<grouptree::AttributeSchema> schemas;
    for (std::size_t a = 0; a < n_attrs; ++a) {
        const bool numeric = rng() % 2 == 0;
        schemas.push_back({"f" + std::to_string(a),
                           numeric ? grouptree::AttrKind::numeric
                                   : grouptree::AttrKind::categorical});
    }
    const char* vocab[] = {"red", "green", "blue", "yellow"};
    grouptree::Dataset d(std::move(schemas), "class");
    for (std::size_t r = 0; r < n_rows; ++r) {
        std::vector<grouptree::Value> values;
        for (std::size_t a = 0; a < d.n_attributes(); ++a) {
            if (d.schema(a).kind == grouptree::AttrKind::numeric) {
                // coarse grid so duplicate values occur
                values.emplace_back(static_cast<double>(rng() % 10));
            } else {
                values.emplace_back(std::string(vocab[rng() % 4]));
            }
        }
        d.add_row(std::move(values), "c" + std::to_string(rng() % n_classes));
    }
    return d;
}

}  // namespace fixtures
