#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <random>

#include "grouptree/discretize.hpp"
#include "support/fixtures.hpp"

using namespace grouptree;

namespace {

Dataset numeric_column(const std::vector<double>& values) {
    Dataset d({{"x", AttrKind::numeric}}, "class");
    for (const double v : values) d.add_row({Value{v}}, "c");
    return d;
}

}  // namespace

TEST_CASE("compute_range scans the current partition") {
    REQUIRE(compute_range(numeric_column({5.0}), 0) == std::pair{5.0, 5.0});
    REQUIRE(compute_range(numeric_column({1.0, 3.0, 2.0}), 0) == std::pair{1.0, 3.0});
    REQUIRE(compute_range(fixtures::iris(), 0) == std::pair{4.3, 7.9});

    SECTION("subset ranges are local") {
        const Dataset d = numeric_column({1.0, 3.0, 2.0, 10.0});
        const std::vector<std::size_t> subset = {0, 2};
        REQUIRE(compute_range(d, subset, 0) == std::pair{1.0, 2.0});
    }
    SECTION("errors") {
        const Dataset cat = parse_csv("a,class\nx,1\n");
        REQUIRE_THROWS_AS(compute_range(cat, 0), std::invalid_argument);
        const std::vector<std::size_t> none;
        REQUIRE_THROWS_AS(compute_range(numeric_column({1.0}), none, 0),
                          std::invalid_argument);
    }
}

TEST_CASE("assign_group follows the floor rule with clamping") {
    const GroupSpec two{0, 0.0, 10.0, 2};
    REQUIRE(assign_group(two, 4.0) == 0);
    REQUIRE(assign_group(two, 5.0) == 1);
    REQUIRE(assign_group(two, 10.0) == 1);  // max belongs to the top group

    const GroupSpec iris_spec{0, 4.3, 7.9, 3};
    REQUIRE(assign_group(iris_spec, 6.0) == 1);  // width 1.2, floor(1.7 / 1.2) = 1

    SECTION("out-of-range values clamp to the end groups") {
        REQUIRE(assign_group(two, -100.0) == 0);
        REQUIRE(assign_group(two, 100.0) == 1);
    }
    SECTION("zero-width range maps everything to group 0") {
        const GroupSpec flat{0, 5.0, 5.0, 4};
        REQUIRE(assign_group(flat, 5.0) == 0);
        REQUIRE(assign_group(flat, -1.0) == 0);
    }
    SECTION("group boundaries match lower()/upper()") {
        const GroupSpec spec{0, 0.1, 2.5, 9};
        for (std::size_t g = 0; g < spec.group_count; ++g) {
            const std::size_t got = assign_group(spec, spec.lower(g));
            REQUIRE(got == g);
        }
        REQUIRE(assign_group(spec, spec.max) == spec.group_count - 1);
    }
}

TEST_CASE("assign_group is total and monotone") {
    std::mt19937_64 rng(5);
    for (int iter = 0; iter < 200; ++iter) {
        const double lo = static_cast<double>(rng() % 100) / 7.0;
        const double hi = lo + static_cast<double>(rng() % 100) / 3.0;
        const GroupSpec spec{0, lo, hi, 1 + rng() % 32};
        std::size_t prev = 0;
        for (double v = lo - 5.0; v <= hi + 5.0; v += 0.37) {
            const std::size_t g = assign_group(spec, v);
            REQUIRE(g < spec.group_count);
            REQUIRE(g >= prev);
            prev = g;
        }
    }
}

TEST_CASE("partition_by_groups covers the rows exactly") {
    SECTION("single group is the identity") {
        const Dataset d = numeric_column({3.0, 1.0, 2.0});
        const auto groups = partition_by_groups(d, GroupSpec{0, 1.0, 3.0, 1});
        REQUIRE(groups.size() == 1);
        REQUIRE(groups[0] == std::vector<std::size_t>{0, 1, 2});
    }
    SECTION("two points at the extremes split 1/1") {
        const Dataset d = numeric_column({0.0, 10.0});
        const auto groups = partition_by_groups(d, GroupSpec{0, 0.0, 10.0, 2});
        REQUIRE(groups[0].size() == 1);
        REQUIRE(groups[1].size() == 1);
    }
    SECTION("iris sepal length routes all 150 rows") {
        const Dataset d = fixtures::iris();
        const auto [lo, hi] = compute_range(d, 0);
        const GroupSpec spec{0, lo, hi, 2};
        const auto groups = partition_by_groups(d, spec);
        std::size_t total = 0;
        for (std::size_t g = 0; g < groups.size(); ++g) {
            total += groups[g].size();
            for (const std::size_t r : groups[g])
                REQUIRE(assign_group(spec, d.numeric_at(r, 0)) == g);
        }
        REQUIRE(total == 150);
    }
    SECTION("random data: subsets are disjoint and sum to the input") {
        std::mt19937_64 rng(17);
        for (std::size_t k = 1; k <= 32; ++k) {
            std::vector<double> values(40);
            for (auto& v : values) v = static_cast<double>(rng() % 1000) / 9.0;
            const Dataset d = numeric_column(values);
            const auto spec = make_group_spec(d, all_row_indices(d), 0, k);
            const auto groups = partition_by_groups(d, spec);
            REQUIRE(groups.size() == k);
            std::vector<bool> seen(d.n_rows(), false);
            for (const auto& g : groups)
                for (const std::size_t r : g) {
                    REQUIRE_FALSE(seen[r]);
                    seen[r] = true;
                }
            REQUIRE(std::count(seen.begin(), seen.end(), true) ==
                    static_cast<std::ptrdiff_t>(d.n_rows()));
        }
    }
    SECTION("equally-spaced distinct values, k = count: one value per group") {
        const Dataset d = numeric_column({0.0, 1.0, 2.0, 3.0, 4.0});
        const auto groups = partition_by_groups(d, GroupSpec{0, 0.0, 4.0, 5});
        for (const auto& g : groups) REQUIRE(g.size() == 1);
    }
    SECTION("categorical attribute is rejected") {
        const Dataset cat = parse_csv("a,class\nx,1\n");
        REQUIRE_THROWS_AS(partition_by_groups(cat, GroupSpec{0, 0.0, 1.0, 2}),
                          std::invalid_argument);
    }
}

TEST_CASE("partition_by_category groups by first occurrence") {
    SECTION("three rows, two values") {
        const Dataset d = parse_csv("color,class\nred,1\nblue,2\nred,1\n");
        const auto part = partition_by_category(d, 0);
        REQUIRE(part.values == std::vector<std::string>{"red", "blue"});
        REQUIRE(part.groups[0] == std::vector<std::size_t>{0, 2});
        REQUIRE(part.groups[1] == std::vector<std::size_t>{1});
    }
    SECTION("single distinct value") {
        const Dataset d = parse_csv("color,class\nred,1\nred,2\n");
        const auto part = partition_by_category(d, 0);
        REQUIRE(part.values.size() == 1);
        REQUIRE(part.groups[0].size() == 2);
    }
    SECTION("weather outlook splits 5/4/5") {
        const auto part = partition_by_category(fixtures::play_tennis(), 0);
        REQUIRE(part.values == std::vector<std::string>{"sunny", "overcast", "rain"});
        REQUIRE(part.groups[0].size() == 5);
        REQUIRE(part.groups[1].size() == 4);
        REQUIRE(part.groups[2].size() == 5);
    }
    SECTION("numeric attribute is rejected") {
        const Dataset d = numeric_column({1.0});
        REQUIRE_THROWS_AS(partition_by_category(d, 0), std::invalid_argument);
    }
}
