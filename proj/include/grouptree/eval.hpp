#pragma once

#include <cstdint>
#include <future>
#include <random>
#include <span>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include <json.hpp>

#include "grouptree/induction.hpp"

namespace grouptree {

struct EvalReport {
    double accuracy = 0.0;
    double misclassification_ratio = 0.0;  // always exactly 1 - accuracy
    /// Counts indexed [true label][predicted label] in class_labels order.
    std::vector<std::vector<std::size_t>> confusion;
    std::size_t n = 0;
    TreeStats tree_stats;
};

/// Classifies every row of `d` with `t` and tallies the confusion matrix.
inline EvalReport evaluate(const DecisionTree& t, const Dataset& d) {
    if (d.schemas() != t.schema)
        throw std::invalid_argument("evaluate: dataset schema does not match the tree");
    if (d.empty()) throw std::invalid_argument("evaluate: empty dataset");

    const auto& labels = d.class_labels();
    std::unordered_map<std::string, std::size_t> label_index;
    for (std::size_t i = 0; i < labels.size(); ++i) label_index.emplace(labels[i], i);

    EvalReport r;
    r.n = d.n_rows();
    r.confusion.assign(labels.size(), std::vector<std::size_t>(labels.size(), 0));
    std::size_t correct = 0;
    for (std::size_t i = 0; i < d.n_rows(); ++i) {
        const std::string predicted = classify(t, d.row(i));
        const auto it = label_index.find(predicted);
        if (it == label_index.end())
            throw std::logic_error("evaluate: predicted label '" + predicted +
                                   "' is not a class of the dataset");
        const std::size_t ti = d.label_index(i);
        ++r.confusion[ti][it->second];
        if (ti == it->second) ++correct;
    }
    r.accuracy = static_cast<double>(correct) / static_cast<double>(r.n);
    r.misclassification_ratio = 1.0 - r.accuracy;
    r.tree_stats = tree_stats(t);
    return r;
}

struct ComparisonReport {
    EvalReport id3;
    EvalReport grouped;
};

/// Builds both trees on `train` and evaluates them on `test`. The builds
/// run concurrently; inputs are immutable.
inline ComparisonReport compare(const Dataset& train, const Dataset& test,
                                const InductionParams& params = {}) {
    auto id3_future = std::async(std::launch::async, [&] {
        return evaluate(build_id3(train, params), test);
    });
    EvalReport grouped = evaluate(build_grouped(train, params), test);
    return ComparisonReport{id3_future.get(), std::move(grouped)};
}

/// Trains and evaluates on the same rows (resubstitution).
inline ComparisonReport compare(const Dataset& d, const InductionParams& params = {}) {
    return compare(d, d, params);
}

/// Deterministic seeded split into (train, test) parts. Rows are sampled
/// without replacement; each part keeps the original row order and the full
/// class label list of the parent.
inline std::pair<Dataset, Dataset> split_holdout(const Dataset& d, double test_fraction,
                                                 std::uint64_t seed) {
    if (!(test_fraction > 0.0) || !(test_fraction < 1.0))
        throw std::invalid_argument("split_holdout: test_fraction must be in (0, 1)");
    if (d.n_rows() < 2) throw std::invalid_argument("split_holdout: need at least 2 rows");

    auto idx = all_row_indices(d);
    std::mt19937_64 rng(seed);
    for (std::size_t i = idx.size(); i > 1; --i) {
        const std::size_t j = static_cast<std::size_t>(rng() % i);
        std::swap(idx[i - 1], idx[j]);
    }
    std::size_t n_test = static_cast<std::size_t>(
        static_cast<double>(d.n_rows()) * test_fraction);
    n_test = std::min(std::max<std::size_t>(n_test, 1), d.n_rows() - 1);

    std::vector<bool> in_test(d.n_rows(), false);
    for (std::size_t i = 0; i < n_test; ++i) in_test[idx[i]] = true;

    Dataset train(d.schemas(), d.class_name(), d.class_labels());
    Dataset test(d.schemas(), d.class_name(), d.class_labels());
    for (std::size_t r = 0; r < d.n_rows(); ++r)
        (in_test[r] ? test : train).add_row(d.row(r), d.label(r));
    return {std::move(train), std::move(test)};
}

inline std::string report_to_text(const EvalReport& r, std::span<const std::string> labels) {
    std::string out;
    out += "rows: " + std::to_string(r.n) + "\n";
    out += "accuracy: " + format_number(r.accuracy) + "\n";
    out += "misclassification: " + format_number(r.misclassification_ratio) + "\n";
    out += "tree depth: " + std::to_string(r.tree_stats.depth) + "\n";
    out += "tree nodes: " + std::to_string(r.tree_stats.node_count) + "\n";
    out += "tree leaves: " + std::to_string(r.tree_stats.leaf_count) + "\n";
    out += "confusion matrix (rows = true, columns = predicted):\n";
    std::size_t w = 0;
    for (const auto& l : labels) w = std::max(w, l.size());
    for (std::size_t i = 0; i < labels.size(); ++i) {
        out += "  " + labels[i] + std::string(w - labels[i].size(), ' ');
        for (const std::size_t c : r.confusion[i]) {
            std::string cell = std::to_string(c);
            out += "  " + std::string(cell.size() < 6 ? 6 - cell.size() : 0, ' ') + cell;
        }
        out += '\n';
    }
    return out;
}

inline std::string comparison_to_text(const ComparisonReport& r,
                                      std::span<const std::string> labels) {
    std::string out;
    out += "=== id3 ===\n" + report_to_text(r.id3, labels);
    out += "=== grouped ===\n" + report_to_text(r.grouped, labels);
    return out;
}

inline nlohmann::ordered_json report_to_json(const EvalReport& r,
                                             std::span<const std::string> labels) {
    nlohmann::ordered_json j;
    j["rows"] = r.n;
    j["accuracy"] = r.accuracy;
    j["misclassification"] = r.misclassification_ratio;
    j["tree"] = {{"depth", r.tree_stats.depth},
                 {"nodes", r.tree_stats.node_count},
                 {"leaves", r.tree_stats.leaf_count}};
    j["labels"] = std::vector<std::string>(labels.begin(), labels.end());
    j["confusion"] = r.confusion;
    return j;
}

inline nlohmann::ordered_json comparison_to_json(const ComparisonReport& r,
                                                 std::span<const std::string> labels) {
    nlohmann::ordered_json j;
    j["id3"] = report_to_json(r.id3, labels);
    j["grouped"] = report_to_json(r.grouped, labels);
    return j;
}

}  // namespace grouptree
