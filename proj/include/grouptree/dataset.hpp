#pragma once

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <random>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace grouptree {

enum class AttrKind { categorical, numeric };

/// Description of one attribute column. The kind is fixed once inferred;
/// every value in the column conforms to it.
struct AttributeSchema {
    std::string name;
    AttrKind kind = AttrKind::categorical;

    bool operator==(const AttributeSchema&) const = default;
};

/// One cell: a real number for numeric columns, verbatim text otherwise.
using Value = std::variant<double, std::string>;

/// Shortest decimal form that parses back to exactly the same double.
inline std::string format_number(double v) {
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

/// Per-class tuple counts over a (sub)set of rows. `counts` is aligned to
/// the owning dataset's class_labels() order.
struct ClassCounts {
    std::vector<std::size_t> counts;
    std::size_t total = 0;

    /// Index of the most frequent class; the earliest label wins ties.
    std::size_t majority_index() const {
        std::size_t best = 0;
        for (std::size_t i = 1; i < counts.size(); ++i)
            if (counts[i] > counts[best]) best = i;
        return best;
    }

    /// Fraction held by the majority class. An empty set counts as pure.
    double majority_fraction() const {
        if (total == 0) return 1.0;
        return static_cast<double>(counts[majority_index()]) / static_cast<double>(total);
    }

    bool pure() const { return total > 0 && counts[majority_index()] == total; }

    bool operator==(const ClassCounts&) const = default;
};

namespace detail {

inline std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
    return s;
}

inline std::vector<std::string_view> split_fields(std::string_view line) {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    while (true) {
        const auto pos = line.find(',', start);
        if (pos == std::string_view::npos) {
            out.push_back(trim(line.substr(start)));
            break;
        }
        out.push_back(trim(line.substr(start, pos - start)));
        start = pos + 1;
    }
    return out;
}

inline bool parse_double(std::string_view s, double& out) {
    if (s.empty()) return false;
    const char* first = s.data();
    const char* last = first + s.size();
    const auto [ptr, ec] = std::from_chars(first, last, out);
    return ec == std::errc() && ptr == last && std::isfinite(out);
}

// Splits text into non-empty lines, tolerating CRLF endings.
inline std::vector<std::string_view> split_lines(std::string_view text) {
    std::vector<std::string_view> lines;
    std::size_t pos = 0;
    while (pos < text.size()) {
        const auto nl = text.find('\n', pos);
        std::string_view line =
            nl == std::string_view::npos ? text.substr(pos) : text.substr(pos, nl - pos);
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
        if (!line.empty()) lines.push_back(line);
        pos = nl == std::string_view::npos ? text.size() : nl + 1;
    }
    return lines;
}

}  // namespace detail

/// A table of classified rows. Immutable once filled; safe to read from any
/// number of threads concurrently.
class Dataset {
public:
    Dataset() = default;

    Dataset(std::vector<AttributeSchema> schemas, std::string class_name,
            std::vector<std::string> class_labels = {})
        : schemas_(std::move(schemas)),
          class_name_(std::move(class_name)),
          class_labels_(std::move(class_labels)) {
        for (const auto& s : schemas_)
            if (s.name.empty()) throw std::invalid_argument("attribute name must be non-empty");
        for (std::size_t i = 0; i < schemas_.size(); ++i)
            for (std::size_t j = i + 1; j < schemas_.size(); ++j)
                if (schemas_[i].name == schemas_[j].name)
                    throw std::invalid_argument("duplicate attribute name: " + schemas_[i].name);
    }

    /// Appends a row. Unknown labels are registered in order of first use.
    void add_row(std::vector<Value> values, const std::string& label) {
        if (values.size() != schemas_.size())
            throw std::invalid_argument("row has " + std::to_string(values.size()) +
                                        " values, expected " + std::to_string(schemas_.size()));
        for (std::size_t i = 0; i < values.size(); ++i) {
            const bool is_numeric = std::holds_alternative<double>(values[i]);
            if (is_numeric != (schemas_[i].kind == AttrKind::numeric))
                throw std::invalid_argument("value kind mismatch in column " + schemas_[i].name);
        }
        label_ids_.push_back(intern_label(label));
        rows_.push_back(std::move(values));
    }

    std::size_t n_rows() const { return rows_.size(); }
    std::size_t n_attributes() const { return schemas_.size(); }
    bool empty() const { return rows_.empty(); }

    const std::vector<AttributeSchema>& schemas() const { return schemas_; }
    const AttributeSchema& schema(std::size_t attr) const { return schemas_.at(attr); }
    const std::string& class_name() const { return class_name_; }
    const std::vector<std::string>& class_labels() const { return class_labels_; }

    const std::vector<Value>& row(std::size_t r) const { return rows_[r]; }
    const Value& value(std::size_t r, std::size_t attr) const { return rows_[r][attr]; }
    double numeric_at(std::size_t r, std::size_t attr) const {
        return std::get<double>(rows_[r][attr]);
    }
    const std::string& category_at(std::size_t r, std::size_t attr) const {
        return std::get<std::string>(rows_[r][attr]);
    }

    std::size_t label_index(std::size_t r) const { return label_ids_[r]; }
    const std::string& label(std::size_t r) const { return class_labels_[label_ids_[r]]; }

    bool operator==(const Dataset&) const = default;

private:
    std::size_t intern_label(const std::string& label) {
        const auto it = std::find(class_labels_.begin(), class_labels_.end(), label);
        if (it != class_labels_.end())
            return static_cast<std::size_t>(it - class_labels_.begin());
        class_labels_.push_back(label);
        return class_labels_.size() - 1;
    }

    std::vector<AttributeSchema> schemas_;
    std::string class_name_;
    std::vector<std::string> class_labels_;
    std::vector<std::vector<Value>> rows_;
    std::vector<std::size_t> label_ids_;
};

inline std::vector<std::size_t> all_row_indices(const Dataset& d) {
    std::vector<std::size_t> idx(d.n_rows());
    for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
    return idx;
}

inline ClassCounts class_distribution(const Dataset& d, std::span<const std::size_t> rows) {
    ClassCounts c;
    c.counts.assign(d.class_labels().size(), 0);
    for (const std::size_t r : rows) {
        ++c.counts[d.label_index(r)];
        ++c.total;
    }
    return c;
}

inline ClassCounts class_distribution(const Dataset& d) {
    ClassCounts c;
    c.counts.assign(d.class_labels().size(), 0);
    for (std::size_t r = 0; r < d.n_rows(); ++r) {
        ++c.counts[d.label_index(r)];
        ++c.total;
    }
    return c;
}

/// Parses the CSV dialect used throughout: comma-separated, first row is a
/// header, no quoting (fields must not contain commas), LF or CRLF newlines,
/// blank lines ignored, fields trimmed of surrounding spaces/tabs. Empty
/// fields are rejected as missing values.
///
/// `class_column` selects the label column by exact header name, or by
/// 0-based index if no name matches and the selector is all digits. An empty
/// selector means the last column. Attribute kinds are inferred: numeric iff
/// every value in the column parses as a finite real number.
inline Dataset parse_csv(std::string_view text, const std::string& class_column = "") {
    const auto lines = detail::split_lines(text);
    if (lines.empty()) throw std::runtime_error("csv: empty input");

    const auto header = detail::split_fields(lines[0]);
    std::size_t class_col = header.size() - 1;
    if (!class_column.empty()) {
        bool found = false;
        for (std::size_t i = 0; i < header.size(); ++i) {
            if (header[i] == class_column) {
                class_col = i;
                found = true;
                break;
            }
        }
        if (!found) {
            std::size_t idx = 0;
            const char* first = class_column.data();
            const char* last = first + class_column.size();
            const auto [ptr, ec] = std::from_chars(first, last, idx);
            if (ec == std::errc() && ptr == last && idx < header.size()) {
                class_col = idx;
                found = true;
            }
        }
        if (!found)
            throw std::runtime_error("csv: class column not found: " + class_column);
    }

    if (lines.size() == 1) throw std::runtime_error("csv: no data rows (columns have zero rows)");

    std::vector<std::vector<std::string_view>> raw;
    raw.reserve(lines.size() - 1);
    for (std::size_t li = 1; li < lines.size(); ++li) {
        auto fields = detail::split_fields(lines[li]);
        if (fields.size() != header.size())
            throw std::runtime_error("csv: row " + std::to_string(li) + " has " +
                                     std::to_string(fields.size()) + " fields, expected " +
                                     std::to_string(header.size()));
        for (std::size_t f = 0; f < fields.size(); ++f)
            if (fields[f].empty())
                throw std::runtime_error("csv: empty field (missing value) at row " +
                                         std::to_string(li) + ", column " +
                                         std::string(header[f]));
        raw.push_back(std::move(fields));
    }

    std::vector<AttributeSchema> schemas;
    std::vector<std::size_t> attr_cols;
    for (std::size_t c = 0; c < header.size(); ++c) {
        if (c == class_col) continue;
        bool numeric = true;
        double unused = 0.0;
        for (const auto& fields : raw) {
            if (!detail::parse_double(fields[c], unused)) {
                numeric = false;
                break;
            }
        }
        schemas.push_back({std::string(header[c]),
                           numeric ? AttrKind::numeric : AttrKind::categorical});
        attr_cols.push_back(c);
    }

    Dataset d(std::move(schemas), std::string(header[class_col]));
    for (const auto& fields : raw) {
        std::vector<Value> values;
        values.reserve(attr_cols.size());
        for (std::size_t a = 0; a < attr_cols.size(); ++a) {
            const auto field = fields[attr_cols[a]];
            if (d.schema(a).kind == AttrKind::numeric) {
                double v = 0.0;
                detail::parse_double(field, v);
                values.emplace_back(v);
            } else {
                values.emplace_back(std::string(field));
            }
        }
        d.add_row(std::move(values), std::string(fields[class_col]));
    }
    return d;
}

inline Dataset parse_csv_file(const std::string& path, const std::string& class_column = "") {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot read file: " + path);
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return parse_csv(text, class_column);
}

/// Serializes back to the same CSV dialect (LF newlines, trailing newline).
/// Numeric cells use the shortest round-trip-exact decimal form, so
/// parse_csv(to_csv(d)) reproduces `d` exactly.
inline std::string to_csv(const Dataset& d) {
    const auto check = [](const std::string& s) {
        if (s.find(',') != std::string::npos || s.find('\n') != std::string::npos ||
            s.find('\r') != std::string::npos)
            throw std::invalid_argument("csv: value contains a separator: " + s);
    };
    std::string out;
    for (const auto& s : d.schemas()) {
        check(s.name);
        out += s.name;
        out += ',';
    }
    check(d.class_name());
    out += d.class_name();
    out += '\n';
    for (std::size_t r = 0; r < d.n_rows(); ++r) {
        for (std::size_t a = 0; a < d.n_attributes(); ++a) {
            if (d.schema(a).kind == AttrKind::numeric) {
                out += format_number(d.numeric_at(r, a));
            } else {
                check(d.category_at(r, a));
                out += d.category_at(r, a);
            }
            out += ',';
        }
        check(d.label(r));
        out += d.label(r);
        out += '\n';
    }
    return out;
}

/// Parses a header-bearing CSV of unlabeled rows whose columns must match
/// `schema` by name and order; values are coerced to the declared kinds.
inline std::vector<std::vector<Value>> parse_unlabeled_csv(
    std::string_view text, std::span<const AttributeSchema> schema) {
    const auto lines = detail::split_lines(text);
    if (lines.empty()) throw std::runtime_error("csv: empty input");
    const auto header = detail::split_fields(lines[0]);
    if (header.size() != schema.size())
        throw std::runtime_error("csv: expected " + std::to_string(schema.size()) +
                                 " columns, found " + std::to_string(header.size()));
    for (std::size_t i = 0; i < schema.size(); ++i)
        if (header[i] != schema[i].name)
            throw std::runtime_error("csv: column " + std::to_string(i) + " is named '" +
                                     std::string(header[i]) + "', expected '" + schema[i].name +
                                     "'");
    std::vector<std::vector<Value>> rows;
    for (std::size_t li = 1; li < lines.size(); ++li) {
        const auto fields = detail::split_fields(lines[li]);
        if (fields.size() != schema.size())
            throw std::runtime_error("csv: row " + std::to_string(li) + " has " +
                                     std::to_string(fields.size()) + " fields, expected " +
                                     std::to_string(schema.size()));
        std::vector<Value> values;
        values.reserve(fields.size());
        for (std::size_t i = 0; i < fields.size(); ++i) {
            if (fields[i].empty())
                throw std::runtime_error("csv: empty field (missing value) at row " +
                                         std::to_string(li));
            if (schema[i].kind == AttrKind::numeric) {
                double v = 0.0;
                if (!detail::parse_double(fields[i], v))
                    throw std::runtime_error("csv: value '" + std::string(fields[i]) +
                                             "' in numeric column " + schema[i].name +
                                             " is not a number");
                values.emplace_back(v);
            } else {
                values.emplace_back(std::string(fields[i]));
            }
        }
        rows.push_back(std::move(values));
    }
    return rows;
}

/// Builds a deterministic dataset of `n_rows` rows over `n_numeric_attrs`
/// numeric attributes and `n_classes` classes. Each class draws every
/// attribute from its own disjoint interval, so a perfect classifier exists.
/// The same seed always produces the identical dataset.
inline Dataset generate_synthetic(std::size_t n_rows, std::size_t n_numeric_attrs,
                                  std::size_t n_classes, std::uint64_t seed) {
    if (n_rows == 0) throw std::invalid_argument("synthetic: n_rows must be positive");
    if (n_numeric_attrs == 0)
        throw std::invalid_argument("synthetic: n_numeric_attrs must be positive");
    if (n_classes < 2) throw std::invalid_argument("synthetic: n_classes must be at least 2");
    if (n_classes > n_rows) throw std::invalid_argument("synthetic: n_classes > n_rows");

    std::vector<AttributeSchema> schemas;
    for (std::size_t a = 0; a < n_numeric_attrs; ++a)
        schemas.push_back({"attr_" + std::to_string(a), AttrKind::numeric});
    std::vector<std::string> labels;
    for (std::size_t c = 0; c < n_classes; ++c) labels.push_back("class_" + std::to_string(c));

    Dataset d(std::move(schemas), "class", std::move(labels));
    std::mt19937_64 rng(seed);
    for (std::size_t r = 0; r < n_rows; ++r) {
        const std::size_t cls = r % n_classes;
        std::vector<Value> values;
        values.reserve(n_numeric_attrs);
        for (std::size_t a = 0; a < n_numeric_attrs; ++a) {
            // u in [0, 1) built from the top 53 bits; avoids distribution
            // objects so the byte stream is pinned by the engine alone
            const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
            const double lo = 10.0 * static_cast<double>(cls) + 1.0;
            values.emplace_back(lo + 8.0 * u);
        }
        d.add_row(std::move(values), d.class_labels()[cls]);
    }
    return d;
}

}  // namespace grouptree
