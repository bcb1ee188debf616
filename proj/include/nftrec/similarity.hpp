#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

namespace nftrec {

using TraitDocument = std::vector<std::string>;

/// Sorted map from trait string to dense column index.
class Vocabulary {
public:
    Vocabulary() = default;

    /// Columns are assigned in ascending byte order of `terms`, which must be
    /// sorted and distinct. Throws ParseError otherwise.
    explicit Vocabulary(std::vector<std::string> terms);

    std::size_t size() const noexcept { return terms_.size(); }
    bool empty() const noexcept { return terms_.empty(); }

    /// Column of `term`, or -1 when absent.
    std::int64_t find(std::string_view term) const noexcept;
    const std::string& term(std::size_t column) const { return terms_.at(column); }
    const std::vector<std::string>& terms() const noexcept { return terms_; }

    friend bool operator==(const Vocabulary&, const Vocabulary&) = default;

private:
    std::vector<std::string> terms_;
};

struct CountEntry {
    std::uint32_t column;
    std::uint32_t count;

    friend bool operator==(const CountEntry&, const CountEntry&) = default;
};

/// Sparse count vector, strictly increasing columns, counts >= 1.
using CountVector = std::vector<CountEntry>;

Vocabulary build_vocabulary(std::span<const TraitDocument> docs);

/// Throws ParseError naming the first trait string missing from `vocab`.
CountVector vectorize(const TraitDocument& doc, const Vocabulary& vocab);

double euclidean_norm(const CountVector& v) noexcept;

/// Integer dot product of two sparse vectors (exact).
std::uint64_t sparse_dot(const CountVector& a, const CountVector& b) noexcept;

/// dot(a,b) / (norm_a * norm_b), or 0 when either norm is zero.
double cosine(const CountVector& a, const CountVector& b, double norm_a, double norm_b) noexcept;

/// One count vector per token, with cached norms. Rows follow collection
/// token order.
class CountMatrix {
public:
    CountMatrix() = default;

    /// Throws ParseError if a row violates the CountVector invariants or
    /// references a column >= `columns`.
    CountMatrix(std::vector<CountVector> rows, std::size_t columns);

    std::size_t rows() const noexcept { return rows_.size(); }
    std::size_t columns() const noexcept { return columns_; }
    const CountVector& row(std::size_t i) const { return rows_.at(i); }
    double norm(std::size_t i) const { return norms_.at(i); }
    const std::vector<CountVector>& all_rows() const noexcept { return rows_; }

    friend bool operator==(const CountMatrix&, const CountMatrix&) = default;

private:
    std::vector<CountVector> rows_;
    std::vector<double> norms_;
    std::size_t columns_ = 0;
};

CountMatrix build_count_matrix(std::span<const TraitDocument> docs, const Vocabulary& vocab);

/// Cosine of row `i` against every row. Throws DomainError when i is out of
/// range. The full matrix is never stored.
std::vector<double> similarity_row(std::size_t i, const CountMatrix& m);

} // namespace nftrec
