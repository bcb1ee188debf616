#include "nftrec/similarity.hpp"

#include "nftrec/error.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace nftrec {

Vocabulary::Vocabulary(std::vector<std::string> terms) : terms_(std::move(terms)) {
    for (std::size_t i = 1; i < terms_.size(); ++i) {
        if (!(terms_[i - 1] < terms_[i])) {
            throw ParseError("vocabulary terms must be sorted and distinct (at column " +
                             std::to_string(i) + ": '" + terms_[i] + "')");
        }
    }
}

std::int64_t Vocabulary::find(std::string_view term) const noexcept {
    auto it = std::lower_bound(terms_.begin(), terms_.end(), term);
    if (it == terms_.end() || *it != term) return -1;
    return static_cast<std::int64_t>(it - terms_.begin());
}

Vocabulary build_vocabulary(std::span<const TraitDocument> docs) {
    std::set<std::string> distinct;
    for (const auto& doc : docs) distinct.insert(doc.begin(), doc.end());
    return Vocabulary(std::vector<std::string>(distinct.begin(), distinct.end()));
}

CountVector vectorize(const TraitDocument& doc, const Vocabulary& vocab) {
    std::vector<std::uint32_t> columns;
    columns.reserve(doc.size());
    for (const auto& term : doc) {
        auto col = vocab.find(term);
        if (col < 0) throw ParseError("trait string '" + term + "' is not in the vocabulary");
        columns.push_back(static_cast<std::uint32_t>(col));
    }
    std::sort(columns.begin(), columns.end());

    CountVector v;
    for (auto c : columns) {
        if (!v.empty() && v.back().column == c) {
            ++v.back().count;
        } else {
            v.push_back({c, 1});
        }
    }
    return v;
}

double euclidean_norm(const CountVector& v) noexcept {
    std::uint64_t sq = 0;
    for (const auto& e : v) sq += static_cast<std::uint64_t>(e.count) * e.count;
    return std::sqrt(static_cast<double>(sq));
}

std::uint64_t sparse_dot(const CountVector& a, const CountVector& b) noexcept {
    std::uint64_t dot = 0;
    auto ia = a.begin();
    auto ib = b.begin();
    while (ia != a.end() && ib != b.end()) {
        if (ia->column < ib->column) {
            ++ia;
        } else if (ib->column < ia->column) {
            ++ib;
        } else {
            dot += static_cast<std::uint64_t>(ia->count) * ib->count;
            ++ia;
            ++ib;
        }
    }
    return dot;
}

namespace {

using u128 = unsigned __int128;

u128 gcd128(u128 a, u128 b) {
    while (b != 0) {
        u128 t = a % b;
        a = b;
        b = t;
    }
    return a;
}

} // namespace

double cosine(const CountVector& a, const CountVector& b, double norm_a, double norm_b) noexcept {
    if (norm_a == 0.0 || norm_b == 0.0) return 0.0;
    // Norms of count vectors are square roots of integers. Working on the
    // reduced fraction dot^2 / (|a|^2 |b|^2) makes equal cosines produce
    // identical doubles, so exact ties reach the tie-break, and cosine(a, a)
    // is exactly 1.
    auto sq_a = static_cast<u128>(std::llround(norm_a * norm_a));
    auto sq_b = static_cast<u128>(std::llround(norm_b * norm_b));
    auto dot = static_cast<u128>(sparse_dot(a, b));
    if (dot == 0) return 0.0;
    u128 num = dot * dot;
    u128 den = sq_a * sq_b;
    u128 g = gcd128(num, den);
    num /= g;
    den /= g;
    return std::sqrt(static_cast<double>(num) / static_cast<double>(den));
}

CountMatrix::CountMatrix(std::vector<CountVector> rows, std::size_t columns)
    : rows_(std::move(rows)), columns_(columns) {
    norms_.reserve(rows_.size());
    for (std::size_t r = 0; r < rows_.size(); ++r) {
        const auto& v = rows_[r];
        for (std::size_t i = 0; i < v.size(); ++i) {
            bool ok = v[i].count >= 1 && v[i].column < columns_ && (i == 0 || v[i - 1].column < v[i].column);
            if (!ok) throw ParseError("invalid count vector at row " + std::to_string(r));
        }
        norms_.push_back(euclidean_norm(v));
    }
}

CountMatrix build_count_matrix(std::span<const TraitDocument> docs, const Vocabulary& vocab) {
    std::vector<CountVector> rows;
    rows.reserve(docs.size());
    for (const auto& doc : docs) rows.push_back(vectorize(doc, vocab));
    return CountMatrix(std::move(rows), vocab.size());
}

std::vector<double> similarity_row(std::size_t i, const CountMatrix& m) {
    if (i >= m.rows()) {
        throw DomainError("row index " + std::to_string(i) + " out of range (rows: " +
                          std::to_string(m.rows()) + ")");
    }
    const auto& ref = m.row(i);
    const double ref_norm = m.norm(i);
    std::vector<double> out(m.rows());
    for (std::size_t j = 0; j < m.rows(); ++j) {
        out[j] = cosine(ref, m.row(j), ref_norm, m.norm(j));
    }
    return out;
}

} // namespace nftrec
