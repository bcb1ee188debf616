#pragma once

// Brute-force reference implementations. They deliberately share no code
// with the library beyond the domain types: dense vectors instead of sparse
// ones, per-pair counting instead of frequency tables, full sorts instead of
// bounded selection.

#include "nftrec/model.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <vector>

namespace nftrec::testing {

inline std::string oracle_term(const Token& t, const Trait& tr, bool cross) {
    auto clean = [](const std::string& s) {
        std::size_t b = 0, e = s.size();
        while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
        while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
        std::string out;
        for (std::size_t i = b; i < e; ++i) out += static_cast<char>(std::tolower(static_cast<unsigned char>(s[i])));
        return out;
    };
    auto term = clean(tr.trait_type) + "::" + clean(tr.value);
    return cross ? t.ref.contract() + "::" + term : term;
}

/// Dense count vectors over a vocabulary built with std::set.
struct DenseMatrix {
    std::vector<std::string> vocab;
    std::vector<std::vector<double>> rows;
};

inline DenseMatrix oracle_dense(const Collection& c, bool cross = false) {
    std::set<std::string> terms;
    for (const auto& t : c.tokens())
        for (const auto& tr : t.traits) terms.insert(oracle_term(t, tr, cross));
    DenseMatrix m;
    m.vocab.assign(terms.begin(), terms.end());
    for (const auto& t : c.tokens()) {
        std::vector<double> row(m.vocab.size(), 0.0);
        for (const auto& tr : t.traits) {
            auto pos = std::find(m.vocab.begin(), m.vocab.end(), oracle_term(t, tr, cross)) - m.vocab.begin();
            row[static_cast<std::size_t>(pos)] += 1.0;
        }
        m.rows.push_back(std::move(row));
    }
    return m;
}

inline double dense_dot(const std::vector<double>& a, const std::vector<double>& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

inline double dense_cosine(const std::vector<double>& a, const std::vector<double>& b) {
    double na = std::sqrt(dense_dot(a, a));
    double nb = std::sqrt(dense_dot(b, b));
    if (na == 0.0 || nb == 0.0) return 0.0;
    return dense_dot(a, b) / (na * nb);
}

/// cos^2 as an unreduced integer fraction, for exact comparisons.
struct ExactCosine {
    unsigned __int128 num = 0;
    unsigned __int128 den = 1;

    friend bool operator<(const ExactCosine& x, const ExactCosine& y) { return x.num * y.den < y.num * x.den; }
    friend bool operator==(const ExactCosine& x, const ExactCosine& y) { return x.num * y.den == y.num * x.den; }
};

inline ExactCosine exact_cosine(const std::vector<double>& a, const std::vector<double>& b) {
    auto d = static_cast<std::uint64_t>(dense_dot(a, b));
    auto sa = static_cast<std::uint64_t>(dense_dot(a, a));
    auto sb = static_cast<std::uint64_t>(dense_dot(b, b));
    if (sa == 0 || sb == 0) return {0, 1};
    return {static_cast<unsigned __int128>(d) * d, static_cast<unsigned __int128>(sa) * sb};
}

/// Total rarity per token: for each distinct trait string of the token,
/// scan every token to count carriers, then add T_N / c_t in ascending order.
inline std::vector<double> oracle_totals(const Collection& c, bool cross = false) {
    const auto& toks = c.tokens();
    std::vector<std::set<std::string>> sets;
    for (const auto& t : toks) {
        std::set<std::string> s;
        for (const auto& tr : t.traits) s.insert(oracle_term(t, tr, cross));
        sets.push_back(std::move(s));
    }
    std::vector<double> totals;
    for (const auto& s : sets) {
        std::vector<double> parts;
        for (const auto& term : s) {
            std::size_t carriers = 0;
            for (const auto& other : sets) carriers += other.count(term);
            parts.push_back(static_cast<double>(toks.size()) / static_cast<double>(carriers));
        }
        std::sort(parts.begin(), parts.end());
        double sum = 0.0;
        for (double p : parts) sum += p;
        totals.push_back(sum);
    }
    return totals;
}

struct OracleHit {
    std::size_t row;
    double score;
};

/// Ascending numeric id, then contract. Ids fit in 64 bits in tests.
inline bool oracle_tiebreak(const TokenRef& a, const TokenRef& b) {
    auto ia = std::stoull(a.token_id());
    auto ib = std::stoull(b.token_id());
    if (ia != ib) return ia < ib;
    return a.contract() < b.contract();
}

inline std::vector<OracleHit> oracle_by_traits(const Collection& c, std::size_t ref_row, std::size_t k,
                                               bool cross = false) {
    auto m = oracle_dense(c, cross);
    std::vector<std::size_t> cand;
    for (std::size_t j = 0; j < c.tokens().size(); ++j)
        if (j != ref_row) cand.push_back(j);
    std::sort(cand.begin(), cand.end(), [&](std::size_t x, std::size_t y) {
        auto cx = exact_cosine(m.rows[ref_row], m.rows[x]);
        auto cy = exact_cosine(m.rows[ref_row], m.rows[y]);
        if (!(cx == cy)) return cy < cx;
        return oracle_tiebreak(c.tokens()[x].ref, c.tokens()[y].ref);
    });
    std::vector<OracleHit> out;
    for (std::size_t i = 0; i < std::min(k, cand.size()); ++i) {
        out.push_back({cand[i], dense_cosine(m.rows[ref_row], m.rows[cand[i]])});
    }
    return out;
}

inline std::vector<OracleHit> oracle_by_rarity(const Collection& c, std::size_t ref_row, std::size_t k,
                                               bool cross = false) {
    auto totals = oracle_totals(c, cross);
    std::vector<std::size_t> cand;
    for (std::size_t j = 0; j < c.tokens().size(); ++j)
        if (j != ref_row) cand.push_back(j);
    auto diff = [&](std::size_t j) { return std::fabs(totals[j] - totals[ref_row]); };
    std::sort(cand.begin(), cand.end(), [&](std::size_t x, std::size_t y) {
        if (diff(x) != diff(y)) return diff(x) < diff(y);
        return oracle_tiebreak(c.tokens()[x].ref, c.tokens()[y].ref);
    });
    std::vector<OracleHit> out;
    for (std::size_t i = 0; i < std::min(k, cand.size()); ++i) out.push_back({cand[i], diff(cand[i])});
    return out;
}

inline bool close_rel(double a, double b, double rel) {
    return std::fabs(a - b) <= rel * std::max({1.0, std::fabs(a), std::fabs(b)});
}

} // namespace nftrec::testing
