#include "nftrec/rarity.hpp"

#include "nftrec/csv.hpp"
#include "nftrec/error.hpp"

#include <algorithm>
#include <set>

namespace nftrec {

TraitFrequencyTable::TraitFrequencyTable(std::map<std::string, std::size_t> counts, std::size_t total_supply)
    : counts_(std::move(counts)), total_supply_(total_supply) {
    for (const auto& [trait, c] : counts_) {
        if (c == 0 || c > total_supply_) {
            throw DomainError("trait '" + trait + "' has count " + std::to_string(c) +
                              " outside [1, " + std::to_string(total_supply_) + "]");
        }
    }
}

std::size_t TraitFrequencyTable::count(const std::string& trait) const {
    auto it = counts_.find(trait);
    if (it == counts_.end()) throw NotFoundError("trait '" + trait + "' is not in the frequency table");
    return it->second;
}

TraitFrequencyTable count_frequencies(std::span<const TraitDocument> docs) {
    std::map<std::string, std::size_t> counts;
    for (const auto& doc : docs) {
        std::set<std::string_view> present(doc.begin(), doc.end());
        for (auto t : present) ++counts[std::string(t)];
    }
    return TraitFrequencyTable(std::move(counts), docs.size());
}

TraitFrequencyTable count_frequencies(const Collection& c, DocumentScope scope) {
    std::vector<TraitDocument> docs;
    docs.reserve(c.tokens().size());
    for (const auto& t : c.tokens()) docs.push_back(trait_document(t, scope));
    return count_frequencies(docs);
}

double trait_rarity(std::size_t trait_count, std::size_t total_supply) {
    if (trait_count == 0 || trait_count > total_supply) {
        throw DomainError("trait count " + std::to_string(trait_count) + " outside [1, " +
                          std::to_string(total_supply) + "]");
    }
    return static_cast<double>(total_supply) / static_cast<double>(trait_count);
}

TokenRarity token_rarity(const TraitDocument& doc, const TraitFrequencyTable& table) {
    TokenRarity r;
    for (const auto& t : doc) {
        if (r.per_trait.contains(t)) continue;
        auto it = table.counts().find(t);
        if (it == table.counts().end()) {
            throw ParseError("trait '" + t + "' is not in the frequency table");
        }
        r.per_trait.emplace(t, trait_rarity(it->second, table.total_supply()));
    }
    // Summing in ascending value order makes the total a function of the
    // multiset of trait counts alone.
    std::vector<double> values;
    values.reserve(r.per_trait.size());
    for (const auto& [t, v] : r.per_trait) values.push_back(v);
    std::sort(values.begin(), values.end());
    for (double v : values) r.total += v;
    return r;
}

double total_rarity(const Token& tok, const TraitFrequencyTable& table, DocumentScope scope) {
    return token_rarity(trait_document(tok, scope), table).total;
}

RarityReport rarity_report(const Collection& c, DocumentScope scope) {
    auto table = count_frequencies(c, scope);
    RarityReport report;
    report.refs.reserve(c.tokens().size());
    report.per_token.reserve(c.tokens().size());
    for (const auto& t : c.tokens()) {
        report.refs.push_back(t.ref);
        report.per_token.push_back(token_rarity(trait_document(t, scope), table));
    }
    return report;
}

std::string rarity_totals_csv(const RarityReport& report) {
    std::string out = "reference_id,total_rarity\n";
    for (std::size_t i = 0; i < report.size(); ++i) {
        out += csv_field(report.refs[i].display()) + "," + format_real(report.per_token[i].total) + "\n";
    }
    return out;
}

std::string rarity_traits_csv(const RarityReport& report) {
    std::string out = "reference_id,trait,rarity\n";
    for (std::size_t i = 0; i < report.size(); ++i) {
        auto id = csv_field(report.refs[i].display());
        for (const auto& [trait, v] : report.per_token[i].per_trait) {
            out += id + "," + csv_field(trait) + "," + format_real(v) + "\n";
        }
    }
    return out;
}

} // namespace nftrec
