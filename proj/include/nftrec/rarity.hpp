#pragma once

#include "nftrec/model.hpp"
#include "nftrec/similarity.hpp"

#include <cstddef>
#include <map>
#include <span>
#include <string>
#include <vector>

namespace nftrec {

/// Per-trait token counts c_t and total supply T_N.
///
/// c_t is the number of tokens whose document contains the trait string at
/// least once, so a pair repeated inside one token counts once.
class TraitFrequencyTable {
public:
    TraitFrequencyTable() = default;

    /// Throws DomainError unless every count lies in [1, total_supply].
    TraitFrequencyTable(std::map<std::string, std::size_t> counts, std::size_t total_supply);

    const std::map<std::string, std::size_t>& counts() const noexcept { return counts_; }
    std::size_t total_supply() const noexcept { return total_supply_; }

    /// Throws NotFoundError for unknown trait strings.
    std::size_t count(const std::string& trait) const;

private:
    std::map<std::string, std::size_t> counts_;
    std::size_t total_supply_ = 0;
};

TraitFrequencyTable count_frequencies(std::span<const TraitDocument> docs);
TraitFrequencyTable count_frequencies(const Collection& c,
                                      DocumentScope scope = DocumentScope::CollectionLocal);

/// T_N / c_t. Throws DomainError unless 1 <= c_t <= T_N.
double trait_rarity(std::size_t trait_count, std::size_t total_supply);

struct TokenRarity {
    std::map<std::string, double> per_trait;
    /// Sum of per_trait taken in ascending value order.
    double total = 0.0;
};

/// Rarity of each distinct trait string in `doc` and their sum. Throws
/// ParseError for traits absent from the table.
TokenRarity token_rarity(const TraitDocument& doc, const TraitFrequencyTable& table);

double total_rarity(const Token& tok, const TraitFrequencyTable& table,
                    DocumentScope scope = DocumentScope::CollectionLocal);

struct RarityReport {
    std::vector<TokenRef> refs;
    std::vector<TokenRarity> per_token;

    std::size_t size() const noexcept { return refs.size(); }
};

RarityReport rarity_report(const Collection& c, DocumentScope scope = DocumentScope::CollectionLocal);

/// "reference_id,total_rarity" CSV. Reals use 12 significant digits.
std::string rarity_totals_csv(const RarityReport& report);

/// Long-format "reference_id,trait,rarity" CSV.
std::string rarity_traits_csv(const RarityReport& report);

} // namespace nftrec
