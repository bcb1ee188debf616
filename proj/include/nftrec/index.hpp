#pragma once

#include "nftrec/model.hpp"
#include "nftrec/rarity.hpp"
#include "nftrec/similarity.hpp"

#include <filesystem>
#include <string>
#include <unordered_map>
#include <vector>

namespace nftrec {

/// Everything a query needs, built once per collection and immutable
/// afterwards. Concurrent readers need no synchronisation.
///
/// On disk an index is a directory:
///   manifest.json    {"format_version":1,"scope":"local|cross","tokens":N,"vocabulary_size":V}
///   vocabulary.txt   one trait string per line, line number == column
///   matrix.tsv       one row per token: "<ref>\t<col>:<count>,<col>:<count>,..."
///   collection.json  the collection in erc721-metadata form
///
/// In vocabulary.txt backslash, tab, CR and LF are written as \\ \t \r \n.
class RecommenderIndex {
public:
    RecommenderIndex() = default;

    static RecommenderIndex build(Collection collection, DocumentScope scope = DocumentScope::CollectionLocal);

    /// Throws ParseError when the files are malformed or disagree with each
    /// other, IoError when they cannot be read.
    static RecommenderIndex load(const std::filesystem::path& dir);
    void save(const std::filesystem::path& dir) const;

    const Collection& collection() const noexcept { return collection_; }
    DocumentScope scope() const noexcept { return scope_; }
    const Vocabulary& vocabulary() const noexcept { return vocabulary_; }
    const CountMatrix& matrix() const noexcept { return matrix_; }
    const TraitFrequencyTable& frequencies() const noexcept { return frequencies_; }

    std::size_t size() const noexcept { return collection_.tokens().size(); }
    const Token& token(std::size_t row) const { return collection_.tokens().at(row); }
    const TokenRarity& rarity(std::size_t row) const { return rarities_.at(row); }
    double total_rarity(std::size_t row) const { return rarities_.at(row).total; }

    /// Position of the row in ascending (numeric token id, contract) order.
    std::size_t tiebreak_rank(std::size_t row) const { return tiebreak_rank_.at(row); }

    /// Throws NotFoundError naming the reference.
    std::size_t row_of(const TokenRef& ref) const;
    bool contains(const TokenRef& ref) const;

private:
    RecommenderIndex(Collection collection, DocumentScope scope, Vocabulary vocabulary, CountMatrix matrix);

    Collection collection_;
    DocumentScope scope_ = DocumentScope::CollectionLocal;
    Vocabulary vocabulary_;
    CountMatrix matrix_;
    TraitFrequencyTable frequencies_;
    std::vector<TokenRarity> rarities_;
    std::vector<std::size_t> tiebreak_rank_;
    std::unordered_map<std::string, std::size_t> rows_by_ref_;
};

std::string escape_vocabulary_term(std::string_view term);
std::string unescape_vocabulary_term(std::string_view line);

} // namespace nftrec
