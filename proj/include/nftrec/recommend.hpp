#pragma once

#include "nftrec/index.hpp"
#include "nftrec/model.hpp"

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace nftrec {

inline constexpr std::size_t kDefaultTopK = 10;

enum class Model { Traits, Rarity };
enum class ModelChoice { Traits, Rarity, Both };

std::string_view to_string(Model m) noexcept;
std::string_view to_string(ModelChoice m) noexcept;
ModelChoice parse_model_choice(std::string_view s);

struct RankedRecommendation {
    std::size_t rank = 0;  // 1-based
    TokenRef ref;
    /// Cosine similarity (traits) or absolute total-rarity difference (rarity).
    double score = 0.0;
    Model model = Model::Traits;

    friend bool operator==(const RankedRecommendation&, const RankedRecommendation&) = default;
};

using RecommendationList = std::vector<RankedRecommendation>;

/// The k tokens other than `ref` with the highest cosine to it. Ties go to
/// the smaller numeric token id, then the smaller contract.
RecommendationList recommend_by_traits(const TokenRef& ref, std::size_t k, const RecommenderIndex& index);

/// The k tokens other than `ref` whose total rarity is closest to its own.
/// Same tie-break as recommend_by_traits.
RecommendationList recommend_by_rarity(const TokenRef& ref, std::size_t k, const RecommenderIndex& index);

struct RecommendationSet {
    TokenRef reference;
    ModelChoice model = ModelChoice::Both;
    std::size_t k = kDefaultTopK;
    std::optional<RecommendationList> traits;
    std::optional<RecommendationList> rarity;
};

RecommendationSet recommend(const TokenRef& ref, ModelChoice model, std::size_t k, const RecommenderIndex& index);

/// Single model:
///   {"reference": R, "model": "traits", "k": n, "results": [{"rank","id","score"}, ...]}
/// Both models:
///   {"reference": R, "model": "both", "k": n, "results": {"traits": [...], "rarity": [...]}}
std::string recommendation_json(const RecommendationSet& set);

/// Fixed-width rendering of the same rows.
std::string recommendation_table(const RecommendationSet& set);

} // namespace nftrec
