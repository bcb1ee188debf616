#include "nftrec/recommend.hpp"

#include "nftrec/error.hpp"
#include "nftrec/topk.hpp"

#include <json.hpp>

#include <cmath>
#include <cstdio>

namespace nftrec {

using nlohmann::json;

std::string_view to_string(Model m) noexcept { return m == Model::Traits ? "traits" : "rarity"; }

std::string_view to_string(ModelChoice m) noexcept {
    switch (m) {
    case ModelChoice::Traits: return "traits";
    case ModelChoice::Rarity: return "rarity";
    case ModelChoice::Both: return "both";
    }
    return "both";
}

ModelChoice parse_model_choice(std::string_view s) {
    if (s == "traits") return ModelChoice::Traits;
    if (s == "rarity") return ModelChoice::Rarity;
    if (s == "both") return ModelChoice::Both;
    throw ParseError("unknown model '" + std::string(s) + "' (expected traits, rarity or both)");
}

namespace {

struct Candidate {
    double score;
    std::size_t tiebreak;
    std::size_t row;
};

template <typename ScoreBetter>
RecommendationList select(std::size_t reference_row, std::size_t k, const RecommenderIndex& index, Model model,
                          const std::vector<double>& scores, ScoreBetter score_better) {
    auto better = [&](const Candidate& a, const Candidate& b) {
        if (a.score != b.score) return score_better(a.score, b.score);
        return a.tiebreak < b.tiebreak;
    };
    TopK<Candidate, decltype(better)> top(k, better);
    for (std::size_t j = 0; j < scores.size(); ++j) {
        if (j == reference_row) continue;
        top.push({scores[j], index.tiebreak_rank(j), j});
    }
    RecommendationList out;
    auto best = top.take_sorted();
    out.reserve(best.size());
    for (std::size_t r = 0; r < best.size(); ++r) {
        out.push_back({r + 1, index.token(best[r].row).ref, best[r].score, model});
    }
    return out;
}

json list_json(const RecommendationList& list) {
    json arr = json::array();
    for (const auto& r : list) arr.push_back({{"rank", r.rank}, {"id", r.ref.display()}, {"score", r.score}});
    return arr;
}

void append_table(std::string& out, std::string_view title, const RecommendationList& list) {
    char line[256];
    out += std::string(title) + "\n";
    std::snprintf(line, sizeof line, "%-5s  %-60s  %18s\n", "RANK", "ID", "SCORE");
    out += line;
    for (const auto& r : list) {
        std::snprintf(line, sizeof line, "%-5zu  %-60s  %18.12g\n", r.rank, r.ref.display().c_str(), r.score);
        out += line;
    }
}

} // namespace

RecommendationList recommend_by_traits(const TokenRef& ref, std::size_t k, const RecommenderIndex& index) {
    auto row = index.row_of(ref);
    auto scores = similarity_row(row, index.matrix());
    return select(row, k, index, Model::Traits, scores, [](double a, double b) { return a > b; });
}

RecommendationList recommend_by_rarity(const TokenRef& ref, std::size_t k, const RecommenderIndex& index) {
    auto row = index.row_of(ref);
    const double reference_total = index.total_rarity(row);
    std::vector<double> diffs(index.size());
    for (std::size_t j = 0; j < diffs.size(); ++j) diffs[j] = std::fabs(index.total_rarity(j) - reference_total);
    return select(row, k, index, Model::Rarity, diffs, [](double a, double b) { return a < b; });
}

RecommendationSet recommend(const TokenRef& ref, ModelChoice model, std::size_t k, const RecommenderIndex& index) {
    RecommendationSet set{ref, model, k, std::nullopt, std::nullopt};
    index.row_of(ref);
    if (model != ModelChoice::Rarity) set.traits = recommend_by_traits(ref, k, index);
    if (model != ModelChoice::Traits) set.rarity = recommend_by_rarity(ref, k, index);
    return set;
}

std::string recommendation_json(const RecommendationSet& set) {
    json doc = {{"reference", set.reference.display()}, {"model", std::string(to_string(set.model))}, {"k", set.k}};
    switch (set.model) {
    case ModelChoice::Traits: doc["results"] = list_json(*set.traits); break;
    case ModelChoice::Rarity: doc["results"] = list_json(*set.rarity); break;
    case ModelChoice::Both:
        doc["results"] = {{"traits", list_json(*set.traits)}, {"rarity", list_json(*set.rarity)}};
        break;
    }
    return doc.dump(2);
}

std::string recommendation_table(const RecommendationSet& set) {
    std::string out = "reference: " + set.reference.display() + "  k: " + std::to_string(set.k) + "\n";
    if (set.traits) {
        out += "\n";
        append_table(out, "model: traits (cosine similarity, higher is closer)", *set.traits);
    }
    if (set.rarity) {
        out += "\n";
        append_table(out, "model: rarity (absolute total-rarity difference, lower is closer)", *set.rarity);
    }
    return out;
}

} // namespace nftrec
