#include "nftrec/error.hpp"
#include "nftrec/recommend.hpp"
#include "nftrec/topk.hpp"

#include "support/oracles.hpp"
#include "support/synthetic.hpp"

#include <gtest/gtest.h>
#include <json.hpp>

#include <random>

using namespace nftrec;
namespace nt = nftrec::testing;
using nt::kContractA;

namespace {

Token tok(std::string id, std::vector<Trait> traits) {
    return Token{TokenRef(kContractA, id), std::move(traits), std::nullopt, std::nullopt};
}

void expect_matches(const RecommendationList& got, const std::vector<nt::OracleHit>& want, const Collection& c) {
    ASSERT_EQ(got.size(), want.size());
    for (std::size_t i = 0; i < got.size(); ++i) {
        EXPECT_EQ(got[i].rank, i + 1);
        EXPECT_EQ(got[i].ref, c.tokens()[want[i].row].ref) << "rank " << i + 1;
        EXPECT_NEAR(got[i].score, want[i].score, 1e-12);
    }
}

} // namespace

TEST(TopK, KeepsBestInOrder) {
    auto better = [](int a, int b) { return a > b; };
    TopK<int, decltype(better)> top(3, better);
    for (int x : {5, 1, 9, 3, 7, 9, 2}) top.push(x);
    EXPECT_EQ(top.take_sorted(), (std::vector<int>{9, 9, 7}));
    TopK<int, decltype(better)> none(0, better);
    none.push(1);
    EXPECT_TRUE(none.take_sorted().empty());
}

TEST(RecommendByTraits, DegenerateAndDuplicateCases) {
    Collection c(std::nullopt, {tok("0", {Trait("Fur", "Black"), Trait("Hat", "Crown")}),
                                tok("1", {Trait("Fur", "Gold")}), tok("2", {Trait("Fur", "Black")}),
                                tok("3", {Trait("hat", "crown"), Trait("fur", "black")})});
    auto idx = RecommenderIndex::build(c);
    auto ref = c.tokens()[0].ref;
    EXPECT_TRUE(recommend_by_traits(ref, 0, idx).empty());
    auto top = recommend_by_traits(ref, 10, idx);
    ASSERT_EQ(top.size(), 3u);
    EXPECT_EQ(top[0].ref, c.tokens()[3].ref);
    EXPECT_EQ(top[0].score, 1.0);
    EXPECT_EQ(top[0].model, Model::Traits);
    EXPECT_EQ(top[2].score, 0.0);
    EXPECT_THROW(recommend_by_traits(TokenRef(kContractA, "77"), 3, idx), NotFoundError);
}

TEST(RecommendByTraits, TraitlessReferenceFallsBackToTiebreakOrder) {
    Collection c(std::nullopt, {tok("5", {}), tok("3", {Trait("A", "x")}), tok("1", {Trait("A", "y")}),
                                tok("2", {})});
    auto idx = RecommenderIndex::build(c);
    auto top = recommend_by_traits(c.tokens()[0].ref, 10, idx);
    ASSERT_EQ(top.size(), 3u);
    EXPECT_EQ(top[0].ref.token_id(), "1");
    EXPECT_EQ(top[1].ref.token_id(), "2");
    EXPECT_EQ(top[2].ref.token_id(), "3");
    for (const auto& r : top) EXPECT_EQ(r.score, 0.0);
}

TEST(RecommendByRarity, EqualTotalsRankFirstAndExhaustiveCase) {
    Collection c(std::nullopt, {tok("0", {Trait("A", "x")}), tok("1", {Trait("A", "y")}),
                                tok("2", {Trait("A", "y")}), tok("3", {Trait("A", "z")})});
    auto idx = RecommenderIndex::build(c);
    // Totals: 4, 2, 2, 4.
    auto top = recommend_by_rarity(c.tokens()[0].ref, 10, idx);
    ASSERT_EQ(top.size(), 3u);
    EXPECT_EQ(top[0].ref.token_id(), "3");
    EXPECT_EQ(top[0].score, 0.0);
    EXPECT_EQ(top[1].ref.token_id(), "1");
    EXPECT_EQ(top[1].score, 2.0);
    EXPECT_EQ(top[2].ref.token_id(), "2");
    EXPECT_EQ(top[0].model, Model::Rarity);
    EXPECT_TRUE(recommend_by_rarity(c.tokens()[0].ref, 0, idx).empty());
}

TEST(Recommend, MatchesExhaustiveOracleOn50TokenCollections) {
    std::mt19937_64 rng(50);
    for (int trial = 0; trial < 20; ++trial) {
        auto c = nt::make_collection({.tokens = 50, .trait_types = 6, .values_per_type = 3, .duplicate_pair = 0.1}, rng);
        auto idx = RecommenderIndex::build(c);
        for (std::size_t r = 0; r < c.tokens().size(); r += 7) {
            const auto& ref = c.tokens()[r].ref;
            expect_matches(recommend_by_traits(ref, 10, idx), nt::oracle_by_traits(c, r, 10), c);
            expect_matches(recommend_by_rarity(ref, 10, idx), nt::oracle_by_rarity(c, r, 10), c);
        }
    }
}

TEST(Recommend, OptimalityAndAntiMembership) {
    std::mt19937_64 rng(51);
    for (int trial = 0; trial < 20; ++trial) {
        auto c = nt::random_instance(rng);
        auto idx = RecommenderIndex::build(c);
        std::size_t r = rng() % c.tokens().size();
        const auto& ref = c.tokens()[r].ref;
        std::size_t k = rng() % 15;
        auto traits = recommend_by_traits(ref, k, idx);
        auto rarity = recommend_by_rarity(ref, k, idx);
        EXPECT_EQ(traits.size(), std::min(k, c.tokens().size() - 1));

        auto sims = similarity_row(r, idx.matrix());
        std::set<std::size_t> in_traits, in_rarity;
        for (const auto& x : traits) in_traits.insert(idx.row_of(x.ref));
        for (const auto& x : rarity) in_rarity.insert(idx.row_of(x.ref));
        EXPECT_FALSE(in_traits.contains(r));
        EXPECT_FALSE(in_rarity.contains(r));
        for (std::size_t i = 1; i < traits.size(); ++i) EXPECT_GE(traits[i - 1].score, traits[i].score);
        for (std::size_t i = 1; i < rarity.size(); ++i) EXPECT_LE(rarity[i - 1].score, rarity[i].score);
        for (std::size_t j = 0; j < idx.size(); ++j) {
            if (j == r) continue;
            double diff = std::fabs(idx.total_rarity(j) - idx.total_rarity(r));
            if (!in_traits.contains(j) && !traits.empty()) EXPECT_GE(traits.back().score, sims[j]);
            if (!in_rarity.contains(j) && !rarity.empty()) EXPECT_LE(rarity.back().score, diff);
        }
    }
}

TEST(Recommend, DispatchAndPermutationInvariance) {
    std::mt19937_64 rng(52);
    auto c = nt::make_collection({.tokens = 30}, rng);
    auto idx = RecommenderIndex::build(c);
    const auto& ref = c.tokens()[4].ref;
    auto both = recommend(ref, ModelChoice::Both, 10, idx);
    ASSERT_TRUE(both.traits && both.rarity);
    EXPECT_EQ(both.traits->size(), 10u);
    EXPECT_EQ(both.rarity->size(), 10u);
    auto only = recommend(ref, ModelChoice::Traits, 10, idx);
    EXPECT_EQ(*only.traits, recommend_by_traits(ref, 10, idx));
    EXPECT_FALSE(only.rarity.has_value());

    auto json = recommendation_json(both);
    for (int i = 0; i < 5; ++i) {
        auto perm = RecommenderIndex::build(nt::shuffled(c, rng));
        EXPECT_EQ(recommendation_json(recommend(ref, ModelChoice::Both, 10, perm)), json);
    }
    EXPECT_THROW(recommend(TokenRef(kContractA, "123456"), ModelChoice::Both, 10, idx), NotFoundError);
}

TEST(Recommend, JsonShape) {
    Collection c(std::nullopt, {tok("0", {Trait("A", "x")}), tok("1", {Trait("A", "x")}), tok("2", {Trait("A", "y")})});
    auto idx = RecommenderIndex::build(c);
    auto ref = c.tokens()[0].ref;
    auto single = nlohmann::json::parse(recommendation_json(recommend(ref, ModelChoice::Traits, 2, idx)));
    EXPECT_EQ(single["reference"], kContractA + "-0");
    EXPECT_EQ(single["model"], "traits");
    EXPECT_EQ(single["k"], 2);
    ASSERT_EQ(single["results"].size(), 2u);
    EXPECT_EQ(single["results"][0], (nlohmann::json{{"rank", 1}, {"id", kContractA + "-1"}, {"score", 1.0}}));

    auto both = nlohmann::json::parse(recommendation_json(recommend(ref, ModelChoice::Both, 1, idx)));
    EXPECT_EQ(both["model"], "both");
    EXPECT_EQ(both["results"]["traits"].size(), 1u);
    EXPECT_EQ(both["results"]["rarity"].size(), 1u);

    auto table = recommendation_table(recommend(ref, ModelChoice::Both, 2, idx));
    EXPECT_NE(table.find("RANK"), std::string::npos);
    EXPECT_NE(table.find(kContractA + "-1"), std::string::npos);
}

TEST(ModelChoice, Parsing) {
    EXPECT_EQ(parse_model_choice("both"), ModelChoice::Both);
    EXPECT_EQ(to_string(parse_model_choice("rarity")), "rarity");
    EXPECT_THROW(parse_model_choice("fused"), ParseError);
}
