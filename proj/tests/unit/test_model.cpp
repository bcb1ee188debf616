#include "nftrec/error.hpp"
#include "nftrec/model.hpp"

#include "support/synthetic.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace nftrec;
using nftrec::testing::kContractA;

TEST(TokenRef, ParsesCanonicalForm) {
    auto ref = parse_token_ref(kContractA + "-0");
    EXPECT_EQ(ref.contract(), kContractA);
    EXPECT_EQ(ref.token_id(), "0");
    EXPECT_EQ(ref.display(), kContractA + "-0");
}

TEST(TokenRef, LowercasesAddress) {
    auto ref = parse_token_ref("0X" + std::string(40, 'A') + "-7");
    EXPECT_EQ(ref.contract(), kContractA);
    EXPECT_EQ(ref.token_id(), "7");
}

TEST(TokenRef, RejectsShortAddressNamingSegment) {
    try {
        parse_token_ref("0x1234-5");
        FAIL() << "expected ParseError";
    } catch (const ParseError& e) {
        EXPECT_NE(std::string(e.what()).find("0x1234"), std::string::npos);
    }
}

TEST(TokenRef, RejectsMissingHyphenAndBadIds) {
    EXPECT_THROW(parse_token_ref(kContractA), ParseError);
    EXPECT_THROW(parse_token_ref(kContractA + "-"), ParseError);
    EXPECT_THROW(parse_token_ref(kContractA + "-12a"), ParseError);
    EXPECT_THROW(parse_token_ref(kContractA + "--1"), ParseError);
    EXPECT_THROW(parse_token_ref("0x" + std::string(39, 'a') + "g-1"), ParseError);
}

TEST(TokenRef, StripsLeadingZeros) {
    EXPECT_EQ(parse_token_ref(kContractA + "-007").token_id(), "7");
    EXPECT_EQ(parse_token_ref(kContractA + "-000").token_id(), "0");
}

TEST(TokenRef, RoundTripsThroughDisplay) {
    std::mt19937_64 rng(11);
    for (int i = 0; i < 200; ++i) {
        std::string addr = "0x";
        for (int j = 0; j < 40; ++j) addr += "0123456789abcdefABCDEF"[rng() % 22];
        TokenRef ref(addr, std::to_string(rng() % 100000));
        EXPECT_EQ(parse_token_ref(ref.display()), ref);
    }
}

TEST(TokenRef, TiebreakIsNumericThenContract) {
    TokenRef a9(kContractA, "9"), a10(kContractA, "10"), b9("0x" + std::string(40, 'b'), "9");
    EXPECT_TRUE(tiebreak_less(a9, a10));
    EXPECT_FALSE(tiebreak_less(a10, a9));
    EXPECT_TRUE(tiebreak_less(a9, b9));
    EXPECT_FALSE(tiebreak_less(a9, a9));
    TokenRef big(kContractA, "115792089237316195423570985008687907853269984665640564039457584007913129639935");
    EXPECT_TRUE(tiebreak_less(a10, big));
}

TEST(NormalizeTrait, LowercasesAndJoins) {
    EXPECT_EQ(normalize_trait(Trait("Fur", "Black")), "fur::black");
    EXPECT_EQ(normalize_trait(Trait(" Hat ", "  King's Crown")), "hat::king's crown");
    EXPECT_EQ(normalize_trait(Trait("Level", 3.0)), "level::3");
    EXPECT_EQ(normalize_trait(Trait("Mood", "")), "mood::");
}

TEST(NormalizeTrait, CanonicalNumbers) {
    EXPECT_EQ(canonical_number(3.0), "3");
    EXPECT_EQ(canonical_number(-2.0), "-2");
    EXPECT_EQ(canonical_number(0.5), "0.5");
    EXPECT_EQ(canonical_number(0.1), "0.1");
}

TEST(NormalizeTrait, IsIdempotent) {
    for (const auto& t : {Trait("Fur", "Black"), Trait(" HAT\t", " Crown "), Trait("x", "Ä b")}) {
        auto once = normalize_trait(t);
        auto sep = once.find("::");
        Trait again(once.substr(0, sep), once.substr(sep + 2));
        EXPECT_EQ(normalize_trait(again), once);
    }
}

TEST(Trait, RejectsBlankType) {
    EXPECT_THROW(Trait("  ", "x"), ParseError);
    EXPECT_THROW(Trait("", "x"), ParseError);
}

TEST(TraitDocument, Scopes) {
    Token t{TokenRef(kContractA, "1"), {Trait("Fur", "Black"), Trait("Hat", "Crown")}, std::nullopt, std::nullopt};
    EXPECT_EQ(trait_document(t), (std::vector<std::string>{"fur::black", "hat::crown"}));
    EXPECT_EQ(trait_document(t, DocumentScope::CrossCollection),
              (std::vector<std::string>{kContractA + "::fur::black", kContractA + "::hat::crown"}));
    Token empty{TokenRef(kContractA, "2"), {}, std::nullopt, std::nullopt};
    EXPECT_TRUE(trait_document(empty).empty());
    EXPECT_TRUE(trait_document(empty, DocumentScope::CrossCollection).empty());
}

TEST(TraitDocument, LengthMatchesTraitCountAndIsDeterministic) {
    std::mt19937_64 rng(5);
    auto c = nftrec::testing::make_collection({.tokens = 40, .duplicate_pair = 0.3}, rng);
    for (const auto& t : c.tokens()) {
        EXPECT_EQ(trait_document(t).size(), t.traits.size());
        EXPECT_EQ(trait_document(t, DocumentScope::CrossCollection).size(), t.traits.size());
        Token twin{TokenRef(kContractA, "999999"), t.traits, std::nullopt, std::nullopt};
        EXPECT_EQ(trait_document(twin), trait_document(t));
    }
}

TEST(Collection, RejectsDuplicateRefs) {
    std::vector<Token> toks{{TokenRef(kContractA, "5"), {}, {}, {}}, {TokenRef(kContractA, "05"), {}, {}, {}}};
    try {
        Collection c(std::nullopt, toks);
        FAIL() << "expected ParseError";
    } catch (const ParseError& e) {
        EXPECT_NE(std::string(e.what()).find(kContractA + "-5"), std::string::npos);
    }
}

TEST(Collection, TotalSupplyIsTokenCount) {
    std::vector<Token> toks{{TokenRef(kContractA, "1"), {}, {}, {}}, {TokenRef(kContractA, "2"), {}, {}, {}}};
    Collection c(std::nullopt, toks);
    EXPECT_EQ(c.total_supply(), 2u);
    EXPECT_EQ(c.contract(), kContractA);
    EXPECT_EQ(Collection().total_supply(), 0u);
}
