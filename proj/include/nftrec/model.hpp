#pragma once

#include <compare>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace nftrec {

/// Globally unique token reference: contract address plus token id.
///
/// The contract is stored canonically as "0x" followed by 40 lowercase hex
/// digits, and the token id as a decimal string without leading zeros.
/// The display form is "<contract>-<token_id>".
class TokenRef {
public:
    TokenRef() = default;

    /// Validates and canonicalizes both parts. Throws ParseError.
    TokenRef(std::string_view contract, std::string_view token_id);

    const std::string& contract() const noexcept { return contract_; }
    const std::string& token_id() const noexcept { return token_id_; }

    std::string display() const;

    friend bool operator==(const TokenRef&, const TokenRef&) = default;
    friend auto operator<=>(const TokenRef&, const TokenRef&) = default;

private:
    std::string contract_;
    std::string token_id_;
};

/// Parses "<contract>-<token_id>". The address segment is everything before
/// the first hyphen and must be a well-formed address.
TokenRef parse_token_ref(std::string_view s);

/// Lowercases and validates an address. Throws ParseError naming the segment.
std::string canonical_contract(std::string_view address);

/// Strips leading zeros from a decimal id. Throws ParseError on non-digits.
std::string canonical_token_id(std::string_view id);

/// Order used for deterministic tie-breaking: ascending numeric token id,
/// then ascending contract.
bool tiebreak_less(const TokenRef& a, const TokenRef& b) noexcept;

/// Renders a JSON-style number as a canonical decimal string. Integral
/// values have no fractional part ("3", not "3.0"); others use the shortest
/// representation that round-trips.
std::string canonical_number(double value);

struct Trait {
    std::string trait_type;
    std::string value;

    /// Throws ParseError when trait_type is blank after trimming.
    Trait(std::string trait_type, std::string value);
    Trait(std::string trait_type, double numeric_value);

    friend bool operator==(const Trait&, const Trait&) = default;
};

struct Token {
    TokenRef ref;
    std::vector<Trait> traits;
    std::optional<std::string> name;
    std::optional<std::string> image_url;

    friend bool operator==(const Token&, const Token&) = default;
};

/// An immutable set of tokens with unique references.
class Collection {
public:
    Collection() = default;

    /// Throws ParseError naming the first duplicate reference.
    Collection(std::optional<std::string> name, std::vector<Token> tokens);

    /// Contract of the first token, or empty for an empty collection.
    const std::string& contract() const noexcept { return contract_; }
    const std::optional<std::string>& name() const noexcept { return name_; }
    const std::vector<Token>& tokens() const noexcept { return tokens_; }

    /// Number of loaded tokens.
    std::size_t total_supply() const noexcept { return tokens_.size(); }

    friend bool operator==(const Collection&, const Collection&) = default;

private:
    std::string contract_;
    std::optional<std::string> name_;
    std::vector<Token> tokens_;
};

enum class DocumentScope { CollectionLocal, CrossCollection };

std::string_view to_string(DocumentScope scope) noexcept;
DocumentScope parse_scope(std::string_view s);

/// lowercase(trim(type)) + "::" + lowercase(trim(value)).
std::string normalize_trait(const Trait& t);

/// One normalized trait string per trait, in input order. Cross-collection
/// scope prefixes each entry with "<contract>::".
std::vector<std::string> trait_document(const Token& token,
                                        DocumentScope scope = DocumentScope::CollectionLocal);

std::string trim(std::string_view s);
std::string to_lower(std::string_view s);

} // namespace nftrec
