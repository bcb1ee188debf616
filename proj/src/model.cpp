#include "nftrec/model.hpp"

#include "nftrec/error.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <unordered_set>

namespace nftrec {

namespace {

constexpr std::size_t kAddressLength = 42;

bool is_space(char c) {
    return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v';
}

bool is_hex(char c) {
    return (c >= '0' && c <= '9') || (c >= 'a' && c <= 'f') || (c >= 'A' && c <= 'F');
}

} // namespace

std::string trim(std::string_view s) {
    auto first = std::find_if_not(s.begin(), s.end(), is_space);
    auto last = std::find_if_not(s.rbegin(), std::make_reverse_iterator(first), is_space).base();
    return std::string(first, last);
}

std::string to_lower(std::string_view s) {
    std::string out(s);
    std::transform(out.begin(), out.end(), out.begin(), [](unsigned char c) {
        return (c >= 'A' && c <= 'Z') ? static_cast<char>(c - 'A' + 'a') : static_cast<char>(c);
    });
    return out;
}

std::string canonical_contract(std::string_view address) {
    bool ok = address.size() == kAddressLength && address[0] == '0' &&
              (address[1] == 'x' || address[1] == 'X') &&
              std::all_of(address.begin() + 2, address.end(), is_hex);
    if (!ok) {
        throw ParseError("malformed contract address '" + std::string(address) +
                         "': expected 0x followed by 40 hex digits");
    }
    return to_lower(address);
}

std::string canonical_token_id(std::string_view id) {
    if (id.empty() || !std::all_of(id.begin(), id.end(), [](char c) { return c >= '0' && c <= '9'; })) {
        throw ParseError("malformed token id '" + std::string(id) + "': expected decimal digits");
    }
    auto nz = id.find_first_not_of('0');
    return nz == std::string_view::npos ? std::string("0") : std::string(id.substr(nz));
}

TokenRef::TokenRef(std::string_view contract, std::string_view token_id)
    : contract_(canonical_contract(contract)), token_id_(canonical_token_id(token_id)) {}

std::string TokenRef::display() const { return contract_ + "-" + token_id_; }

TokenRef parse_token_ref(std::string_view s) {
    auto hyphen = s.find('-');
    if (hyphen == std::string_view::npos) {
        throw ParseError("malformed token reference '" + std::string(s) +
                         "': expected <contract>-<token_id>");
    }
    return TokenRef(s.substr(0, hyphen), s.substr(hyphen + 1));
}

bool tiebreak_less(const TokenRef& a, const TokenRef& b) noexcept {
    const auto& ia = a.token_id();
    const auto& ib = b.token_id();
    // Canonical ids carry no leading zeros, so length orders them numerically.
    if (ia.size() != ib.size()) return ia.size() < ib.size();
    if (int c = ia.compare(ib); c != 0) return c < 0;
    return a.contract() < b.contract();
}

std::string canonical_number(double value) {
    if (std::isfinite(value) && value == std::trunc(value) && std::fabs(value) < 9.0e15) {
        return std::to_string(static_cast<long long>(value));
    }
    std::array<char, 64> buf{};
    auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value);
    return std::string(buf.data(), end);
}

Trait::Trait(std::string type, std::string val) : trait_type(std::move(type)), value(std::move(val)) {
    if (trim(trait_type).empty()) {
        throw ParseError("trait_type must not be blank");
    }
}

Trait::Trait(std::string type, double numeric_value) : Trait(std::move(type), canonical_number(numeric_value)) {}

Collection::Collection(std::optional<std::string> name, std::vector<Token> tokens)
    : name_(std::move(name)), tokens_(std::move(tokens)) {
    std::unordered_set<std::string> seen;
    seen.reserve(tokens_.size());
    for (const auto& t : tokens_) {
        auto id = t.ref.display();
        if (!seen.insert(id).second) {
            throw ParseError("duplicate token reference " + id);
        }
    }
    if (!tokens_.empty()) contract_ = tokens_.front().ref.contract();
}

std::string_view to_string(DocumentScope scope) noexcept {
    return scope == DocumentScope::CollectionLocal ? "local" : "cross";
}

DocumentScope parse_scope(std::string_view s) {
    if (s == "local") return DocumentScope::CollectionLocal;
    if (s == "cross") return DocumentScope::CrossCollection;
    throw ParseError("unknown document scope '" + std::string(s) + "' (expected local or cross)");
}

std::string normalize_trait(const Trait& t) {
    return to_lower(trim(t.trait_type)) + "::" + to_lower(trim(t.value));
}

std::vector<std::string> trait_document(const Token& token, DocumentScope scope) {
    std::vector<std::string> doc;
    doc.reserve(token.traits.size());
    for (const auto& t : token.traits) {
        if (scope == DocumentScope::CrossCollection) {
            doc.push_back(token.ref.contract() + "::" + normalize_trait(t));
        } else {
            doc.push_back(normalize_trait(t));
        }
    }
    return doc;
}

} // namespace nftrec
