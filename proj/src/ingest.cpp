#include "nftrec/ingest.hpp"

#include "nftrec/error.hpp"

#include <json.hpp>

#include <cerrno>
#include <cstring>
#include <fstream>
#include <sstream>

namespace nftrec {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

class RecordContext {
public:
    RecordContext(std::string_view source, std::size_t index) : source_(source), index_(index) {}

    [[noreturn]] void fail(const std::string& what) const {
        throw ParseError(std::string(source_) + ": record " + std::to_string(index_) + ": " + what);
    }

    const json& require(const json& obj, const char* field, const char* path = nullptr) const {
        auto it = obj.find(field);
        if (it == obj.end()) fail(std::string("missing required field '") + (path ? path : field) + "'");
        return *it;
    }

    std::string require_string(const json& obj, const char* field, const char* path = nullptr) const {
        const auto& v = require(obj, field, path);
        if (!v.is_string()) fail(std::string("field '") + (path ? path : field) + "' must be a string");
        return v.get<std::string>();
    }

    std::optional<std::string> optional_string(const json& obj, const char* field) const {
        auto it = obj.find(field);
        if (it == obj.end() || it->is_null()) return std::nullopt;
        if (!it->is_string()) fail(std::string("field '") + field + "' must be a string or null");
        return it->get<std::string>();
    }

private:
    std::string_view source_;
    std::size_t index_;
};

std::string scalar_text(const json& v) {
    if (v.is_number_unsigned()) return std::to_string(v.get<std::uint64_t>());
    if (v.is_number_integer()) return std::to_string(v.get<std::int64_t>());
    return canonical_number(v.get<double>());
}

std::vector<Trait> parse_traits(const json& list, const char* field, const RecordContext& ctx) {
    if (!list.is_array()) ctx.fail(std::string("field '") + field + "' must be an array");
    std::vector<Trait> traits;
    traits.reserve(list.size());
    for (std::size_t j = 0; j < list.size(); ++j) {
        const auto& entry = list[j];
        auto where = std::string(field) + "[" + std::to_string(j) + "]";
        if (!entry.is_object()) ctx.fail(where + " must be an object");
        auto type_it = entry.find("trait_type");
        if (type_it == entry.end()) ctx.fail("missing required field '" + where + ".trait_type'");
        if (!type_it->is_string()) ctx.fail(where + ".trait_type must be a string");
        auto value_it = entry.find("value");
        if (value_it == entry.end()) ctx.fail("missing required field '" + where + ".value'");

        std::string value;
        if (value_it->is_string()) {
            value = value_it->get<std::string>();
        } else if (value_it->is_number()) {
            value = scalar_text(*value_it);
        } else {
            ctx.fail(where + ".value must be a string or number");
        }
        try {
            traits.emplace_back(type_it->get<std::string>(), std::move(value));
        } catch (const ParseError& e) {
            ctx.fail(where + ": " + e.what());
        }
    }
    return traits;
}

TokenRef make_ref(const std::string& contract, const std::string& id, const RecordContext& ctx) {
    try {
        return TokenRef(contract, id);
    } catch (const ParseError& e) {
        ctx.fail(e.what());
    }
}

Token parse_opensea_asset(const json& a, const RecordContext& ctx) {
    if (!a.is_object()) ctx.fail("asset must be an object");
    const auto& id = ctx.require(a, "token_id");
    std::string token_id;
    if (id.is_string()) {
        token_id = id.get<std::string>();
    } else if (id.is_number_unsigned() || (id.is_number_integer() && id.get<std::int64_t>() >= 0)) {
        token_id = scalar_text(id);
    } else {
        ctx.fail("field 'token_id' must be a string or non-negative integer");
    }
    const auto& contract_obj = ctx.require(a, "asset_contract");
    if (!contract_obj.is_object()) ctx.fail("field 'asset_contract' must be an object");
    auto contract = ctx.require_string(contract_obj, "address", "asset_contract.address");

    Token tok;
    tok.ref = make_ref(contract, token_id, ctx);
    tok.name = ctx.optional_string(a, "name");
    tok.image_url = ctx.optional_string(a, "image_url");
    tok.traits = parse_traits(ctx.require(a, "traits"), "traits", ctx);
    return tok;
}

Token parse_erc721_record(const json& r, const RecordContext& ctx) {
    if (!r.is_object()) ctx.fail("record must be an object");
    Token tok;
    tok.ref = make_ref(ctx.require_string(r, "contract"), ctx.require_string(r, "token_id"), ctx);
    tok.name = ctx.optional_string(r, "name");
    tok.image_url = ctx.optional_string(r, "image");
    tok.traits = parse_traits(ctx.require(r, "attributes"), "attributes", ctx);
    return tok;
}

} // namespace

std::string_view to_string(InputFormat f) noexcept {
    return f == InputFormat::OpenSeaAssets ? "opensea-assets" : "erc721-metadata";
}

InputFormat parse_input_format(std::string_view s) {
    if (s == "opensea-assets") return InputFormat::OpenSeaAssets;
    if (s == "erc721-metadata") return InputFormat::Erc721Metadata;
    throw ParseError("unknown input format '" + std::string(s) + "' (expected opensea-assets or erc721-metadata)");
}

std::vector<Token> parse_tokens(std::string_view bytes, InputFormat format, std::string_view source,
                                std::size_t first_record) {
    json doc;
    try {
        doc = json::parse(bytes.begin(), bytes.end());
    } catch (const json::parse_error& e) {
        throw ParseError(std::string(source) + ": JSON parse error at byte " + std::to_string(e.byte) + ": " +
                         e.what());
    }

    const json* records = &doc;
    if (format == InputFormat::OpenSeaAssets) {
        if (!doc.is_object() || !doc.contains("assets")) {
            throw ParseError(std::string(source) + ": missing required field 'assets'");
        }
        records = &doc["assets"];
    }
    if (!records->is_array()) {
        throw ParseError(std::string(source) + ": expected an array of " +
                         (format == InputFormat::OpenSeaAssets ? "assets" : "token records"));
    }

    std::vector<Token> tokens;
    tokens.reserve(records->size());
    for (std::size_t i = 0; i < records->size(); ++i) {
        RecordContext ctx(source, first_record + i);
        tokens.push_back(format == InputFormat::OpenSeaAssets ? parse_opensea_asset((*records)[i], ctx)
                                                              : parse_erc721_record((*records)[i], ctx));
    }
    return tokens;
}

Collection parse_collection(std::string_view bytes, InputFormat format, std::string_view source) {
    auto tokens = parse_tokens(bytes, format, source);
    try {
        return Collection(std::nullopt, std::move(tokens));
    } catch (const ParseError& e) {
        throw ParseError(std::string(source) + ": " + e.what());
    }
}

Collection load_collection(const fs::path& path, InputFormat format) {
    return parse_collection(read_file(path), format, path.string());
}

std::string collection_to_json(const Collection& c) {
    json out = json::array();
    for (const auto& t : c.tokens()) {
        json attrs = json::array();
        for (const auto& tr : t.traits) attrs.push_back({{"trait_type", tr.trait_type}, {"value", tr.value}});
        out.push_back({{"token_id", t.ref.token_id()},
                       {"contract", t.ref.contract()},
                       {"name", t.name ? json(*t.name) : json(nullptr)},
                       {"image", t.image_url ? json(*t.image_url) : json(nullptr)},
                       {"attributes", std::move(attrs)}});
    }
    return out.dump(2) + "\n";
}

void save_collection(const Collection& c, const fs::path& dir) {
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw IoError(dir.string() + ": " + ec.message());
    write_file(dir / kCollectionFile, collection_to_json(c));
}

Collection load_collection_dir(const fs::path& dir) {
    return load_collection(dir / kCollectionFile, InputFormat::Erc721Metadata);
}

std::string read_file(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError(path.string() + ": " + std::strerror(errno));
    std::ostringstream ss;
    ss << in.rdbuf();
    return std::move(ss).str();
}

void write_file(const fs::path& path, std::string_view bytes) {
    auto tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw IoError(tmp.string() + ": " + std::strerror(errno));
        out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
        if (!out) throw IoError(tmp.string() + ": write failed");
    }
    std::error_code ec;
    fs::rename(tmp, path, ec);
    if (ec) throw IoError(path.string() + ": " + ec.message());
}

} // namespace nftrec
