#pragma once

#include "nftrec/model.hpp"

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace nftrec {

/// Supported input shapes.
///
///   opensea-assets:  {"assets":[{"token_id", "name", "image_url",
///                     "asset_contract":{"address"}, "traits":[...]}]}
///   erc721-metadata: [{"token_id", "contract", "name", "image",
///                     "attributes":[...]}]
///
/// Trait entries are {"trait_type": string, "value": string-or-number}.
enum class InputFormat { OpenSeaAssets, Erc721Metadata };

std::string_view to_string(InputFormat f) noexcept;
InputFormat parse_input_format(std::string_view s);

/// Parses the tokens of one document. `source` prefixes error messages.
/// `first_record` offsets the record index reported in errors, which lets
/// paged sources report positions in the whole stream.
std::vector<Token> parse_tokens(std::string_view bytes, InputFormat format, std::string_view source,
                                std::size_t first_record = 0);

Collection parse_collection(std::string_view bytes, InputFormat format, std::string_view source);

/// Reads and parses a file. Token order follows the file.
Collection load_collection(const std::filesystem::path& path, InputFormat format);

/// Canonical on-disk form: erc721-metadata JSON, two-space indented.
std::string collection_to_json(const Collection& c);

inline constexpr std::string_view kCollectionFile = "collection.json";

/// Writes <dir>/collection.json, creating `dir` if needed.
void save_collection(const Collection& c, const std::filesystem::path& dir);

/// Reads <dir>/collection.json.
Collection load_collection_dir(const std::filesystem::path& dir);

std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, std::string_view bytes);

} // namespace nftrec
