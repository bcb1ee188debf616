#include "nftrec/index.hpp"

#include "nftrec/error.hpp"
#include "nftrec/ingest.hpp"

#include <json.hpp>

#include <algorithm>
#include <charconv>
#include <numeric>

namespace nftrec {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr int kFormatVersion = 1;

std::vector<TraitDocument> documents(const Collection& c, DocumentScope scope) {
    std::vector<TraitDocument> docs;
    docs.reserve(c.tokens().size());
    for (const auto& t : c.tokens()) docs.push_back(trait_document(t, scope));
    return docs;
}

std::vector<std::string_view> split_lines(std::string_view text) {
    std::vector<std::string_view> lines;
    std::size_t start = 0;
    while (start < text.size()) {
        auto end = text.find('\n', start);
        if (end == std::string_view::npos) end = text.size();
        lines.push_back(text.substr(start, end - start));
        start = end + 1;
    }
    return lines;
}

std::uint32_t parse_u32(std::string_view s, const std::string& where) {
    std::uint32_t v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size() || s.empty()) {
        throw ParseError(where + ": expected an unsigned integer, got '" + std::string(s) + "'");
    }
    return v;
}

CountVector parse_matrix_row(std::string_view cells, const std::string& where) {
    CountVector v;
    std::size_t start = 0;
    while (start < cells.size()) {
        auto end = cells.find(',', start);
        if (end == std::string_view::npos) end = cells.size();
        auto cell = cells.substr(start, end - start);
        auto colon = cell.find(':');
        if (colon == std::string_view::npos) throw ParseError(where + ": malformed cell '" + std::string(cell) + "'");
        v.push_back({parse_u32(cell.substr(0, colon), where), parse_u32(cell.substr(colon + 1), where)});
        start = end + 1;
    }
    return v;
}

} // namespace

std::string escape_vocabulary_term(std::string_view term) {
    std::string out;
    out.reserve(term.size());
    for (char c : term) {
        switch (c) {
        case '\\': out += "\\\\"; break;
        case '\n': out += "\\n"; break;
        case '\r': out += "\\r"; break;
        case '\t': out += "\\t"; break;
        default: out += c;
        }
    }
    return out;
}

std::string unescape_vocabulary_term(std::string_view line) {
    std::string out;
    out.reserve(line.size());
    for (std::size_t i = 0; i < line.size(); ++i) {
        if (line[i] != '\\') {
            out += line[i];
            continue;
        }
        if (++i == line.size()) throw ParseError("dangling escape in vocabulary line");
        switch (line[i]) {
        case '\\': out += '\\'; break;
        case 'n': out += '\n'; break;
        case 'r': out += '\r'; break;
        case 't': out += '\t'; break;
        default: throw ParseError(std::string("unknown escape \\") + line[i] + " in vocabulary line");
        }
    }
    return out;
}

RecommenderIndex::RecommenderIndex(Collection collection, DocumentScope scope, Vocabulary vocabulary,
                                   CountMatrix matrix)
    : collection_(std::move(collection)),
      scope_(scope),
      vocabulary_(std::move(vocabulary)),
      matrix_(std::move(matrix)) {
    auto docs = documents(collection_, scope_);
    frequencies_ = count_frequencies(docs);
    rarities_.reserve(docs.size());
    for (const auto& d : docs) rarities_.push_back(token_rarity(d, frequencies_));

    const auto& tokens = collection_.tokens();
    std::vector<std::size_t> order(tokens.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return tiebreak_less(tokens[a].ref, tokens[b].ref); });
    tiebreak_rank_.resize(tokens.size());
    for (std::size_t pos = 0; pos < order.size(); ++pos) tiebreak_rank_[order[pos]] = pos;

    rows_by_ref_.reserve(tokens.size());
    for (std::size_t i = 0; i < tokens.size(); ++i) rows_by_ref_.emplace(tokens[i].ref.display(), i);
}

RecommenderIndex RecommenderIndex::build(Collection collection, DocumentScope scope) {
    auto docs = documents(collection, scope);
    auto vocab = build_vocabulary(docs);
    auto matrix = build_count_matrix(docs, vocab);
    return RecommenderIndex(std::move(collection), scope, std::move(vocab), std::move(matrix));
}

void RecommenderIndex::save(const fs::path& dir) const {
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw IoError(dir.string() + ": " + ec.message());

    save_collection(collection_, dir);

    std::string vocab;
    for (const auto& term : vocabulary_.terms()) vocab += escape_vocabulary_term(term) + "\n";
    write_file(dir / "vocabulary.txt", vocab);

    std::string matrix;
    for (std::size_t i = 0; i < matrix_.rows(); ++i) {
        matrix += token(i).ref.display();
        matrix += '\t';
        const auto& row = matrix_.row(i);
        for (std::size_t j = 0; j < row.size(); ++j) {
            if (j) matrix += ',';
            matrix += std::to_string(row[j].column) + ":" + std::to_string(row[j].count);
        }
        matrix += '\n';
    }
    write_file(dir / "matrix.tsv", matrix);

    json manifest = {{"format_version", kFormatVersion},
                     {"scope", std::string(to_string(scope_))},
                     {"tokens", size()},
                     {"vocabulary_size", vocabulary_.size()}};
    write_file(dir / "manifest.json", manifest.dump(2) + "\n");
}

RecommenderIndex RecommenderIndex::load(const fs::path& dir) {
    auto manifest_path = (dir / "manifest.json").string();
    auto manifest = json::parse(read_file(dir / "manifest.json"), nullptr, false);
    if (!manifest.is_object() || manifest.value("format_version", 0) != kFormatVersion ||
        !manifest.contains("scope") || !manifest["scope"].is_string()) {
        throw ParseError(manifest_path + ": not an index manifest (format_version " +
                         std::to_string(kFormatVersion) + ")");
    }
    auto scope = parse_scope(manifest["scope"].get<std::string>());
    auto collection = load_collection_dir(dir);

    std::vector<std::string> terms;
    auto vocab_text = read_file(dir / "vocabulary.txt");
    for (auto line : split_lines(vocab_text)) terms.push_back(unescape_vocabulary_term(line));
    Vocabulary vocab(std::move(terms));

    auto matrix_path = (dir / "matrix.tsv").string();
    auto matrix_text = read_file(dir / "matrix.tsv");
    auto lines = split_lines(matrix_text);
    if (lines.size() != collection.tokens().size()) {
        throw ParseError(matrix_path + ": " + std::to_string(lines.size()) + " rows for " +
                         std::to_string(collection.tokens().size()) + " tokens");
    }
    std::vector<CountVector> rows;
    rows.reserve(lines.size());
    for (std::size_t i = 0; i < lines.size(); ++i) {
        auto where = matrix_path + ": row " + std::to_string(i);
        auto tab = lines[i].find('\t');
        if (tab == std::string_view::npos) throw ParseError(where + ": missing tab separator");
        auto ref = lines[i].substr(0, tab);
        if (ref != collection.tokens()[i].ref.display()) {
            throw ParseError(where + ": reference " + std::string(ref) + " does not match collection token " +
                             collection.tokens()[i].ref.display());
        }
        rows.push_back(parse_matrix_row(lines[i].substr(tab + 1), where));
    }
    CountMatrix matrix(std::move(rows), vocab.size());

    auto docs = documents(collection, scope);
    for (std::size_t i = 0; i < docs.size(); ++i) {
        bool consistent = false;
        try {
            consistent = vectorize(docs[i], vocab) == matrix.row(i);
        } catch (const ParseError&) {
        }
        if (!consistent) {
            throw ParseError(matrix_path + ": row " + std::to_string(i) + " is inconsistent with collection.json");
        }
    }
    return RecommenderIndex(std::move(collection), scope, std::move(vocab), std::move(matrix));
}

std::size_t RecommenderIndex::row_of(const TokenRef& ref) const {
    auto it = rows_by_ref_.find(ref.display());
    if (it == rows_by_ref_.end()) throw NotFoundError("token " + ref.display() + " is not in the index");
    return it->second;
}

bool RecommenderIndex::contains(const TokenRef& ref) const { return rows_by_ref_.contains(ref.display()); }

} // namespace nftrec
