#include "nftrec/evaluate.hpp"

#include "nftrec/csv.hpp"
#include "nftrec/error.hpp"

#include <json.hpp>

#include <algorithm>
#include <cerrno>
#include <cmath>
#include <cstring>
#include <fstream>

namespace nftrec {

using nlohmann::json;

std::string_view to_string(RowSource s) noexcept {
    switch (s) {
    case RowSource::Reference: return "reference";
    case RowSource::TraitsModel: return "traits-model";
    case RowSource::RarityModel: return "rarity-model";
    case RowSource::Both: return "both";
    }
    return "reference";
}

RowSource parse_row_source(std::string_view s) {
    for (auto src : {RowSource::Reference, RowSource::TraitsModel, RowSource::RarityModel, RowSource::Both}) {
        if (to_string(src) == s) return src;
    }
    throw ParseError("unknown row source '" + std::string(s) + "'");
}

FrameFormat parse_frame_format(std::string_view s) {
    if (s == "csv") return FrameFormat::Csv;
    if (s == "json") return FrameFormat::Json;
    throw ParseError("unknown frame format '" + std::string(s) + "' (expected csv or json)");
}

EvaluationFrame cross_evaluate(const TokenRef& ref, std::size_t k, const RecommenderIndex& index) {
    const auto ref_row = index.row_of(ref);
    const auto& m = index.matrix();
    auto metric_row = [&](std::size_t row, RowSource source) {
        FrameRow r;
        r.id = index.token(row).ref;
        r.source = source;
        r.cosine_to_reference = cosine(m.row(ref_row), m.row(row), m.norm(ref_row), m.norm(row));
        r.total_rarity = index.total_rarity(row);
        return r;
    };

    EvaluationFrame frame{ref, k, {}};
    frame.rows.push_back(metric_row(ref_row, RowSource::Reference));
    frame.rows.front().id = ref;

    for (const auto& rec : recommend_by_traits(ref, k, index)) {
        auto row = metric_row(index.row_of(rec.ref), RowSource::TraitsModel);
        row.rank_traits = rec.rank;
        frame.rows.push_back(std::move(row));
    }
    for (const auto& rec : recommend_by_rarity(ref, k, index)) {
        auto existing = std::find_if(frame.rows.begin(), frame.rows.end(),
                                     [&](const FrameRow& r) { return r.id == rec.ref; });
        if (existing != frame.rows.end()) {
            existing->source = RowSource::Both;
            existing->rank_rarity = rec.rank;
            continue;
        }
        auto row = metric_row(index.row_of(rec.ref), RowSource::RarityModel);
        row.rank_rarity = rec.rank;
        frame.rows.push_back(std::move(row));
    }
    return frame;
}

namespace {

MetricStats stats_of(const std::vector<double>& xs) {
    MetricStats s;
    if (xs.empty()) return s;
    double sum = 0.0;
    for (double x : xs) sum += x;
    s.mean = sum / static_cast<double>(xs.size());
    double sq = 0.0;
    for (double x : xs) sq += (x - s.mean) * (x - s.mean);
    s.stddev = std::sqrt(sq / static_cast<double>(xs.size()));
    auto [lo, hi] = std::minmax_element(xs.begin(), xs.end());
    s.min = *lo;
    s.max = *hi;
    return s;
}

json rank_json(const std::optional<std::size_t>& r) { return r ? json(*r) : json(nullptr); }

std::optional<std::size_t> rank_from_json(const json& j) {
    if (j.is_null()) return std::nullopt;
    return j.get<std::size_t>();
}

} // namespace

std::map<RowSource, SourceStats> summary_stats(const EvaluationFrame& frame) {
    std::map<RowSource, std::pair<std::vector<double>, std::vector<double>>> grouped;
    for (const auto& r : frame.rows) {
        auto& [cos, rar] = grouped[r.source];
        cos.push_back(r.cosine_to_reference);
        rar.push_back(r.total_rarity);
    }
    std::map<RowSource, SourceStats> out;
    for (const auto& [source, metrics] : grouped) {
        out[source] = SourceStats{metrics.first.size(), stats_of(metrics.first), stats_of(metrics.second)};
    }
    return out;
}

std::string frame_to_csv(const EvaluationFrame& frame) {
    std::string out = "reference_id,item_id,source,cosine_to_reference,total_rarity,rank_traits,rank_rarity\n";
    const auto ref = csv_field(frame.reference.display());
    for (const auto& r : frame.rows) {
        out += ref + "," + csv_field(r.id.display()) + "," + std::string(to_string(r.source)) + "," +
               format_real(r.cosine_to_reference) + "," + format_real(r.total_rarity) + "," +
               (r.rank_traits ? std::to_string(*r.rank_traits) : "") + "," +
               (r.rank_rarity ? std::to_string(*r.rank_rarity) : "") + "\n";
    }
    return out;
}

std::string frame_to_json(const EvaluationFrame& frame) {
    json rows = json::array();
    for (const auto& r : frame.rows) {
        rows.push_back({{"id", r.id.display()},
                        {"source", std::string(to_string(r.source))},
                        {"cosine_to_reference", r.cosine_to_reference},
                        {"total_rarity", r.total_rarity},
                        {"rank_traits", rank_json(r.rank_traits)},
                        {"rank_rarity", rank_json(r.rank_rarity)}});
    }
    json doc = {{"reference", frame.reference.display()}, {"k", frame.k}, {"rows", std::move(rows)}};
    return doc.dump(2);
}

EvaluationFrame frame_from_json(std::string_view json_text) {
    try {
        auto doc = json::parse(json_text.begin(), json_text.end());
        EvaluationFrame frame;
        frame.reference = parse_token_ref(doc.at("reference").get<std::string>());
        frame.k = doc.at("k").get<std::size_t>();
        for (const auto& r : doc.at("rows")) {
            FrameRow row;
            row.id = parse_token_ref(r.at("id").get<std::string>());
            row.source = parse_row_source(r.at("source").get<std::string>());
            row.cosine_to_reference = r.at("cosine_to_reference").get<double>();
            row.total_rarity = r.at("total_rarity").get<double>();
            row.rank_traits = rank_from_json(r.at("rank_traits"));
            row.rank_rarity = rank_from_json(r.at("rank_rarity"));
            frame.rows.push_back(std::move(row));
        }
        return frame;
    } catch (const json::exception& e) {
        throw ParseError(std::string("evaluation frame JSON: ") + e.what());
    }
}

void export_frame(const EvaluationFrame& frame, FrameFormat format, const std::filesystem::path& path) {
    auto text = format == FrameFormat::Csv ? frame_to_csv(frame) : frame_to_json(frame) + "\n";
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError(path.string() + ": " + std::strerror(errno));
    out << text;
    out.flush();
    if (!out) throw IoError(path.string() + ": " + std::strerror(errno));
}

} // namespace nftrec
