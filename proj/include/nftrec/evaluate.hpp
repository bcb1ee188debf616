#pragma once

#include "nftrec/index.hpp"
#include "nftrec/recommend.hpp"

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace nftrec {

enum class RowSource { Reference, TraitsModel, RarityModel, Both };

std::string_view to_string(RowSource s) noexcept;
RowSource parse_row_source(std::string_view s);

struct FrameRow {
    TokenRef id;
    RowSource source = RowSource::Reference;
    double cosine_to_reference = 0.0;
    double total_rarity = 0.0;
    std::optional<std::size_t> rank_traits;
    std::optional<std::size_t> rank_rarity;

    friend bool operator==(const FrameRow&, const FrameRow&) = default;
};

/// Both models' outputs for one reference token, each row carrying both
/// metrics. Row order: the reference, traits-model results by rank, then
/// rarity-only results by rank. An item chosen by both models appears once
/// with source Both.
struct EvaluationFrame {
    TokenRef reference;
    std::size_t k = 0;
    std::vector<FrameRow> rows;

    friend bool operator==(const EvaluationFrame&, const EvaluationFrame&) = default;
};

EvaluationFrame cross_evaluate(const TokenRef& ref, std::size_t k, const RecommenderIndex& index);

struct MetricStats {
    double mean = 0.0;
    double min = 0.0;
    double max = 0.0;
    double stddev = 0.0;  // population
};

struct SourceStats {
    std::size_t count = 0;
    MetricStats cosine_to_reference;
    MetricStats total_rarity;
};

/// Per-source dispersion of both metrics. Sources without rows are absent.
std::map<RowSource, SourceStats> summary_stats(const EvaluationFrame& frame);

enum class FrameFormat { Csv, Json };

FrameFormat parse_frame_format(std::string_view s);

/// Header "reference_id,item_id,source,cosine_to_reference,total_rarity,
/// rank_traits,rank_rarity"; absent ranks are empty; reals use "%.12g".
std::string frame_to_csv(const EvaluationFrame& frame);

/// {"reference": R, "k": n, "rows": [{"id", "source", "cosine_to_reference",
/// "total_rarity", "rank_traits", "rank_rarity"}]}, absent ranks as null.
std::string frame_to_json(const EvaluationFrame& frame);
EvaluationFrame frame_from_json(std::string_view json_text);

void export_frame(const EvaluationFrame& frame, FrameFormat format, const std::filesystem::path& path);

} // namespace nftrec
