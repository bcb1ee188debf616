#include "nftrec/error.hpp"
#include "nftrec/evaluate.hpp"
#include "nftrec/index.hpp"
#include "nftrec/ingest.hpp"
#include "nftrec/rarity.hpp"
#include "nftrec/recommend.hpp"
#include "nftrec/server.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

namespace py = pybind11;
using namespace nftrec;

namespace {

// Python-facing results are the same JSON documents the CLI and HTTP API
// emit; the package's __init__ decodes them.
std::string recommend_json(const RecommenderIndex& index, const std::string& ref, const std::string& model,
                           std::size_t k) {
    return recommendation_json(recommend(parse_token_ref(ref), parse_model_choice(model), k, index));
}

std::string evaluate_json(const RecommenderIndex& index, const std::string& ref, std::size_t k) {
    return frame_to_json(cross_evaluate(parse_token_ref(ref), k, index));
}

py::tuple api_get(const RecommenderIndex& index, const std::string& path, const QueryParams& query) {
    auto r = RecommendationApi(index).handle("GET", path, query);
    return py::make_tuple(r.status, r.body);
}

} // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Trait-similarity and rarity-proximity recommendations for NFT collections";

    auto base = py::register_exception<Error>(m, "Error");
    py::register_exception<ParseError>(m, "ParseError", base.ptr());
    py::register_exception<NotFoundError>(m, "NotFoundError", base.ptr());
    py::register_exception<DomainError>(m, "DomainError", base.ptr());
    py::register_exception<IoError>(m, "IoError", base.ptr());

    m.def("canonical_ref", [](const std::string& s) { return parse_token_ref(s).display(); }, py::arg("ref"));
    m.def("normalize_trait", [](const std::string& type, const std::string& value) {
        return normalize_trait(Trait(type, value));
    }, py::arg("trait_type"), py::arg("value"));
    m.def("trait_rarity", &trait_rarity, py::arg("trait_count"), py::arg("total_supply"));

    py::class_<RecommenderIndex>(m, "Index")
        .def_static("from_file",
                    [](const std::filesystem::path& path, const std::string& format, const std::string& scope) {
                        return RecommenderIndex::build(load_collection(path, parse_input_format(format)),
                                                       parse_scope(scope));
                    },
                    py::arg("path"), py::arg("format") = "erc721-metadata", py::arg("scope") = "local")
        .def_static("load", &RecommenderIndex::load, py::arg("dir"))
        .def("save", &RecommenderIndex::save, py::arg("dir"))
        .def("__len__", &RecommenderIndex::size)
        .def_property_readonly("scope", [](const RecommenderIndex& i) { return std::string(to_string(i.scope())); })
        .def_property_readonly("vocabulary", [](const RecommenderIndex& i) { return i.vocabulary().terms(); })
        .def("ids", [](const RecommenderIndex& i) {
            std::vector<std::string> out;
            for (const auto& t : i.collection().tokens()) out.push_back(t.ref.display());
            return out;
        })
        .def("total_rarity", [](const RecommenderIndex& i, const std::string& ref) {
            return i.total_rarity(i.row_of(parse_token_ref(ref)));
        }, py::arg("ref"))
        .def("_recommend_json", &recommend_json, py::arg("ref"), py::arg("model") = "both",
             py::arg("k") = kDefaultTopK)
        .def("_evaluate_json", &evaluate_json, py::arg("ref"), py::arg("k") = kDefaultTopK)
        .def("_api_get", &api_get, py::arg("path"), py::arg("query") = QueryParams{});
}
