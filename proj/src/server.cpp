#include "nftrec/server.hpp"

#include "nftrec/error.hpp"
#include "nftrec/evaluate.hpp"
#include "nftrec/recommend.hpp"

#include <httplib.h>
#include <json.hpp>

#include <charconv>

namespace nftrec {

using nlohmann::json;

namespace {

constexpr std::size_t kMaxK = 100;
constexpr long long kMaxLimit = 200;

std::vector<std::string> split_path(const std::string& path) {
    std::vector<std::string> parts;
    std::size_t start = 0;
    while (start <= path.size()) {
        auto end = path.find('/', start);
        if (end == std::string::npos) end = path.size();
        if (end > start) parts.push_back(path.substr(start, end - start));
        start = end + 1;
    }
    return parts;
}

std::optional<long long> parse_integer(const std::string& s) {
    long long v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (s.empty() || ec != std::errc{} || ptr != s.data() + s.size()) return std::nullopt;
    return v;
}

// Missing parameter -> fallback; malformed or out of range -> nullopt.
std::optional<long long> int_param(const QueryParams& q, const std::string& name, long long fallback, long long lo,
                                   long long hi) {
    auto it = q.find(name);
    if (it == q.end()) return fallback;
    auto v = parse_integer(it->second);
    if (!v || *v < lo || *v > hi) return std::nullopt;
    return v;
}

std::optional<TokenRef> path_ref(const std::string& contract, const std::string& token_id) {
    try {
        return TokenRef(contract, token_id);
    } catch (const ParseError&) {
        return std::nullopt;
    }
}

} // namespace

ApiResponse RecommendationApi::error(int status, std::string_view code, std::string_view message) {
    json body = {{"error", {{"code", std::string(code)}, {"message", std::string(message)}}}};
    return {status, body.dump()};
}

ApiResponse RecommendationApi::handle(const std::string& method, const std::string& path,
                                      const QueryParams& query) const {
    auto parts = split_path(path);
    bool known = (parts.size() == 1 && (parts[0] == "health" || parts[0] == "tokens")) ||
                 (parts.size() == 3 && (parts[0] == "recommendations" || parts[0] == "evaluation"));
    if (!known) return error(404, "not_found", "no route for " + path);
    if (method != "GET" && method != "HEAD") {
        return error(405, "method_not_allowed", method + " is not allowed on " + path);
    }

    if (parts[0] == "health") return health();
    if (parts[0] == "tokens") return tokens(query);
    if (parts[0] == "recommendations") return recommendations(parts[1], parts[2], query);
    return evaluation(parts[1], parts[2], query);
}

ApiResponse RecommendationApi::health() const {
    json body = {{"status", "ok"}, {"tokens", index_.size()}};
    return {200, body.dump()};
}

ApiResponse RecommendationApi::tokens(const QueryParams& query) const {
    auto offset = int_param(query, "offset", 0, 0, std::numeric_limits<long long>::max());
    if (!offset) return error(400, "invalid_parameter", "offset must be a non-negative integer");
    auto limit = int_param(query, "limit", 50, 1, kMaxLimit);
    if (!limit) return error(400, "invalid_parameter", "limit must be an integer in [1, 200]");

    json items = json::array();
    const auto n = static_cast<long long>(index_.size());
    for (long long i = *offset; i < n && i < *offset + *limit; ++i) {
        const auto row = static_cast<std::size_t>(i);
        const auto& t = index_.token(row);
        items.push_back({{"id", t.ref.display()},
                         {"name", t.name ? json(*t.name) : json(nullptr)},
                         {"image_url", t.image_url ? json(*t.image_url) : json(nullptr)},
                         {"total_rarity", index_.total_rarity(row)}});
    }
    json body = {{"offset", *offset}, {"limit", *limit}, {"total", index_.size()}, {"tokens", std::move(items)}};
    return {200, body.dump()};
}

ApiResponse RecommendationApi::recommendations(const std::string& contract, const std::string& token_id,
                                               const QueryParams& query) const {
    ModelChoice model = ModelChoice::Both;
    if (auto it = query.find("model"); it != query.end()) {
        try {
            model = parse_model_choice(it->second);
        } catch (const ParseError& e) {
            return error(400, "invalid_parameter", e.what());
        }
    }
    auto k = int_param(query, "k", kDefaultTopK, 0, kMaxK);
    if (!k) return error(400, "invalid_parameter", "k must be an integer in [0, 100]");

    auto ref = path_ref(contract, token_id);
    if (!ref || !index_.contains(*ref)) {
        return error(404, "token_not_found", "token " + contract + "-" + token_id + " is not in the index");
    }
    return {200, recommendation_json(recommend(*ref, model, static_cast<std::size_t>(*k), index_))};
}

ApiResponse RecommendationApi::evaluation(const std::string& contract, const std::string& token_id,
                                          const QueryParams& query) const {
    auto k = int_param(query, "k", kDefaultTopK, 0, kMaxK);
    if (!k) return error(400, "invalid_parameter", "k must be an integer in [0, 100]");
    auto ref = path_ref(contract, token_id);
    if (!ref || !index_.contains(*ref)) {
        return error(404, "token_not_found", "token " + contract + "-" + token_id + " is not in the index");
    }
    return {200, frame_to_json(cross_evaluate(*ref, static_cast<std::size_t>(*k), index_))};
}

struct ApiServer::Impl {
    RecommendationApi api;
    httplib::Server server;

    explicit Impl(const RecommenderIndex& index) : api(index) {}

    void dispatch(const httplib::Request& req, httplib::Response& res) const {
        QueryParams query;
        for (const auto& [key, value] : req.params) query.emplace(key, value);
        auto out = api.handle(req.method, req.path, query);
        res.status = out.status;
        res.set_content(out.body, out.content_type);
    }
};

ApiServer::ApiServer(const RecommenderIndex& index, std::optional<std::filesystem::path> static_dir)
    : impl_(std::make_unique<Impl>(index)) {
    auto& srv = impl_->server;
    srv.set_default_headers({{"Access-Control-Allow-Origin", "*"},
                             {"Access-Control-Allow-Methods", "GET, OPTIONS"},
                             {"Access-Control-Allow-Headers", "Content-Type"}});
    if (static_dir) srv.set_mount_point("/", static_dir->string());

    auto handler = [impl = impl_.get()](const httplib::Request& req, httplib::Response& res) {
        impl->dispatch(req, res);
    };
    srv.Get(".*", handler);
    srv.Post(".*", handler);
    srv.Put(".*", handler);
    srv.Patch(".*", handler);
    srv.Delete(".*", handler);
    srv.Options(".*", [](const httplib::Request&, httplib::Response& res) { res.status = 204; });
}

ApiServer::~ApiServer() = default;

int ApiServer::bind(const std::string& host, int port) {
    if (port == 0) return impl_->server.bind_to_any_port(host);
    return impl_->server.bind_to_port(host, port) ? port : -1;
}

bool ApiServer::listen() { return impl_->server.listen_after_bind(); }

void ApiServer::stop() { impl_->server.stop(); }

} // namespace nftrec
