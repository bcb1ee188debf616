#pragma once

#include "nftrec/index.hpp"

#include <filesystem>
#include <map>
#include <memory>
#include <optional>
#include <string>

namespace nftrec {

struct ApiResponse {
    int status = 200;
    std::string body;
    std::string content_type = "application/json";
};

using QueryParams = std::map<std::string, std::string>;

/// Read-only HTTP API over one loaded index. Routing and validation only;
/// every body is produced by the recommend/evaluate serialisers.
///
///   GET /health
///   GET /tokens?offset=&limit=
///   GET /recommendations/{contract}/{token_id}?model=&k=
///   GET /evaluation/{contract}/{token_id}?k=
///
/// Non-2xx bodies are {"error":{"code":..., "message":...}}.
class RecommendationApi {
public:
    explicit RecommendationApi(const RecommenderIndex& index) : index_(index) {}

    ApiResponse handle(const std::string& method, const std::string& path, const QueryParams& query) const;

    static ApiResponse error(int status, std::string_view code, std::string_view message);

private:
    ApiResponse health() const;
    ApiResponse tokens(const QueryParams& query) const;
    ApiResponse recommendations(const std::string& contract, const std::string& token_id,
                                const QueryParams& query) const;
    ApiResponse evaluation(const std::string& contract, const std::string& token_id, const QueryParams& query) const;

    const RecommenderIndex& index_;
};

/// cpp-httplib front end for RecommendationApi. CORS is open to every
/// origin. With a static directory, files under it are served at "/" ahead
/// of the API routes.
class ApiServer {
public:
    explicit ApiServer(const RecommenderIndex& index, std::optional<std::filesystem::path> static_dir = {});
    ~ApiServer();
    ApiServer(const ApiServer&) = delete;
    ApiServer& operator=(const ApiServer&) = delete;

    /// Port 0 picks a free port. Returns the bound port, or -1 on failure.
    int bind(const std::string& host, int port);

    /// Blocks serving requests until stop().
    bool listen();
    void stop();

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

} // namespace nftrec
